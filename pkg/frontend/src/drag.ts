/** Pointer-drag state machine and the single-in-flight move pipeline.
 *
 * Dragging redraws geometry optimistically but never touches scores; the
 * move request fires exactly once, on release, with the dropped coordinates.
 * At most one move request is in flight; releases that happen while one is
 * pending coalesce to the latest position. Escape cancels the drag and sends
 * nothing.
 */

import type { MoveResponse, Point } from './types.js';

export type MoveSender = (node: string, x: number, y: number) => Promise<MoveResponse>;

export interface PendingMove {
  node: string;
  x: number;
  y: number;
}

export class MovePipeline {
  private inFlight = false;
  private pending: PendingMove | null = null;

  constructor(
    private readonly send: MoveSender,
    private readonly onResult: (move: PendingMove, resp: MoveResponse) => void,
    private readonly onError: (move: PendingMove, error: unknown) => void,
  ) {}

  get busy(): boolean {
    return this.inFlight;
  }

  submit(node: string, x: number, y: number): void {
    if (this.inFlight) {
      this.pending = { node, x, y };
      return;
    }
    void this.dispatch({ node, x, y });
  }

  private async dispatch(move: PendingMove): Promise<void> {
    this.inFlight = true;
    try {
      const resp = await this.send(move.node, move.x, move.y);
      this.onResult(move, resp);
    } catch (error) {
      this.onError(move, error);
    } finally {
      this.inFlight = false;
      if (this.pending) {
        const next = this.pending;
        this.pending = null;
        void this.dispatch(next);
      }
    }
  }
}

export interface DragCallbacks {
  /** Optimistic redraw while dragging; geometry only, never scores. */
  onLocalMove(node: string, at: Point): void;
  /** Drag cancelled (escape) or server rejected the move: restore. */
  onRevert(node: string, origin: Point): void;
  /** Release: submit the move to the server. */
  onRelease(node: string, at: Point): void;
}

export class DragController {
  private active: { node: string; origin: Point; last: Point } | null = null;

  constructor(private readonly callbacks: DragCallbacks) {}

  get dragging(): boolean {
    return this.active !== null;
  }

  pointerDown(node: string, at: Point): void {
    this.active = { node, origin: { ...at }, last: { ...at } };
  }

  pointerMove(at: Point): void {
    if (!this.active) return;
    this.active.last = { ...at };
    this.callbacks.onLocalMove(this.active.node, at);
  }

  pointerUp(at?: Point): void {
    if (!this.active) return;
    const { node, last } = this.active;
    const drop = at ?? last;
    this.active = null;
    this.callbacks.onRelease(node, drop);
  }

  cancel(): void {
    if (!this.active) return;
    const { node, origin } = this.active;
    this.active = null;
    this.callbacks.onRevert(node, origin);
  }
}
