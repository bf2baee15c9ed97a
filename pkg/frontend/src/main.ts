/** Browser entry point: wires the canvas, sidebar, and controls to the API. */

import { ApiClient } from './api.js';
import { DragController, MovePipeline } from './drag.js';
import { scaleSelection } from './geometry.js';
import { buildOverlay } from './overlay.js';
import { CanvasRenderer } from './renderer.js';
import { buildSidebar, type SidebarModel } from './sidebar.js';
import {
  applyMoveResponse,
  applySessionOpened,
  applyStackResponse,
  initialState,
  toggleSelection,
  type ViewState,
} from './state.js';
import { MODE_TIPS } from './tips.js';
import type { NetworkDoc, Point } from './types.js';

const HIT_RADIUS_PX = 12;

class GameApp {
  private readonly state: ViewState = initialState();
  private network: NetworkDoc | null = null;
  private hoverNode: string | null = null;
  private hoverCrossingEdges: Set<string> = new Set();
  private readonly renderer: CanvasRenderer;
  private readonly pipeline: MovePipeline;
  private readonly drag: DragController;
  private preDragOrigin: Point | null = null;

  constructor(
    private readonly api: ApiClient,
    private readonly gameId: string,
    private readonly canvas: HTMLCanvasElement,
    private readonly sidebarEl: HTMLElement,
    private readonly tipsEl: HTMLElement,
  ) {
    this.renderer = new CanvasRenderer(canvas);
    this.pipeline = new MovePipeline(
      (node, x, y) => {
        if (!this.state.sessionId || !this.state.token) {
          return Promise.reject(new Error('no live session'));
        }
        return this.api.move(this.state.sessionId, this.state.token, node, x, y);
      },
      (_move, resp) => {
        applyMoveResponse(this.state, resp);
        this.redraw();
      },
      (move, _error) => {
        if (this.preDragOrigin) {
          this.state.positions[move.node] = this.preDragOrigin;
        }
        this.redraw();
      },
    );
    this.drag = new DragController({
      onLocalMove: (node, at) => {
        this.state.positions[node] = at;
        this.redraw();
      },
      onRevert: (node, origin) => {
        this.state.positions[node] = origin;
        this.redraw();
      },
      onRelease: (node, at) => {
        this.state.positions[node] = at;
        this.pipeline.submit(node, at.x, at.y);
        this.redraw();
      },
    });
  }

  async start(): Promise<void> {
    this.network = await this.api.network(this.gameId);
    const opened = await this.api.openSession(this.gameId);
    applySessionOpened(this.state, opened);
    const best = await this.api.best(this.gameId);
    this.state.registryBestOverall = best.breakdown.overall;
    this.renderer.fitCamera(this.state);
    this.tipsEl.textContent = this.state.mode ? MODE_TIPS[this.state.mode] : '';
    this.bindPointerEvents();
    this.bindKeyEvents();
    this.redraw();
  }

  private crossingPairAt(screen: Point): Set<string> {
    if (!this.network || this.state.mode !== 'EC') return new Set();
    const overlay = buildOverlay(this.network, this.state.positions, 'EC', null);
    for (const dot of overlay.crossingDots) {
      const p = this.renderer.toScreen(this.state, dot.point);
      if (Math.hypot(p.x - screen.x, p.y - screen.y) <= HIT_RADIUS_PX) {
        return new Set(dot.edgeIds);
      }
    }
    return new Set();
  }

  private nodeAt(screen: Point): string | null {
    if (!this.network) return null;
    let bestId: string | null = null;
    let bestDist = HIT_RADIUS_PX;
    for (const node of this.network.nodes) {
      const p = this.renderer.toScreen(this.state, this.state.positions[node.id]);
      const d = Math.hypot(p.x - screen.x, p.y - screen.y);
      if (d <= bestDist) {
        bestDist = d;
        bestId = node.id;
      }
    }
    return bestId;
  }

  private bindPointerEvents(): void {
    this.canvas.addEventListener('pointerdown', (ev) => {
      const screen = { x: ev.offsetX, y: ev.offsetY };
      const node = this.nodeAt(screen);
      if (!node) return;
      if (ev.shiftKey) {
        toggleSelection(this.state, node);
        this.redraw();
        return;
      }
      this.preDragOrigin = { ...this.state.positions[node] };
      this.drag.pointerDown(node, this.renderer.toWorld(this.state, screen));
      this.canvas.setPointerCapture(ev.pointerId);
    });
    this.canvas.addEventListener('pointermove', (ev) => {
      const screen = { x: ev.offsetX, y: ev.offsetY };
      if (this.drag.dragging) {
        this.drag.pointerMove(this.renderer.toWorld(this.state, screen));
      } else {
        const hover = this.nodeAt(screen);
        const pair = this.crossingPairAt(screen);
        const changed =
          hover !== this.hoverNode ||
          pair.size !== this.hoverCrossingEdges.size ||
          [...pair].some((id) => !this.hoverCrossingEdges.has(id));
        if (changed) {
          this.hoverNode = hover;
          this.hoverCrossingEdges = pair;
          this.redraw();
        }
      }
    });
    this.canvas.addEventListener('pointerup', (ev) => {
      if (!this.drag.dragging) return;
      const screen = { x: ev.offsetX, y: ev.offsetY };
      this.drag.pointerUp(this.renderer.toWorld(this.state, screen));
    });
  }

  private bindKeyEvents(): void {
    window.addEventListener('keydown', (ev) => {
      if (ev.key === 'Escape') this.drag.cancel();
    });
  }

  private async stackAction(action: 'undo' | 'redo' | 'revert'): Promise<void> {
    if (!this.state.sessionId || !this.state.token) return;
    const resp = await this.api.stack(this.state.sessionId, this.state.token, action);
    applyStackResponse(this.state, resp);
    this.redraw();
  }

  private async requestClue(): Promise<void> {
    if (!this.state.sessionId || !this.state.token) return;
    this.state.activeClue = await this.api.clue(this.state.sessionId, this.state.token);
    this.redraw();
  }

  private applyScale(factor: number): void {
    const moves = scaleSelection(
      this.state.positions, this.state.selection, factor, this.state.box,
    );
    for (const [node, target] of moves) {
      this.state.positions[node] = target;
      this.pipeline.submit(node, target.x, target.y);
    }
    this.redraw();
  }

  private async finalize(): Promise<void> {
    if (!this.state.sessionId || !this.state.token || this.state.finalized) return;
    const resp = await this.api.finalize(this.state.sessionId, this.state.token);
    this.state.finalized = true;
    this.state.registryBestOverall = resp.registry_best_overall;
    const verdict = resp.registry_updated
      ? `New best layout! Bonus earned: ${resp.bonus.toFixed(2)}`
      : 'Session closed; the previous best layout stands.';
    this.tipsEl.textContent = verdict;
    this.redraw();
  }

  private redraw(): void {
    if (!this.network || !this.state.mode) return;
    const overlay = buildOverlay(
      this.network, this.state.positions, this.state.mode, this.state.activeClue,
    );
    this.renderer.draw(
      this.state, this.network, overlay, this.hoverNode, this.hoverCrossingEdges,
    );
    if (this.state.breakdown) {
      const model = buildSidebar(
        this.state.breakdown,
        this.state.priorities,
        this.state.sessionBestOverall,
        this.state.canUndo,
        this.state.canRedo,
        this.state.selection.size,
      );
      this.renderSidebar(model);
    }
  }

  private renderSidebar(model: SidebarModel): void {
    const arrowChar = (a: string) => (a === 'up' ? '↑' : a === 'down' ? '↓' : '');
    const rows = model.rows
      .map(
        (row) => `
        <div class="score-row">
          <span class="badge" title="priority">${row.priority}</span>
          <span class="crit">${row.criterion}</span>
          <span class="value">${row.display}</span>
          <span class="arrow ${row.arrow}">${arrowChar(row.arrow)}</span>
        </div>`,
      )
      .join('');
    this.sidebarEl.innerHTML = `
      <div class="totals">
        <div>Best <b>${model.bestOverall.toFixed(3)}</b></div>
        <div>Current <b>${model.currentOverall.toFixed(3)}</b>
          <span class="arrow ${model.overallArrow}">${arrowChar(model.overallArrow)}</span>
        </div>
      </div>
      <div class="board">${rows}</div>
      <div class="controls">
        <button id="btn-clue">Clue</button>
        <button id="btn-undo" ${model.undoEnabled ? '' : 'disabled'}>Undo</button>
        <button id="btn-redo" ${model.redoEnabled ? '' : 'disabled'}>Redo</button>
        <button id="btn-revert">Best layout</button>
        <button id="btn-expand" ${model.scaleEnabled ? '' : 'disabled'}>Expand</button>
        <button id="btn-squeeze" ${model.scaleEnabled ? '' : 'disabled'}>Squeeze</button>
        <button id="btn-finalize">Finish session</button>
      </div>`;
    this.bindButton('btn-clue', () => void this.requestClue());
    this.bindButton('btn-undo', () => void this.stackAction('undo'));
    this.bindButton('btn-redo', () => void this.stackAction('redo'));
    this.bindButton('btn-revert', () => void this.stackAction('revert'));
    this.bindButton('btn-expand', () => this.applyScale(1.25));
    this.bindButton('btn-squeeze', () => this.applyScale(0.8));
    this.bindButton('btn-finalize', () => void this.finalize());
  }

  private bindButton(id: string, handler: () => void): void {
    const el = this.sidebarEl.querySelector<HTMLButtonElement>(`#${id}`);
    if (el) el.addEventListener('click', handler);
  }
}

export function bootstrap(): void {
  const params = new URLSearchParams(window.location.search);
  const gameId = params.get('game') ?? 'demo';
  const base = params.get('api') ?? '';
  const canvas = document.getElementById('board') as HTMLCanvasElement;
  const sidebar = document.getElementById('sidebar') as HTMLElement;
  const tips = document.getElementById('tips') as HTMLElement;
  const app = new GameApp(new ApiClient(base), gameId, canvas, sidebar, tips);
  void app.start().catch((err) => {
    tips.textContent = `Failed to start: ${err}`;
  });
}

if (typeof document !== 'undefined' && document.getElementById('board')) {
  bootstrap();
}
