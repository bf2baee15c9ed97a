import { describe, expect, it } from 'vitest';

import { DragController, MovePipeline, type PendingMove } from '../src/drag.js';
import type { Breakdown, MoveResponse } from '../src/types.js';

function fakeBreakdown(): Breakdown {
  return {
    dp: 0, ec: 0, el: 0, nd: 0, ned: 0, overall: 0,
    display: { DP: 0, EC: 0, EL: 0, ND: 0, NED: 0 },
    deltas: { DP: 0, EC: 0, EL: 0, ND: 0, NED: 0 },
    delta_overall: 0,
  };
}

function fakeResponse(): MoveResponse {
  return {
    breakdown: fakeBreakdown(),
    session_best_overall: 0,
    registry_best_overall: 0,
    can_undo: true,
    can_redo: false,
  };
}

interface Harness {
  drag: DragController;
  pipeline: MovePipeline;
  sent: Array<{ node: string; x: number; y: number }>;
  reverted: Array<{ node: string; x: number; y: number }>;
  resolveNext: () => void;
}

function harness(failRequests = false): Harness {
  const sent: Harness['sent'] = [];
  const reverted: Harness['reverted'] = [];
  const resolvers: Array<() => void> = [];
  const pipeline = new MovePipeline(
    (node, x, y) => {
      sent.push({ node, x, y });
      return new Promise<MoveResponse>((resolve, reject) => {
        resolvers.push(() => (failRequests ? reject(new Error('boom')) : resolve(fakeResponse())));
      });
    },
    () => undefined,
    (move: PendingMove) => reverted.push({ node: move.node, x: move.x, y: move.y }),
  );
  const drag = new DragController({
    onLocalMove: () => undefined,
    onRevert: (node, origin) => reverted.push({ node, x: origin.x, y: origin.y }),
    onRelease: (node, at) => pipeline.submit(node, at.x, at.y),
  });
  return { drag, pipeline, sent, reverted, resolveNext: () => resolvers.shift()?.() };
}

async function settle(): Promise<void> {
  await new Promise((resolve) => setTimeout(resolve, 0));
}

describe('drag release', () => {
  it('emits exactly one move request with the dropped coordinates', async () => {
    const h = harness();
    h.drag.pointerDown('a', { x: 10, y: 10 });
    h.drag.pointerMove({ x: 50, y: 60 });
    h.drag.pointerMove({ x: 200, y: 300 });
    h.drag.pointerUp({ x: 420, y: 510 });
    await settle();
    expect(h.sent).toEqual([{ node: 'a', x: 420, y: 510 }]);
  });

  it('sends nothing when the drag is cancelled with escape', async () => {
    const h = harness();
    h.drag.pointerDown('a', { x: 10, y: 10 });
    h.drag.pointerMove({ x: 50, y: 60 });
    h.drag.cancel();
    await settle();
    expect(h.sent).toEqual([]);
    expect(h.reverted).toEqual([{ node: 'a', x: 10, y: 10 }]);
    // a later pointerUp must not fire a stale request
    h.drag.pointerUp({ x: 99, y: 99 });
    await settle();
    expect(h.sent).toEqual([]);
  });

  it('keeps at most one request in flight and coalesces queued releases', async () => {
    const h = harness();
    h.drag.pointerDown('a', { x: 0, y: 0 });
    h.drag.pointerUp({ x: 100, y: 100 });
    await settle();
    expect(h.sent.length).toBe(1);
    // two more releases while the first request is still pending
    h.drag.pointerDown('b', { x: 0, y: 0 });
    h.drag.pointerUp({ x: 200, y: 200 });
    h.drag.pointerDown('c', { x: 0, y: 0 });
    h.drag.pointerUp({ x: 300, y: 300 });
    await settle();
    expect(h.sent.length).toBe(1); // still in flight, releases queued
    h.resolveNext();
    await settle();
    // only the latest queued release went out
    expect(h.sent.length).toBe(2);
    expect(h.sent[1]).toEqual({ node: 'c', x: 300, y: 300 });
    h.resolveNext();
    await settle();
    expect(h.sent.length).toBe(2);
  });

  it('reports failed moves so the node can be reverted', async () => {
    const h = harness(true);
    h.drag.pointerDown('a', { x: 1, y: 2 });
    h.drag.pointerUp({ x: 500, y: 600 });
    await settle();
    h.resolveNext();
    await settle();
    expect(h.reverted).toEqual([{ node: 'a', x: 500, y: 600 }]);
  });
});
