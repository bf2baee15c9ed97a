import { describe, expect, it } from 'vitest';

import {
  applyMoveResponse,
  applySessionOpened,
  applyStackResponse,
  initialState,
  toggleSelection,
} from '../src/state.js';
import type { Breakdown, MoveResponse, SessionOpened, StackResponse } from '../src/types.js';

function breakdown(displayValue: number, overall: number): Breakdown {
  return {
    dp: 0, ec: 0, el: 0, nd: 0, ned: 0, overall,
    display: { DP: displayValue, EC: displayValue, EL: displayValue, ND: displayValue, NED: displayValue },
    deltas: { DP: 0, EC: 0, EL: 0, ND: 0, NED: 0 },
    delta_overall: 0,
  };
}

function opened(): SessionOpened {
  return {
    token: 't', session_id: 's1', mode: 'EC',
    layout: {
      box: { w: 5000, h: 6000 },
      positions: { a: { x: 1, y: 2 }, b: { x: 3, y: 4 } },
    },
    breakdown: breakdown(5000, 100),
    priorities: { DP: 400, EC: 3, EL: 1, ND: 1, NED: 1 },
  };
}

describe('view state', () => {
  it('copies the opened session verbatim', () => {
    const state = initialState();
    applySessionOpened(state, opened());
    expect(state.sessionId).toBe('s1');
    expect(state.mode).toBe('EC');
    expect(state.positions.b).toEqual({ x: 3, y: 4 });
    expect(state.breakdown?.display.DP).toBe(5000);
    expect(state.outOfBox).toBe(false);
  });

  it('flags out-of-box states when every display score is zero', () => {
    const state = initialState();
    applySessionOpened(state, opened());
    const resp: MoveResponse = {
      breakdown: breakdown(0, 0),
      session_best_overall: 100,
      registry_best_overall: 100,
      can_undo: true,
      can_redo: false,
    };
    applyMoveResponse(state, resp);
    expect(state.outOfBox).toBe(true);
    expect(state.breakdown?.overall).toBe(0);
    expect(state.sessionBestOverall).toBe(100);
  });

  it('restores positions from stack responses', () => {
    const state = initialState();
    applySessionOpened(state, opened());
    state.positions.a = { x: 999, y: 999 };
    const resp: StackResponse = {
      breakdown: breakdown(5000, 100),
      session_best_overall: 100,
      registry_best_overall: 100,
      can_undo: false,
      can_redo: true,
      applied: true,
      layout: {
        box: { w: 5000, h: 6000 },
        positions: { a: { x: 1, y: 2 }, b: { x: 3, y: 4 } },
      },
    };
    applyStackResponse(state, resp);
    expect(state.positions.a).toEqual({ x: 1, y: 2 });
    expect(state.canRedo).toBe(true);
  });

  it('toggles node selection', () => {
    const state = initialState();
    toggleSelection(state, 'a');
    expect(state.selection.has('a')).toBe(true);
    toggleSelection(state, 'a');
    expect(state.selection.has('a')).toBe(false);
  });
});
