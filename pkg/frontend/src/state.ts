/** Client view state. Scores are copied verbatim from server responses;
 * the client performs no score arithmetic of its own. */

import { CRITERIA, type Box, type Breakdown, type Clue, type CriterionId, type MoveResponse, type Point, type SessionOpened, type StackResponse } from './types.js';

export interface Camera {
  scale: number;
  offsetX: number;
  offsetY: number;
}

export interface ViewState {
  sessionId: string | null;
  token: string | null;
  mode: CriterionId | null;
  priorities: Record<CriterionId, number>;
  box: Box;
  positions: Record<string, Point>;
  selection: Set<string>;
  camera: Camera;
  breakdown: Breakdown | null;
  sessionBestOverall: number;
  registryBestOverall: number;
  activeClue: Clue | null;
  canUndo: boolean;
  canRedo: boolean;
  outOfBox: boolean;
  finalized: boolean;
}

export function initialState(): ViewState {
  return {
    sessionId: null,
    token: null,
    mode: null,
    priorities: { DP: 400, EC: 3, EL: 1, ND: 1, NED: 1 },
    box: { w: 5000, h: 6000 },
    positions: {},
    selection: new Set(),
    camera: { scale: 1, offsetX: 0, offsetY: 0 },
    breakdown: null,
    sessionBestOverall: 0,
    registryBestOverall: 0,
    activeClue: null,
    canUndo: false,
    canRedo: false,
    outOfBox: false,
    finalized: false,
  };
}

export function applySessionOpened(state: ViewState, opened: SessionOpened): void {
  state.sessionId = opened.session_id;
  state.token = opened.token;
  state.mode = opened.mode;
  state.priorities = opened.priorities;
  state.box = opened.layout.box;
  state.positions = {};
  for (const [id, p] of Object.entries(opened.layout.positions)) {
    state.positions[id] = { x: p.x, y: p.y };
  }
  state.breakdown = opened.breakdown;
  state.sessionBestOverall = opened.breakdown.overall;
  state.activeClue = null;
  state.canUndo = false;
  state.canRedo = false;
  state.outOfBox = allZero(opened.breakdown);
  state.finalized = false;
}

function allZero(breakdown: Breakdown): boolean {
  return CRITERIA.every((c) => breakdown.display[c] === 0);
}

export function applyMoveResponse(state: ViewState, resp: MoveResponse): void {
  state.breakdown = resp.breakdown;
  state.sessionBestOverall = resp.session_best_overall;
  state.registryBestOverall = resp.registry_best_overall;
  state.canUndo = resp.can_undo;
  state.canRedo = resp.can_redo;
  state.outOfBox = allZero(resp.breakdown);
}

export function applyStackResponse(state: ViewState, resp: StackResponse): void {
  applyMoveResponse(state, resp);
  if (resp.layout) {
    for (const [id, p] of Object.entries(resp.layout.positions)) {
      state.positions[id] = { x: p.x, y: p.y };
    }
  }
}

export function toggleSelection(state: ViewState, nodeId: string): void {
  if (state.selection.has(nodeId)) state.selection.delete(nodeId);
  else state.selection.add(nodeId);
}
