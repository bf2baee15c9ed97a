/** Wire types mirroring the server's JSON schemas. */

export type CriterionId = 'DP' | 'EC' | 'EL' | 'ND' | 'NED';

export const CRITERIA: CriterionId[] = ['DP', 'EC', 'EL', 'ND', 'NED'];

export interface Breakdown {
  dp: number;
  ec: number;
  el: number;
  nd: number;
  ned: number;
  overall: number;
  display: Record<CriterionId, number>;
  deltas: Record<CriterionId, number>;
  delta_overall: number;
}

export interface Clue {
  criterion: CriterionId;
  node_ids: string[];
  edge_ids: string[];
  expected_gain: number | null;
  rationale: string;
}

export type NodeRole = 'source' | 'target' | 'internal';

export interface NetworkNode {
  id: string;
  role: NodeRole;
  label?: string;
}

export interface NetworkEdge {
  id: string;
  tail: string;
  head: string;
  directed: boolean;
}

export interface NetworkDoc {
  id: string;
  nodes: NetworkNode[];
  edges: NetworkEdge[];
}

export interface Box {
  w: number;
  h: number;
}

export interface LayoutWire {
  box: Box;
  positions: Record<string, { x: number; y: number }>;
}

export interface SessionOpened {
  token: string;
  session_id: string;
  mode: CriterionId;
  layout: LayoutWire;
  breakdown: Breakdown;
  priorities: Record<CriterionId, number>;
}

export interface MoveResponse {
  breakdown: Breakdown;
  session_best_overall: number;
  registry_best_overall: number;
  can_undo: boolean;
  can_redo: boolean;
}

export interface StackResponse extends MoveResponse {
  applied: boolean;
  layout?: LayoutWire;
}

export interface FinalizeResponse {
  registry_updated: boolean;
  bonus: number;
  registry_best_overall: number;
}

export interface Point {
  x: number;
  y: number;
}
