/** Sidebar view-model: the score board, totals, and control availability.
 *
 * Every number shown comes from the most recent server breakdown; the client
 * adds no arithmetic beyond sorting and sign inspection.
 */

import { CRITERIA, type Breakdown, type CriterionId } from './types.js';

export type ArrowDirection = 'up' | 'down' | 'none';

export interface ScoreRow {
  criterion: CriterionId;
  display: number;
  delta: number;
  arrow: ArrowDirection;
  priority: number;
}

export interface SidebarModel {
  rows: ScoreRow[];
  currentOverall: number;
  bestOverall: number;
  overallArrow: ArrowDirection;
  undoEnabled: boolean;
  redoEnabled: boolean;
  scaleEnabled: boolean;
}

export function arrowFor(delta: number): ArrowDirection {
  if (delta > 0) return 'up';
  if (delta < 0) return 'down';
  return 'none';
}

/** Criteria in decreasing priority; ties keep the canonical listing. */
export function rankCriteria(priorities: Record<CriterionId, number>): CriterionId[] {
  return [...CRITERIA].sort((a, b) => {
    if (priorities[b] !== priorities[a]) return priorities[b] - priorities[a];
    return CRITERIA.indexOf(a) - CRITERIA.indexOf(b);
  });
}

export function buildSidebar(
  breakdown: Breakdown,
  priorities: Record<CriterionId, number>,
  bestOverall: number,
  canUndo: boolean,
  canRedo: boolean,
  selectionSize: number,
): SidebarModel {
  const rows = rankCriteria(priorities).map((criterion) => ({
    criterion,
    display: breakdown.display[criterion],
    delta: breakdown.deltas[criterion],
    arrow: arrowFor(breakdown.deltas[criterion]),
    priority: priorities[criterion],
  }));
  return {
    rows,
    currentOverall: breakdown.overall,
    bestOverall,
    overallArrow: arrowFor(breakdown.delta_overall),
    undoEnabled: canUndo,
    redoEnabled: canRedo,
    scaleEnabled: selectionSize > 0,
  };
}
