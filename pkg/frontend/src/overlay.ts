/** Mode-specific overlay model: which elements to paint, and how.
 *
 * DP mode paints every upward directed edge red; EC mode marks each crossing
 * with a red dot (hover highlights the pair); the distance modes stay neutral
 * blue. Clue elements are drawn saturated above everything else. Node labels
 * are never shown; nodes expose their incident-edge count on hover instead.
 */

import { isDownwardSegment, properCrossingPoint } from './geometry.js';
import type { Clue, CriterionId, NetworkDoc, Point } from './types.js';

export type NodeGlyph = 'source-triangle' | 'target-square' | 'circle';

export interface CrossingDot {
  point: Point;
  edgeIds: [string, string];
}

export interface OverlayModel {
  redEdgeIds: Set<string>;
  crossingDots: CrossingDot[];
  clueNodeIds: Set<string>;
  clueEdgeIds: Set<string>;
  nodeGlyphs: Record<string, NodeGlyph>;
  hoverDegrees: Record<string, number>;
}

export function buildOverlay(
  network: NetworkDoc,
  positions: Record<string, Point>,
  mode: CriterionId,
  clue: Clue | null,
): OverlayModel {
  const redEdgeIds = new Set<string>();
  const crossingDots: CrossingDot[] = [];

  if (mode === 'DP') {
    for (const edge of network.edges) {
      if (!edge.directed) continue;
      if (!isDownwardSegment(positions[edge.tail], positions[edge.head])) {
        redEdgeIds.add(edge.id);
      }
    }
  }
  if (mode === 'EC') {
    for (let i = 0; i < network.edges.length; i += 1) {
      for (let j = i + 1; j < network.edges.length; j += 1) {
        const e1 = network.edges[i];
        const e2 = network.edges[j];
        const shared =
          e1.tail === e2.tail || e1.tail === e2.head ||
          e1.head === e2.tail || e1.head === e2.head;
        if (shared) continue;
        const point = properCrossingPoint(
          positions[e1.tail], positions[e1.head],
          positions[e2.tail], positions[e2.head],
        );
        if (point) crossingDots.push({ point, edgeIds: [e1.id, e2.id] });
      }
    }
  }

  const nodeGlyphs: Record<string, NodeGlyph> = {};
  const hoverDegrees: Record<string, number> = {};
  for (const node of network.nodes) {
    nodeGlyphs[node.id] =
      node.role === 'source' ? 'source-triangle'
      : node.role === 'target' ? 'target-square'
      : 'circle';
    hoverDegrees[node.id] = 0;
  }
  for (const edge of network.edges) {
    hoverDegrees[edge.tail] += 1;
    hoverDegrees[edge.head] += 1;
  }

  return {
    redEdgeIds,
    crossingDots,
    clueNodeIds: new Set(clue?.node_ids ?? []),
    clueEdgeIds: new Set(clue?.edge_ids ?? []),
    nodeGlyphs,
    hoverDegrees,
  };
}
