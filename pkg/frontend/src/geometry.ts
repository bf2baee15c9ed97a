/** Client-side geometry for overlays and layout controls.
 *
 * Scores are never computed here; these helpers only decide what to paint
 * (upward edges, crossing dots) and how expand/squeeze moves nodes.
 * Screen convention matches the server: y grows downward.
 */

import type { Box, Point } from './types.js';

const THETA_MIN_DEG = 15;

export function isDownwardSegment(tail: Point, head: Point, thetaMinDeg = THETA_MIN_DEG): boolean {
  const dy = head.y - tail.y;
  if (dy <= 0) return false;
  return dy >= Math.tan((thetaMinDeg * Math.PI) / 180) * Math.abs(head.x - tail.x);
}

/** Intersection point of two properly crossing open segments, else null. */
export function properCrossingPoint(a: Point, b: Point, c: Point, d: Point): Point | null {
  const rx = b.x - a.x;
  const ry = b.y - a.y;
  const sx = d.x - c.x;
  const sy = d.y - c.y;
  const denom = rx * sy - ry * sx;
  if (denom === 0) return null;
  const qpx = c.x - a.x;
  const qpy = c.y - a.y;
  const t = (qpx * sy - qpy * sx) / denom;
  const u = (qpx * ry - qpy * rx) / denom;
  if (t <= 0 || t >= 1 || u <= 0 || u >= 1) return null;
  return { x: a.x + t * rx, y: a.y + t * ry };
}

export function clampToBox(p: Point, box: Box): Point {
  return {
    x: Math.min(box.w, Math.max(0, p.x)),
    y: Math.min(box.h, Math.max(0, p.y)),
  };
}

export function inBox(p: Point, box: Box): boolean {
  return p.x >= 0 && p.x <= box.w && p.y >= 0 && p.y <= box.h;
}

/** Expand/squeeze: move selected nodes radially about their centroid. */
export function scaleSelection(
  positions: Record<string, Point>,
  selection: Set<string>,
  factor: number,
  box: Box,
): Map<string, Point> {
  const moved = new Map<string, Point>();
  if (selection.size === 0 || factor <= 0) return moved;
  let cx = 0;
  let cy = 0;
  for (const id of selection) {
    cx += positions[id].x;
    cy += positions[id].y;
  }
  cx /= selection.size;
  cy /= selection.size;
  for (const id of selection) {
    const p = positions[id];
    const target = clampToBox(
      { x: cx + factor * (p.x - cx), y: cy + factor * (p.y - cy) },
      box,
    );
    if (target.x !== p.x || target.y !== p.y) moved.set(id, target);
  }
  return moved;
}
