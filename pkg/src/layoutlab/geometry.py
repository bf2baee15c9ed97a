"""Geometric predicates shared by scoring, clue generation, and layout controls."""

from __future__ import annotations

import logging
import math

from .errors import ContractViolation
from .model import Edge, Layout, Point

log = logging.getLogger(__name__)


def downward_slope_threshold(theta_min_deg: float) -> float:
    """tan of the minimum angle; edges satisfy dy >= tan(theta) * |dx|."""
    return math.tan(math.radians(theta_min_deg))


def is_downward_edge(edge: Edge, layout: Layout, theta_min_deg: float = 15.0) -> bool:
    """True iff the directed edge points at the screen bottom steeply enough.

    Screen convention: y grows downward, so the head must have strictly larger
    y than the tail, and the angle to the horizontal must be >= theta_min
    (inclusive). Zero-length edges are never downward.
    """
    if not edge.directed:
        raise ContractViolation(f"edge {edge.id!r} is undirected; downwardness needs a direction")
    tail = layout.positions[edge.tail]
    head = layout.positions[edge.head]
    dx = head.x - tail.x
    dy = head.y - tail.y
    if dy <= 0:
        return False
    return dy >= downward_slope_threshold(theta_min_deg) * abs(dx)


def in_bounds(layout: Layout) -> bool:
    """Closed-box membership: 0 <= x <= w and 0 <= y <= h for every node."""
    w, h = layout.box.w, layout.box.h
    return all(0 <= p.x <= w and 0 <= p.y <= h for p in layout.positions.values())


def _orient(ax: float, ay: float, bx: float, by: float, cx: float, cy: float) -> float:
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


def segments_properly_cross(
    a: Point, b: Point, c: Point, d: Point
) -> bool:
    """Open-segment intersection; collinear overlap of positive length counts.

    Pure geometry: the caller decides whether shared network endpoints exempt
    a pair (they do, for edge crossings).
    """
    d1 = _orient(a.x, a.y, b.x, b.y, c.x, c.y)
    d2 = _orient(a.x, a.y, b.x, b.y, d.x, d.y)
    d3 = _orient(c.x, c.y, d.x, d.y, a.x, a.y)
    d4 = _orient(c.x, c.y, d.x, d.y, b.x, b.y)
    if ((d1 > 0) != (d2 > 0)) and d1 != 0 and d2 != 0 \
            and ((d3 > 0) != (d4 > 0)) and d3 != 0 and d4 != 0:
        return True
    if d1 == 0 and d2 == 0 and d3 == 0 and d4 == 0:
        # Collinear: crossing iff the shared portion has positive length.
        ox = min(max(a.x, b.x), max(c.x, d.x)) - max(min(a.x, b.x), min(c.x, d.x))
        oy = min(max(a.y, b.y), max(c.y, d.y)) - max(min(a.y, b.y), min(c.y, d.y))
        return ox >= 0 and oy >= 0 and (ox > 0 or oy > 0)
    return False


def segments_cross(e1: Edge, e2: Edge, layout: Layout) -> bool:
    """True iff the two edges cross; pairs sharing a network endpoint never do."""
    if e1.endpoints & e2.endpoints:
        return False
    p = layout.positions
    return segments_properly_cross(p[e1.tail], p[e1.head], p[e2.tail], p[e2.head])


def point_segment_distance(p: Point, a: Point, b: Point) -> float:
    """Distance from p to the closed segment ab (point distance when a == b).

    Interior projections use the perpendicular-distance form |cross| / |ab|,
    which is exactly zero for points on the segment.
    """
    ex = b.x - a.x
    ey = b.y - a.y
    length_sq = ex * ex + ey * ey
    if length_sq == 0:
        return math.hypot(p.x - a.x, p.y - a.y)
    px = p.x - a.x
    py = p.y - a.y
    t = (px * ex + py * ey) / length_sq
    if t <= 0:
        return math.hypot(px, py)
    if t >= 1:
        return math.hypot(p.x - b.x, p.y - b.y)
    return abs(ex * py - ey * px) / math.sqrt(length_sq)


def scale_selection(layout: Layout, selection: set[str], factor: float) -> Layout:
    """Move selected nodes radially about their centroid by ``factor``.

    Unselected nodes are untouched; results are clamped to the bounding box.
    An empty selection is a warned no-op.
    """
    if not selection:
        log.warning("scale_selection called with empty selection; layout unchanged")
        return layout
    if not factor > 0:
        raise ContractViolation(f"scale factor must be positive, got {factor}")
    unknown = selection - set(layout.positions)
    if unknown:
        raise KeyError(sorted(unknown)[0])
    sel = sorted(selection)
    cx = sum(layout.positions[nid].x for nid in sel) / len(sel)
    cy = sum(layout.positions[nid].y for nid in sel) / len(sel)
    pos = dict(layout.positions)
    for nid in sel:
        p = pos[nid]
        nx = cx + factor * (p.x - cx)
        ny = cy + factor * (p.y - cy)
        pos[nid] = Point(
            min(layout.box.w, max(0.0, nx)),
            min(layout.box.h, max(0.0, ny)),
        )
    return Layout(pos, layout.box)
