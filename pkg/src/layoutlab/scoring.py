"""The five per-criterion layout scores and their weighted combination.

One vectorized implementation (ScoreEngine) is authoritative everywhere:
interactive rescoring after a move and the annealer's inner loop both call
it, so "incremental" and "full" results agree bit-for-bit by construction.
Counts (downward paths, crossings) are exact integers; the remaining scores
are plain float64 arithmetic in a fixed evaluation order.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass, field

import numba
import numpy as np

from .errors import ContractViolation, PathCountCapExceeded
from .geometry import downward_slope_threshold
from .model import BoundingBox, Layout, Network, Point


class Criterion(enum.Enum):
    DP = "DP"  # downward-pointing paths
    EC = "EC"  # non-crossing edge pairs
    EL = "EL"  # edge length
    ND = "ND"  # node distribution
    NED = "NED"  # node-edge separation


CRITERIA: tuple[Criterion, ...] = (
    Criterion.DP,
    Criterion.EC,
    Criterion.EL,
    Criterion.ND,
    Criterion.NED,
)

DISPLAY_SCALE = 10_000


@dataclass(frozen=True)
class Priorities:
    """Nonnegative criterion weights; the experiment defaults weight DP 400x."""

    w_dp: float = 400.0
    w_ec: float = 3.0
    w_el: float = 1.0
    w_nd: float = 1.0
    w_ned: float = 1.0

    def __post_init__(self):
        weights = self.as_tuple()
        if any(w < 0 for w in weights):
            raise ContractViolation(f"priorities must be nonnegative, got {weights}")
        if not any(w > 0 for w in weights):
            raise ContractViolation("at least one priority must be positive")

    def as_tuple(self) -> tuple[float, float, float, float, float]:
        return (self.w_dp, self.w_ec, self.w_el, self.w_nd, self.w_ned)

    def of(self, criterion: Criterion) -> float:
        return dict(zip(CRITERIA, self.as_tuple()))[criterion]

    def ranked(self) -> tuple[Criterion, ...]:
        """Criteria by decreasing priority; ties keep the canonical listing."""
        order = {c: i for i, c in enumerate(CRITERIA)}
        return tuple(sorted(CRITERIA, key=lambda c: (-self.of(c), order[c])))


@dataclass(frozen=True)
class ScoringParams:
    theta_min_deg: float = 15.0
    min_edge_length: float = 300.0
    short_edge_penalty: float = 10_000.0
    path_count_cap: int = 10_000_000
    source_target_only: bool = False

    def validate_for_box(self, box: BoundingBox) -> None:
        if self.short_edge_penalty <= box.diagonal:
            raise ContractViolation(
                f"short-edge penalty {self.short_edge_penalty} must exceed the "
                f"box diagonal {box.diagonal:.4f}"
            )


@dataclass(frozen=True)
class ScoreBreakdown:
    dp: float
    ec: float
    el: float
    nd: float
    ned: float
    overall: float
    display_dp: int
    display_ec: int
    display_el: int
    display_nd: int
    display_ned: int
    deltas: dict[Criterion, int] = field(default_factory=dict)
    delta_overall: float = 0.0

    @property
    def scaled_overall(self) -> float:
        """Overall score in display units; the annealer's energy scale."""
        return self.overall * DISPLAY_SCALE

    def score(self, criterion: Criterion) -> float:
        return {
            Criterion.DP: self.dp,
            Criterion.EC: self.ec,
            Criterion.EL: self.el,
            Criterion.ND: self.nd,
            Criterion.NED: self.ned,
        }[criterion]

    def display(self, criterion: Criterion) -> int:
        return {
            Criterion.DP: self.display_dp,
            Criterion.EC: self.display_ec,
            Criterion.EL: self.display_el,
            Criterion.ND: self.display_nd,
            Criterion.NED: self.display_ned,
        }[criterion]

    @staticmethod
    def build(
        scores: tuple[float, float, float, float, float],
        priorities: Priorities,
        previous: "ScoreBreakdown | None" = None,
    ) -> "ScoreBreakdown":
        dp, ec, el, nd, ned = scores
        weights = priorities.as_tuple()
        overall = (
            weights[0] * dp + weights[1] * ec + weights[2] * el
            + weights[3] * nd + weights[4] * ned
        )
        displays = tuple(int(round(s * DISPLAY_SCALE)) for s in scores)
        if previous is None:
            deltas = {c: 0 for c in CRITERIA}
            delta_overall = 0.0
        else:
            deltas = {
                c: d - previous.display(c) for c, d in zip(CRITERIA, displays)
            }
            delta_overall = overall * DISPLAY_SCALE - previous.scaled_overall
        return ScoreBreakdown(
            dp=dp, ec=ec, el=el, nd=nd, ned=ned, overall=overall,
            display_dp=displays[0], display_ec=displays[1], display_el=displays[2],
            display_nd=displays[3], display_ned=displays[4],
            deltas=deltas, delta_overall=delta_overall,
        )


@functools.lru_cache(maxsize=None)
def _simple_path_count(network: Network, cap: int, source_target_only: bool) -> int:
    """Exhaustive DFS count of simple directed paths of length >= 1."""
    index = {n.id: i for i, n in enumerate(network.nodes)}
    out: list[list[int]] = [[] for _ in network.nodes]
    for e in network.edges:
        if e.directed:
            out[index[e.tail]].append(index[e.head])
    is_target = [n.role.value == "target" for n in network.nodes]
    starts = (
        [index[n.id] for n in network.nodes if n.role.value == "source"]
        if source_target_only
        else range(len(network.nodes))
    )
    count = 0
    visited = [False] * len(network.nodes)

    def walk(v: int) -> None:
        nonlocal count
        visited[v] = True
        for u in out[v]:
            if visited[u]:
                continue
            if not source_target_only or is_target[u]:
                count += 1
                if count > cap:
                    raise PathCountCapExceeded(cap)
            walk(u)
        visited[v] = False

    for s in starts:
        walk(s)
    return count


@numba.njit(cache=True)
def _score_kernel(
    x, y, w, h,
    tails, heads,
    dir_tails, dir_heads, out_start, out_edges, order_buf,
    is_source, is_target, restricted,
    pair_i, pair_j,
    connected, incident,
    tan_theta, min_edge_length, penalty,
):
    """One pass over a layout: bounds flag, downward-path count, crossing
    count, edge-length cost sum, and the ND/NED minima sums and counts.

    Scalar loops in fixed index order keep results deterministic; this is the
    single authoritative evaluation path for every score.
    """
    n = x.size
    m = tails.size
    for i in range(n):
        if x[i] < 0.0 or x[i] > w or y[i] < 0.0 or y[i] > h:
            return False, 0, 0, 0.0, 0.0, 0, 0.0, 0

    # downward-edge mask over the directed subset
    nd_edges = dir_tails.size
    down = np.empty(nd_edges, numba.boolean)
    for k in range(nd_edges):
        dx = x[dir_heads[k]] - x[dir_tails[k]]
        dy = y[dir_heads[k]] - y[dir_tails[k]]
        down[k] = (dy > 0.0) and (dy >= tan_theta * abs(dx))

    # count downward paths: process nodes bottom-up (descending y)
    for i in range(n):
        order_buf[i] = i
    # insertion sort on y descending (n is small and nearly sorted runs fast)
    for i in range(1, n):
        v = order_buf[i]
        key = y[v]
        j = i - 1
        while j >= 0 and y[order_buf[j]] < key:
            order_buf[j + 1] = order_buf[j]
            j -= 1
        order_buf[j + 1] = v
    counts = np.zeros(n, np.int64)
    for idx in range(n):
        v = order_buf[idx]
        acc = 0
        for e in range(out_start[v], out_start[v + 1]):
            k = out_edges[e]
            if down[k]:
                u = dir_heads[k]
                if restricted:
                    acc += (1 if is_target[u] else 0) + counts[u]
                else:
                    acc += 1 + counts[u]
        counts[v] = acc
    paths = 0
    for v in range(n):
        if not restricted or is_source[v]:
            paths += counts[v]

    # edge vectors, lengths, and the length-cost sum
    ex = np.empty(m, np.float64)
    ey = np.empty(m, np.float64)
    len_sq = np.empty(m, np.float64)
    cost_sum = 0.0
    for k in range(m):
        ex[k] = x[heads[k]] - x[tails[k]]
        ey[k] = y[heads[k]] - y[tails[k]]
        len_sq[k] = ex[k] * ex[k] + ey[k] * ey[k]
        length = math.sqrt(len_sq[k])
        cost_sum += length if length >= min_edge_length else penalty

    # crossing pairs (proper intersections plus collinear overlaps)
    crossings = 0
    for p in range(pair_i.size):
        i = pair_i[p]
        j = pair_j[p]
        ax = x[tails[i]]; ay = y[tails[i]]
        bx = x[heads[i]]; by = y[heads[i]]
        cx = x[tails[j]]; cy = y[tails[j]]
        dx = x[heads[j]]; dy = y[heads[j]]
        d1 = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
        d2 = (bx - ax) * (dy - ay) - (by - ay) * (dx - ax)
        d3 = (dx - cx) * (ay - cy) - (dy - cy) * (ax - cx)
        d4 = (dx - cx) * (by - cy) - (dy - cy) * (bx - cx)
        if ((d1 > 0) != (d2 > 0)) and d1 != 0 and d2 != 0 \
                and ((d3 > 0) != (d4 > 0)) and d3 != 0 and d4 != 0:
            crossings += 1
        elif d1 == 0 and d2 == 0 and d3 == 0 and d4 == 0:
            ox = min(max(ax, bx), max(cx, dx)) - max(min(ax, bx), min(cx, dx))
            oy = min(max(ay, by), max(cy, dy)) - max(min(ay, by), min(cy, dy))
            if ox >= 0 and oy >= 0 and (ox > 0 or oy > 0):
                crossings += 1

    # node distribution: min distance to an unconnected partner, per node
    nd_sum = 0.0
    nd_count = 0
    for u in range(n):
        best = np.inf
        for v in range(n):
            if not connected[u, v]:
                dxx = x[u] - x[v]
                dyy = y[u] - y[v]
                d2u = dxx * dxx + dyy * dyy
                if d2u < best:
                    best = d2u
        if best < np.inf:
            nd_sum += math.sqrt(best)
            nd_count += 1

    # node-edge separation: min distance to a non-incident edge, per node
    ned_sum = 0.0
    ned_count = 0
    for u in range(n):
        best = np.inf
        for k in range(m):
            if incident[u, k]:
                continue
            px = x[u] - x[tails[k]]
            py = y[u] - y[tails[k]]
            if len_sq[k] == 0.0:
                d2u = px * px + py * py
            else:
                t = (px * ex[k] + py * ey[k]) / len_sq[k]
                if t < 0.0:
                    t = 0.0
                elif t > 1.0:
                    t = 1.0
                ddx = px - t * ex[k]
                ddy = py - t * ey[k]
                d2u = ddx * ddx + ddy * ddy
            if d2u < best:
                best = d2u
        if best < np.inf:
            ned_sum += math.sqrt(best)
            ned_count += 1

    return True, paths, crossings, cost_sum, nd_sum, nd_count, ned_sum, ned_count


class ScoreEngine:
    """Scorer bound to one (network, params, box) triple.

    Node order follows ``network.nodes``; coordinate arrays are (n, 2) float64.
    Static structure (pair indexes, adjacency masks, CSR out-edges) is
    precomputed once; each evaluation is a single compiled pass.
    """

    def __init__(self, network: Network, params: ScoringParams, box: BoundingBox):
        params.validate_for_box(box)
        self.network = network
        self.params = params
        self.box = box
        self.node_ids = tuple(n.id for n in network.nodes)
        self.index = {nid: i for i, nid in enumerate(self.node_ids)}
        n, m = network.n, network.m
        self._tan_theta = downward_slope_threshold(params.theta_min_deg)

        self.edge_ids = tuple(e.id for e in network.edges)
        self.tails = np.array([self.index[e.tail] for e in network.edges], dtype=np.intp)
        self.heads = np.array([self.index[e.head] for e in network.edges], dtype=np.intp)

        dir_idx = [k for k, e in enumerate(network.edges) if e.directed]
        self._d_tails = [int(self.tails[k]) for k in dir_idx]
        self._d_heads = [int(self.heads[k]) for k in dir_idx]
        self._d_tail_arr = np.array(self._d_tails, dtype=np.intp)
        self._d_head_arr = np.array(self._d_heads, dtype=np.intp)
        self._d_out: list[list[int]] = [[] for _ in range(n)]
        for local, tail in enumerate(self._d_tails):
            self._d_out[tail].append(local)
        self._dir_edge_pos = dir_idx
        self._is_source = [nd.role.value == "source" for nd in network.nodes]
        self._is_target = [nd.role.value == "target" for nd in network.nodes]
        self._is_source_arr = np.array(self._is_source, dtype=np.bool_)
        self._is_target_arr = np.array(self._is_target, dtype=np.bool_)
        # CSR adjacency over the directed subset, for the compiled kernel
        out_start = np.zeros(n + 1, dtype=np.intp)
        for tail in self._d_tails:
            out_start[tail + 1] += 1
        out_start = np.cumsum(out_start).astype(np.intp)
        out_edges = np.empty(len(dir_idx), dtype=np.intp)
        cursor = out_start[:-1].copy()
        for local, tail in enumerate(self._d_tails):
            out_edges[cursor[tail]] = local
            cursor[tail] += 1
        self._out_start = out_start
        self._out_edges = out_edges

        pi_, pj_ = [], []
        for i in range(m):
            ei = network.edges[i]
            for j in range(i + 1, m):
                ej = network.edges[j]
                if not (ei.endpoints & ej.endpoints):
                    pi_.append(i)
                    pj_.append(j)
        self._pair_i = np.array(pi_, dtype=np.intp)
        self._pair_j = np.array(pj_, dtype=np.intp)
        self.total_pairs = m * (m - 1) // 2

        conn = np.zeros((n, n), dtype=bool)
        if m:
            conn[self.tails, self.heads] = True
            conn[self.heads, self.tails] = True
        np.fill_diagonal(conn, True)
        self._connected = conn

        incident = np.zeros((n, m), dtype=bool)
        if m:
            incident[self.tails, np.arange(m)] = True
            incident[self.heads, np.arange(m)] = True
        self._incident = incident

        self.degrees = (
            np.bincount(np.concatenate([self.tails, self.heads]), minlength=n)
            if m
            else np.zeros(n, dtype=np.intp)
        )
        self._rho: int | None = None

    # -- coordinate plumbing -------------------------------------------------

    def coords_of(self, layout: Layout) -> np.ndarray:
        layout.require_cover(self.network)
        out = np.empty((len(self.node_ids), 2), dtype=np.float64)
        for i, nid in enumerate(self.node_ids):
            p = layout.positions[nid]
            out[i, 0] = p.x
            out[i, 1] = p.y
        return out

    def layout_of(self, coords: np.ndarray) -> Layout:
        return Layout(
            {nid: Point(float(coords[i, 0]), float(coords[i, 1]))
             for i, nid in enumerate(self.node_ids)},
            self.box,
        )

    def in_bounds(self, coords: np.ndarray) -> bool:
        x, y = coords[:, 0], coords[:, 1]
        return bool(
            (x >= 0).all() and (x <= self.box.w).all()
            and (y >= 0).all() and (y <= self.box.h).all()
        )

    # -- per-criterion machinery ----------------------------------------------

    def downward_edge_mask(self, coords: np.ndarray) -> np.ndarray:
        """Boolean mask over the directed-edge subset, in network edge order."""
        if not self._d_tails:
            return np.zeros(0, dtype=bool)
        dx = coords[self._d_head_arr, 0] - coords[self._d_tail_arr, 0]
        dy = coords[self._d_head_arr, 1] - coords[self._d_tail_arr, 1]
        return (dy > 0) & (dy >= self._tan_theta * np.abs(dx))

    def downward_path_count(self, coords: np.ndarray) -> int:
        """Count directed paths made entirely of downward edges.

        Per node, paths starting there satisfy count(v) = sum over downward
        out-edges (v, u) of 1 + count(u); the graph total sums over all nodes.
        Strictly increasing y along downward edges makes the subgraph acyclic,
        so descending-y order is a valid processing order.
        """
        down = self.downward_edge_mask(coords).tolist()
        order = np.argsort(-coords[:, 1], kind="stable").tolist()
        return self._count_on_mask(down, order)

    def _count_on_mask(self, down: list[bool], order: list[int]) -> int:
        heads = self._d_heads
        restricted = self.params.source_target_only
        counts = [0] * len(self.node_ids)
        for v in order:
            acc = 0
            for k in self._d_out[v]:
                if down[k]:
                    u = heads[k]
                    if restricted:
                        acc += (1 if self._is_target[u] else 0) + counts[u]
                    else:
                        acc += 1 + counts[u]
            counts[v] = acc
        if restricted:
            return sum(c for c, s in zip(counts, self._is_source) if s)
        return sum(counts)

    def _topo_order(self, down: list[bool]) -> list[int]:
        """Reverse topological order of the active downward subgraph.

        Needed only for counterfactual masks, where y-sorting no longer
        certifies acyclicity. Raises ContractViolation on a cycle.
        """
        n = len(self.node_ids)
        indeg = [0] * n
        for k, active in enumerate(down):
            if active:
                indeg[self._d_heads[k]] += 1
        frontier = [v for v in range(n) if indeg[v] == 0]
        order: list[int] = []
        while frontier:
            v = frontier.pop()
            order.append(v)
            for k in self._d_out[v]:
                if down[k]:
                    u = self._d_heads[k]
                    indeg[u] -= 1
                    if indeg[u] == 0:
                        frontier.append(u)
        if len(order) != n:
            raise ContractViolation("forced downward mask creates a cycle")
        return list(reversed(order))

    def counterfactual_downward_count(
        self, coords: np.ndarray, forced: set[int]
    ) -> int | None:
        """Downward-path count with ``forced`` edges treated as downward.

        Returns None when the union would be cyclic (count undefined).
        """
        down = self.downward_edge_mask(coords).tolist()
        for local in forced:
            down[local] = True
        try:
            order = self._topo_order(down)
        except ContractViolation:
            return None
        return self._count_on_mask(down, order)

    def simple_path_count(self) -> int:
        if self._rho is None:
            self._rho = _simple_path_count(
                self.network, self.params.path_count_cap, self.params.source_target_only
            )
        return self._rho

    def crossing_pair_count(self, coords: np.ndarray) -> int:
        """Number of unordered edge pairs whose open segments cross."""
        mask = self._crossing_mask(coords)
        return 0 if mask is None else int(mask.sum())

    def crossing_pairs(self, coords: np.ndarray) -> list[tuple[int, int]]:
        """Edge-index pairs (i < j, network edge order) that cross."""
        mask = self._crossing_mask(coords)
        if mask is None:
            return []
        return [
            (int(i), int(j))
            for i, j in zip(self._pair_i[mask], self._pair_j[mask])
        ]

    def _crossing_mask(self, coords: np.ndarray) -> np.ndarray | None:
        if self._pair_i.size == 0:
            return None
        x, y = coords[:, 0], coords[:, 1]
        ti, hi = self.tails[self._pair_i], self.heads[self._pair_i]
        tj, hj = self.tails[self._pair_j], self.heads[self._pair_j]
        ax, ay, bx, by = x[ti], y[ti], x[hi], y[hi]
        cx, cy, dx_, dy_ = x[tj], y[tj], x[hj], y[hj]
        d1 = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
        d2 = (bx - ax) * (dy_ - ay) - (by - ay) * (dx_ - ax)
        d3 = (dx_ - cx) * (ay - cy) - (dy_ - cy) * (ax - cx)
        d4 = (dx_ - cx) * (by - cy) - (dy_ - cy) * (bx - cx)
        proper = (
            ((d1 > 0) != (d2 > 0)) & (d1 != 0) & (d2 != 0)
            & ((d3 > 0) != (d4 > 0)) & (d3 != 0) & (d4 != 0)
        )
        collinear = (d1 == 0) & (d2 == 0) & (d3 == 0) & (d4 == 0)
        if collinear.any():
            ox = (
                np.minimum(np.maximum(ax, bx), np.maximum(cx, dx_))
                - np.maximum(np.minimum(ax, bx), np.minimum(cx, dx_))
            )
            oy = (
                np.minimum(np.maximum(ay, by), np.maximum(cy, dy_))
                - np.maximum(np.minimum(ay, by), np.minimum(cy, dy_))
            )
            overlap = (ox >= 0) & (oy >= 0) & ((ox > 0) | (oy > 0))
            return proper | (collinear & overlap)
        return proper

    def edge_lengths(self, coords: np.ndarray) -> np.ndarray:
        return np.hypot(
            coords[self.heads, 0] - coords[self.tails, 0],
            coords[self.heads, 1] - coords[self.tails, 1],
        )

    def node_segment_distances(self, coords: np.ndarray) -> np.ndarray:
        """(n, m) matrix of point-to-segment distances, incident pairs = inf."""
        x, y = coords[:, 0], coords[:, 1]
        ax, ay = x[self.tails], y[self.tails]
        ex = x[self.heads] - ax
        ey = y[self.heads] - ay
        len_sq = ex * ex + ey * ey
        px = x[:, None] - ax[None, :]
        py = y[:, None] - ay[None, :]
        t = (px * ex[None, :] + py * ey[None, :]) / np.where(len_sq == 0, 1.0, len_sq)[None, :]
        t = np.clip(t, 0.0, 1.0)
        dist = np.hypot(px - t * ex[None, :], py - t * ey[None, :])
        dist[self._incident] = np.inf
        return dist

    # -- assembled scores -----------------------------------------------------

    def criterion_scores(self, coords: np.ndarray) -> tuple[float, float, float, float, float]:
        """(dp, ec, el, nd, ned); all zero for out-of-box layouts."""
        x = np.ascontiguousarray(coords[:, 0])
        y = np.ascontiguousarray(coords[:, 1])
        ok, paths, crossings, cost_sum, nd_sum, nd_count, ned_sum, ned_count = _score_kernel(
            x, y, self.box.w, self.box.h,
            self.tails, self.heads,
            self._d_tail_arr, self._d_head_arr, self._out_start, self._out_edges,
            np.empty(len(self.node_ids), dtype=np.intp),
            self._is_source_arr, self._is_target_arr, self.params.source_target_only,
            self._pair_i, self._pair_j,
            self._connected, self._incident,
            self._tan_theta, self.params.min_edge_length, self.params.short_edge_penalty,
        )
        if not ok:
            return (0.0, 0.0, 0.0, 0.0, 0.0)
        m = self.network.m
        diag = self.box.diagonal
        rho = self.simple_path_count()
        dp = paths / rho if rho > 0 else 0.0
        ec = 1.0 if m < 2 else 2.0 * (self.total_pairs - crossings) / (m * (m - 1))
        el = 1.0 if m == 0 else max(0.0, 1.0 - cost_sum / m / diag)
        nd = 0.0 if nd_count == 0 else (nd_sum / nd_count) / diag
        ned = 0.0 if ned_count == 0 else (ned_sum / ned_count) / diag
        return (dp, ec, el, nd, ned)

    def breakdown(
        self, coords: np.ndarray, priorities: Priorities,
        previous: ScoreBreakdown | None = None,
    ) -> ScoreBreakdown:
        return ScoreBreakdown.build(self.criterion_scores(coords), priorities, previous)

    def scaled_overall(self, coords: np.ndarray, priorities: Priorities) -> float:
        """Display-scaled overall score, the annealer's acceptance currency."""
        dp, ec, el, nd, ned = self.criterion_scores(coords)
        w = priorities.as_tuple()
        return (w[0] * dp + w[1] * ec + w[2] * el + w[3] * nd + w[4] * ned) * DISPLAY_SCALE


@functools.lru_cache(maxsize=64)
def engine_for(network: Network, params: ScoringParams, box: BoundingBox) -> ScoreEngine:
    return ScoreEngine(network, params, box)


def _engine(network: Network, layout: Layout, params: ScoringParams | None) -> ScoreEngine:
    return engine_for(network, params or ScoringParams(), layout.box)


# -- public operations --------------------------------------------------------


def count_downward_paths(
    network: Network, layout: Layout, params: ScoringParams | None = None
) -> int:
    eng = _engine(network, layout, params)
    return eng.downward_path_count(eng.coords_of(layout))


def count_simple_paths(network: Network, params: ScoringParams | None = None) -> int:
    params = params or ScoringParams()
    return _simple_path_count(network, params.path_count_cap, params.source_target_only)


def dp_score(network: Network, layout: Layout, params: ScoringParams | None = None) -> float:
    eng = _engine(network, layout, params)
    return eng.criterion_scores(eng.coords_of(layout))[0]


def ec_score(network: Network, layout: Layout) -> float:
    eng = _engine(network, layout, None)
    return eng.criterion_scores(eng.coords_of(layout))[1]


def el_score(network: Network, layout: Layout, params: ScoringParams | None = None) -> float:
    eng = _engine(network, layout, params)
    return eng.criterion_scores(eng.coords_of(layout))[2]


def nd_score(network: Network, layout: Layout) -> float:
    eng = _engine(network, layout, None)
    return eng.criterion_scores(eng.coords_of(layout))[3]


def ned_score(network: Network, layout: Layout) -> float:
    eng = _engine(network, layout, None)
    return eng.criterion_scores(eng.coords_of(layout))[4]


def overall_score(
    network: Network,
    layout: Layout,
    priorities: Priorities | None = None,
    params: ScoringParams | None = None,
    previous: ScoreBreakdown | None = None,
) -> ScoreBreakdown:
    eng = _engine(network, layout, params)
    return eng.breakdown(eng.coords_of(layout), priorities or Priorities(), previous)
