"""Criterion-specific clues: small node/edge subsets worth the player's focus.

Every generator is a deterministic function of (network, layout, params);
ties break lexicographically so repeated requests return the same clue.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import Layout, Network
from .scoring import Criterion, ScoringParams, engine_for

DP_CLUE_MAX_PATH_EDGES = 6


@dataclass(frozen=True)
class Clue:
    criterion: Criterion
    node_ids: tuple[str, ...]
    edge_ids: tuple[str, ...]
    expected_gain: float | None = None
    rationale: str = ""


def dp_clue(
    network: Network,
    layout: Layout,
    params: ScoringParams | None = None,
    max_path_edges: int = DP_CLUE_MAX_PATH_EDGES,
) -> Clue | None:
    """A directed path whose reorientation is guaranteed to add downward paths.

    The guarantee is counterfactual: the path's edges are treated as downward
    while every other edge keeps its current downward status. Candidates whose
    forced orientation would make the downward subgraph cyclic are skipped
    (no node placement can realize them). Returns the candidate with the
    largest gain; ties prefer fewer non-downward edges, then lexicographically
    smaller node sequences.
    """
    params = params or ScoringParams()
    engine = engine_for(network, params, layout.box)
    coords = engine.coords_of(layout)
    down = engine.downward_edge_mask(coords).tolist()
    if all(down):
        return None
    base = engine.downward_path_count(coords)

    n = len(engine.node_ids)
    out: list[list[int]] = engine._d_out
    heads = engine._d_heads
    best_key: tuple | None = None
    best: tuple[list[int], list[int], int] | None = None  # nodes, edges, gain

    def consider(node_path: list[int], edge_path: list[int]) -> None:
        nonlocal best_key, best
        upward = sum(1 for k in edge_path if not down[k])
        if upward == 0:
            return
        counter = engine.counterfactual_downward_count(coords, set(edge_path))
        if counter is None:
            return
        gain = counter - base
        if gain <= 0:
            return
        ids = tuple(engine.node_ids[v] for v in node_path)
        key = (-gain, upward, ids)
        if best_key is None or key < best_key:
            best_key = key
            best = (list(node_path), list(edge_path), gain)

    def extend(node_path: list[int], edge_path: list[int], on_path: set[int]) -> None:
        consider(node_path, edge_path)
        if len(edge_path) >= max_path_edges:
            return
        for k in out[node_path[-1]]:
            u = heads[k]
            if u in on_path:
                continue
            node_path.append(u)
            edge_path.append(k)
            on_path.add(u)
            extend(node_path, edge_path, on_path)
            node_path.pop()
            edge_path.pop()
            on_path.remove(u)

    for start in range(n):
        for k in out[start]:
            u = heads[k]
            extend([start, u], [k], {start, u})

    if best is None:
        return None
    node_path, edge_path, gain = best
    return Clue(
        criterion=Criterion.DP,
        node_ids=tuple(engine.node_ids[v] for v in node_path),
        edge_ids=tuple(engine.edge_ids[engine._dir_edge_pos[k]] for k in edge_path),
        expected_gain=float(gain),
        rationale="reorient-path",
    )


def ec_clue(network: Network, layout: Layout) -> Clue | None:
    """The crossing edge pair whose four endpoints have the smallest total degree."""
    engine = engine_for(network, ScoringParams(), layout.box)
    coords = engine.coords_of(layout)
    crossings = engine.crossing_pairs(coords)
    if not crossings:
        return None

    def key(pair: tuple[int, int]) -> tuple:
        i, j = pair
        deg = (
            int(engine.degrees[engine.tails[i]]) + int(engine.degrees[engine.heads[i]])
            + int(engine.degrees[engine.tails[j]]) + int(engine.degrees[engine.heads[j]])
        )
        ids = tuple(sorted((engine.edge_ids[i], engine.edge_ids[j])))
        return (deg, ids)

    i, j = min(crossings, key=key)
    first, second = sorted((i, j), key=lambda k: engine.edge_ids[k])
    e1, e2 = network.edges[first], network.edges[second]
    return Clue(
        criterion=Criterion.EC,
        node_ids=(e1.tail, e1.head, e2.tail, e2.head),
        edge_ids=(e1.id, e2.id),
        rationale="untangle-crossing",
    )


def el_clue(
    network: Network, layout: Layout, params: ScoringParams | None = None
) -> Clue | None:
    """The edge contributing the largest length cost (too short beats too long)."""
    params = params or ScoringParams()
    engine = engine_for(network, params, layout.box)
    if network.m == 0:
        return None
    coords = engine.coords_of(layout)
    lengths = engine.edge_lengths(coords)
    costs = np.where(lengths >= params.min_edge_length, lengths, params.short_edge_penalty)
    top = float(costs.max())
    candidates = [k for k in range(network.m) if costs[k] == top]
    worst = min(candidates, key=lambda k: engine.edge_ids[k])
    edge = network.edges[worst]
    short = lengths[worst] < params.min_edge_length
    return Clue(
        criterion=Criterion.EL,
        node_ids=(edge.tail, edge.head),
        edge_ids=(edge.id,),
        rationale="lengthen-short-edge" if short else "shorten-long-edge",
    )


def nd_clue(network: Network, layout: Layout) -> Clue | None:
    """The globally closest unconnected node pair."""
    engine = engine_for(network, ScoringParams(), layout.box)
    coords = engine.coords_of(layout)
    x, y = coords[:, 0], coords[:, 1]
    dist = np.hypot(x[:, None] - x[None, :], y[:, None] - y[None, :])
    dist[engine._connected] = np.inf
    dist[np.tril_indices(network.n)] = np.inf
    if not np.isfinite(dist).any():
        return None
    closest = dist.min()
    pairs = np.argwhere(dist == closest)
    ids = min(
        tuple(sorted((engine.node_ids[i], engine.node_ids[j]))) for i, j in pairs
    )
    return Clue(
        criterion=Criterion.ND,
        node_ids=ids,
        edge_ids=(),
        rationale="spread-close-pair",
    )


def ned_clue(network: Network, layout: Layout) -> Clue | None:
    """The globally closest (node, non-incident edge) pair."""
    engine = engine_for(network, ScoringParams(), layout.box)
    if network.m == 0:
        return None
    coords = engine.coords_of(layout)
    dist = engine.node_segment_distances(coords)
    if not np.isfinite(dist).any():
        return None
    closest = dist.min()
    hits = np.argwhere(dist == closest)
    node_idx, edge_idx = min(
        ((int(i), int(k)) for i, k in hits),
        key=lambda t: (engine.node_ids[t[0]], engine.edge_ids[t[1]]),
    )
    edge = network.edges[edge_idx]
    return Clue(
        criterion=Criterion.NED,
        node_ids=(engine.node_ids[node_idx],),
        edge_ids=(edge.id,),
        rationale="separate-node-from-edge",
    )


def clue_for(
    criterion: Criterion,
    network: Network,
    layout: Layout,
    params: ScoringParams | None = None,
    dp_max_path_edges: int = DP_CLUE_MAX_PATH_EDGES,
) -> Clue | None:
    if criterion is Criterion.DP:
        return dp_clue(network, layout, params, max_path_edges=dp_max_path_edges)
    if criterion is Criterion.EC:
        return ec_clue(network, layout)
    if criterion is Criterion.EL:
        return el_clue(network, layout, params)
    if criterion is Criterion.ND:
        return nd_clue(network, layout)
    return ned_clue(network, layout)
