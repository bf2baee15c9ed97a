#!/usr/bin/env python3
"""Regenerate the synthetic fixture networks under fixtures/.

The three g*-like fixtures mirror the published node/edge counts of the
evaluation networks and their cycle-richness tiers (few / many / very many
directed simple cycles). The real pathway edge lists were never published, so
these are synthetic stand-ins with verified statistics. The construction keeps
the directed part of each cyclic fixture confined to a complete directed core
plus acyclic feeders/drains, which bounds the simple-path count so exhaustive
enumeration stays cheap.

Deterministic: running this script twice produces identical files.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import networkx as nx
import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from layoutlab.model import Edge, Network, Node, NodeRole
from layoutlab.scoring import ScoringParams, count_simple_paths
from layoutlab.storage import NETWORK_SUFFIX, save_network


def directed_cycle_count(network: Network) -> int:
    g = nx.DiGraph()
    g.add_nodes_from(n.id for n in network.nodes)
    g.add_edges_from((e.tail, e.head) for e in network.edges if e.directed)
    return sum(1 for _ in nx.simple_cycles(g))


class Builder:
    def __init__(self, net_id: str):
        self.net_id = net_id
        self.nodes: dict[str, NodeRole] = {}
        self.edges: list[Edge] = []
        self._pairs: set[tuple[frozenset, bool]] = set()

    def node(self, nid: str, role: NodeRole = NodeRole.INTERNAL) -> str:
        self.nodes.setdefault(nid, role)
        return nid

    def has_pair(self, a: str, b: str) -> bool:
        pair = frozenset((a, b))
        return (pair, True) in self._pairs or (pair, False) in self._pairs

    def edge(self, tail: str, head: str, directed: bool = True) -> bool:
        key = (frozenset((tail, head)), directed)
        if tail == head or key in self._pairs:
            return False
        self._pairs.add(key)
        self.node(tail)
        self.node(head)
        self.edges.append(
            Edge(id=f"e{len(self.edges):03d}", tail=tail, head=head, directed=directed)
        )
        return True

    def build(self) -> Network:
        nodes = tuple(
            Node(id=nid, role=role) for nid, role in sorted(self.nodes.items())
        )
        return Network(id=self.net_id, nodes=nodes, edges=tuple(self.edges))


def circulant_tournament_core(b: Builder, prefix: str, size: int) -> list[str]:
    """Odd-size tournament with rotational orientation: maximally cyclic while
    respecting the one-directed-edge-per-pair invariant."""
    assert size % 2 == 1
    core = [b.node(f"{prefix}{i}") for i in range(size)]
    for i in range(size):
        for d in range(1, size // 2 + 1):
            b.edge(core[i], core[(i + d) % size])
    return core


def fill_undirected(b: Builder, rng: np.random.Generator, pool: list[str], target_m: int):
    """Top up with undirected edges among ``pool`` until the edge count is hit."""
    guard = 0
    while len(b.edges) < target_m:
        guard += 1
        if guard > 100_000:
            raise RuntimeError("could not reach target edge count")
        a, c = (pool[int(i)] for i in rng.integers(0, len(pool), 2))
        if a == c or b.has_pair(a, c):
            continue
        b.edge(a, c, directed=False)


def make_g1_like() -> Network:
    """71 nodes / 112 edges / exactly 3 directed simple cycles."""
    rng = np.random.default_rng(101)
    b = Builder("g1_like")
    # Three directed triangles, kept out of the rest of the directed subgraph.
    tri_nodes = []
    for t in range(3):
        a, c, d = (b.node(f"t{t}{k}") for k in "abc")
        b.edge(a, c), b.edge(c, d), b.edge(d, a)
        tri_nodes += [a, c, d]
    # Layered DAG on the remaining 62 nodes.
    layers = [[b.node(f"n{L}{i:02d}") for i in range(width)]
              for L, width in enumerate([8, 10, 11, 11, 11, 11])]
    for nid in layers[0]:
        self_role = NodeRole.SOURCE
        b.nodes[nid] = self_role
    for nid in layers[-1]:
        b.nodes[nid] = NodeRole.TARGET
    dag_nodes = [nid for layer in layers for nid in layer]
    added = 0
    while added < 85:
        li = int(rng.integers(0, len(layers) - 1))
        span = int(rng.integers(1, min(3, len(layers) - li)))
        u = layers[li][int(rng.integers(0, len(layers[li])))]
        v = layers[li + span][int(rng.integers(0, len(layers[li + span])))]
        if b.edge(u, v):
            added += 1
    # Undirected extras may touch anything, including triangle nodes.
    fill_undirected(b, rng, dag_nodes + tri_nodes, 112)
    return b.build()


def make_g2_like() -> Network:
    """69 nodes / 131 edges / thousands of cycles (9-node tournament core)."""
    rng = np.random.default_rng(202)
    b = Builder("g2_like")
    core = circulant_tournament_core(b, "c", 9)
    feeders = [b.node(f"f{i}", NodeRole.SOURCE if i < 3 else NodeRole.INTERNAL)
               for i in range(6)]
    drains = [b.node(f"d{i}", NodeRole.TARGET if i < 3 else NodeRole.INTERNAL)
              for i in range(6)]
    # Acyclic attachments: feeders point into the core, drains out of it.
    for i, f in enumerate(feeders):
        b.edge(f, core[i % len(core)])
    for i, d in enumerate(drains):
        b.edge(core[(i + 3) % len(core)], d)
    periphery = [b.node(f"p{i:02d}") for i in range(48)]
    fill_undirected(b, rng, periphery + feeders + drains + core, 131)
    return b.build()


def make_g3_like() -> Network:
    """58 nodes / 136 edges / tens of thousands of cycles (11-node core)."""
    rng = np.random.default_rng(303)
    b = Builder("g3_like")
    core = circulant_tournament_core(b, "c", 11)
    feeders = [b.node(f"f{i}", NodeRole.SOURCE if i < 2 else NodeRole.INTERNAL)
               for i in range(4)]
    drains = [b.node(f"d{i}", NodeRole.TARGET if i < 2 else NodeRole.INTERNAL)
              for i in range(4)]
    for i, f in enumerate(feeders):
        b.edge(f, core[i])
    for i, d in enumerate(drains):
        b.edge(core[i + 4], d)
    periphery = [b.node(f"p{i:02d}") for i in range(39)]
    fill_undirected(b, rng, periphery + feeders + drains + core, 136)
    return b.build()


def make_cyclerich_small() -> Network:
    """Desk-scale cycle-rich instance: 9-node tournament core, 12 nodes total."""
    b = Builder("cyclerich_small")
    core = circulant_tournament_core(b, "c", 9)
    b.node("p0", NodeRole.SOURCE)
    b.node("p1", NodeRole.TARGET)
    b.node("p2")
    b.edge("p0", core[0])
    b.edge(core[4], "p1")
    b.edge("p2", core[5], directed=False)
    b.edge("p0", "p2", directed=False)
    return b.build()


def make_dag30() -> Network:
    """30-node layered DAG; the annealer-effectiveness fixture."""
    rng = np.random.default_rng(404)
    b = Builder("dag30")
    layers = [[b.node(f"n{L}{i}") for i in range(5)] for L in range(6)]
    for nid in layers[0]:
        b.nodes[nid] = NodeRole.SOURCE
    for nid in layers[-1]:
        b.nodes[nid] = NodeRole.TARGET
    for L in range(5):
        for i, child in enumerate(layers[L + 1]):
            b.edge(layers[L][i], child)  # spine keeps every node reachable
        extra = 0
        while extra < 4:
            u = layers[L][int(rng.integers(0, 5))]
            v = layers[L + 1][int(rng.integers(0, 5))]
            if b.edge(u, v):
                extra += 1
    return b.build()


EXPECTED = {
    "g1_like": dict(n=71, m=112, cycles=3),
    "g2_like": dict(n=69, m=131, cycles=1626),
    "g3_like": dict(n=58, m=136, cycles=36085),
    "cyclerich_small": dict(n=12, m=40, cycles=1626),
    "dag30": dict(n=30, m=45, cycles=0),
}


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--out", type=Path, default=Path(__file__).resolve().parent.parent / "fixtures"
    )
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    for make in (make_g1_like, make_g2_like, make_g3_like, make_cyclerich_small, make_dag30):
        net = make()
        stats = EXPECTED[net.id]
        cycles = directed_cycle_count(net)
        rho = count_simple_paths(net, ScoringParams())
        assert net.n == stats["n"], (net.id, net.n)
        assert net.m == stats["m"], (net.id, net.m)
        assert cycles == stats["cycles"], (net.id, cycles)
        path = args.out / f"{net.id}{NETWORK_SUFFIX}"
        path.write_text(save_network(net))
        print(f"{net.id}: n={net.n} m={net.m} cycles={cycles} simple_paths={rho} -> {path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
