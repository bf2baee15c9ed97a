"""Graph and layout data model.

All types are immutable values; "mutation" means building a new value.
Screen convention throughout: y grows downward, so "below" means larger y.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping

import numpy as np

from .errors import ContractViolation, DocumentError

DEFAULT_BOX_W = 5000.0
DEFAULT_BOX_H = 6000.0


class NodeRole(enum.Enum):
    SOURCE = "source"
    TARGET = "target"
    INTERNAL = "internal"


@dataclass(frozen=True)
class Node:
    id: str
    role: NodeRole = NodeRole.INTERNAL
    label: str | None = None


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str
    directed: bool

    @property
    def endpoints(self) -> frozenset[str]:
        return frozenset((self.tail, self.head))


@dataclass(frozen=True)
class BoundingBox:
    w: float = DEFAULT_BOX_W
    h: float = DEFAULT_BOX_H

    def __post_init__(self):
        if not (self.w > 0 and self.h > 0):
            raise ContractViolation(f"bounding box must be positive, got {self.w}x{self.h}")

    @property
    def diagonal(self) -> float:
        return math.sqrt(self.w * self.w + self.h * self.h)


@dataclass(frozen=True)
class Point:
    x: float
    y: float


@dataclass(frozen=True)
class Network:
    """Typed graph with unique node ids and no parallel duplicate edges.

    Undirected edges are canonicalized to tail <= head so iteration order and
    serialized form are deterministic.
    """

    id: str
    nodes: tuple[Node, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        node_ids = [n.id for n in self.nodes]
        if len(set(node_ids)) != len(node_ids):
            dup = sorted({i for i in node_ids if node_ids.count(i) > 1})
            raise DocumentError("duplicate node id", context=dup[0])
        known = set(node_ids)
        seen_edge_ids: set[str] = set()
        seen_pairs: set[tuple[frozenset[str], bool]] = set()
        canon = []
        for e in self.edges:
            if e.id in seen_edge_ids:
                raise DocumentError("duplicate edge id", context=e.id)
            seen_edge_ids.add(e.id)
            if e.tail not in known or e.head not in known:
                raise DocumentError("edge endpoint references unknown node", context=e.id)
            if e.tail == e.head:
                raise DocumentError("self-loop rejected", context=e.id)
            key = (e.endpoints, e.directed)
            if key in seen_pairs:
                raise DocumentError("parallel duplicate edge", context=e.id)
            seen_pairs.add(key)
            if not e.directed and e.tail > e.head:
                e = replace(e, tail=e.head, head=e.tail)
            canon.append(e)
        object.__setattr__(self, "edges", tuple(canon))

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def m(self) -> int:
        return len(self.edges)

    def node(self, node_id: str) -> Node:
        for n in self.nodes:
            if n.id == node_id:
                return n
        raise KeyError(node_id)

    def edge(self, edge_id: str) -> Edge:
        for e in self.edges:
            if e.id == edge_id:
                return e
        raise KeyError(edge_id)

    def degree(self, node_id: str) -> int:
        return sum(1 for e in self.edges if node_id in (e.tail, e.head))


@dataclass(frozen=True)
class Layout:
    """Positions for every node of one network, inside a fixed box."""

    positions: Mapping[str, Point]
    box: BoundingBox = field(default_factory=BoundingBox)

    def __post_init__(self):
        object.__setattr__(self, "positions", dict(self.positions))
        for nid, p in self.positions.items():
            if not (math.isfinite(p.x) and math.isfinite(p.y)):
                raise ContractViolation(f"non-finite coordinate for node {nid!r}")

    def moved(self, node_id: str, point: Point) -> "Layout":
        if node_id not in self.positions:
            raise KeyError(node_id)
        pos = dict(self.positions)
        pos[node_id] = point
        return Layout(pos, self.box)

    def covers(self, network: Network) -> bool:
        return set(self.positions) == {n.id for n in network.nodes}

    def require_cover(self, network: Network) -> None:
        if not self.covers(network):
            missing = {n.id for n in network.nodes} - set(self.positions)
            extra = set(self.positions) - {n.id for n in network.nodes}
            raise DocumentError(
                "layout does not cover network nodes",
                context=f"missing={sorted(missing)} extra={sorted(extra)}",
            )


def random_layout(network: Network, box: BoundingBox | None = None, seed: int = 0) -> Layout:
    """Uniform in-box starting layout, deterministic per seed."""
    box = box or BoundingBox()
    rng = np.random.default_rng(seed)
    pos = {}
    for node in network.nodes:
        pos[node.id] = Point(float(rng.uniform(0, box.w)), float(rng.uniform(0, box.h)))
    return Layout(pos, box)


def network_from_edges(
    net_id: str,
    edges: Iterable[tuple[str, str] | tuple[str, str, bool]],
    roles: Mapping[str, NodeRole] | None = None,
) -> Network:
    """Convenience builder used by tests and fixture generators.

    Edges default to directed; a third tuple element overrides.
    """
    roles = roles or {}
    edge_list = []
    node_ids: dict[str, None] = {}
    for i, entry in enumerate(edges):
        tail, head = entry[0], entry[1]
        directed = entry[2] if len(entry) > 2 else True
        node_ids.setdefault(tail)
        node_ids.setdefault(head)
        edge_list.append(Edge(id=f"e{i}", tail=tail, head=head, directed=bool(directed)))
    nodes = tuple(
        Node(id=nid, role=roles.get(nid, NodeRole.INTERNAL)) for nid in sorted(node_ids)
    )
    return Network(id=net_id, nodes=nodes, edges=tuple(edge_list))
