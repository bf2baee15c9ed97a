import math

import pytest

from layoutlab.errors import ContractViolation, DocumentError
from layoutlab.model import (
    BoundingBox,
    Edge,
    Layout,
    Network,
    Node,
    Point,
    network_from_edges,
    random_layout,
)


def net_of(*edges: Edge) -> Network:
    ids = sorted({e.tail for e in edges} | {e.head for e in edges})
    return Network(id="t", nodes=tuple(Node(id=i) for i in ids), edges=tuple(edges))


class TestNetworkInvariants:
    def test_duplicate_directed_pair_rejected(self):
        with pytest.raises(DocumentError, match="parallel duplicate"):
            net_of(
                Edge(id="e0", tail="a", head="b", directed=True),
                Edge(id="e1", tail="a", head="b", directed=True),
            )

    def test_antiparallel_directed_pair_rejected(self):
        # one directed edge per unordered endpoint pair
        with pytest.raises(DocumentError, match="parallel duplicate"):
            net_of(
                Edge(id="e0", tail="a", head="b", directed=True),
                Edge(id="e1", tail="b", head="a", directed=True),
            )

    def test_directed_and_undirected_between_same_pair_allowed(self):
        net = net_of(
            Edge(id="e0", tail="a", head="b", directed=True),
            Edge(id="e1", tail="a", head="b", directed=False),
        )
        assert net.m == 2

    def test_undirected_edges_canonicalized(self):
        net = net_of(Edge(id="e0", tail="z", head="a", directed=False))
        assert (net.edges[0].tail, net.edges[0].head) == ("a", "z")

    def test_directed_orientation_preserved(self):
        net = net_of(Edge(id="e0", tail="z", head="a", directed=True))
        assert (net.edges[0].tail, net.edges[0].head) == ("z", "a")

    def test_degree_counts_both_roles(self):
        net = network_from_edges("d", [("a", "b"), ("b", "c"), ("a", "c", False)])
        assert net.degree("a") == 2
        assert net.degree("b") == 2
        assert net.degree("c") == 2


class TestLayout:
    def test_nonfinite_coordinates_rejected(self):
        with pytest.raises(ContractViolation, match="finite"):
            Layout({"a": Point(math.nan, 0)}, BoundingBox())

    def test_moved_returns_new_value(self):
        lay = Layout({"a": Point(1, 2)}, BoundingBox())
        moved = lay.moved("a", Point(3, 4))
        assert lay.positions["a"] == Point(1, 2)
        assert moved.positions["a"] == Point(3, 4)

    def test_moved_unknown_node_rejected(self):
        lay = Layout({"a": Point(1, 2)}, BoundingBox())
        with pytest.raises(KeyError):
            lay.moved("b", Point(0, 0))

    def test_cover_check(self):
        net = network_from_edges("c", [("a", "b")])
        lay = Layout({"a": Point(0, 0)}, BoundingBox())
        assert not lay.covers(net)
        with pytest.raises(DocumentError, match="cover"):
            lay.require_cover(net)

    def test_random_layout_is_in_box_and_seeded(self):
        net = network_from_edges("r", [("a", "b"), ("b", "c")])
        one = random_layout(net, seed=9)
        two = random_layout(net, seed=9)
        assert one.positions == two.positions
        for p in one.positions.values():
            assert 0 <= p.x <= 5000 and 0 <= p.y <= 6000

    def test_degenerate_box_rejected(self):
        with pytest.raises(ContractViolation):
            BoundingBox(0, 100)
