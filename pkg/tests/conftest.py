import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from layoutlab.model import BoundingBox, Layout, Point, network_from_edges

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def fixture_dir() -> Path:
    return FIXTURE_DIR


@pytest.fixture
def chain3():
    """a -> b -> c laid out straight down; every edge downward."""
    net = network_from_edges("chain3", [("a", "b"), ("b", "c")])
    layout = Layout(
        {"a": Point(100, 0), "b": Point(100, 300), "c": Point(100, 600)},
        BoundingBox(),
    )
    return net, layout


@pytest.fixture
def cycle3():
    """Directed 3-cycle with a on top, b in the middle, c at the bottom."""
    net = network_from_edges("cycle3", [("a", "b"), ("b", "c"), ("c", "a")])
    layout = Layout(
        {"a": Point(100, 0), "b": Point(100, 500), "c": Point(100, 1000)},
        BoundingBox(),
    )
    return net, layout
