import itertools
import os
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

from coarsen.graph import Graph, from_edge_list

HERE = Path(__file__).parent
FIXTURE_DATA = HERE / "data"


def complete(n):
    return from_edge_list(n, itertools.combinations(range(n), 2))


def cycle(n):
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def path(n):
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def star(leaves):
    return from_edge_list(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


# Clique depth example: centre M with neighbours A1, A2 (a triangle) plus two
# pendants so M has the top degree; B closes a second triangle with A1, A2
# but sits two hops from M.
M, A1, A2, B, C1, C2 = range(6)
DEPTH_EXAMPLE = from_edge_list(6, [(M, A1), (M, A2), (A1, A2), (B, A1), (B, A2), (M, C1), (M, C2)])

# Loop length example: triangle at A (0,1,2), triangle at B (3,4,5), and the
# 4-loop 1-4-5-2 joining them.
LOOP_EXAMPLE = from_edge_list(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (1, 4), (2, 5)])

# Position gadgets: square 0-1-2-3 with pendant A=4 on node 0 and pendant B=5
# on a neighbouring square node (1) or the opposite one (2).
_SQUARE = [(0, 1), (1, 2), (2, 3), (0, 3), (0, 4)]
GADGET_ADJACENT = from_edge_list(6, _SQUARE + [(1, 5)])
GADGET_DIAGONAL = from_edge_list(6, _SQUARE + [(2, 5)])

TWO_TRIANGLES = from_edge_list(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])


def named_fixtures():
    return {
        "K3": complete(3),
        "K4": complete(4),
        "K5": complete(5),
        "C5": cycle(5),
        "C6": cycle(6),
        "C7": cycle(7),
        "P4": path(4),
        "S3": star(3),
        "empty5": Graph(5, np.zeros((0, 2))),
        "depth_example": DEPTH_EXAMPLE,
        "loop_example": LOOP_EXAMPLE,
        "gadget_adjacent": GADGET_ADJACENT,
        "gadget_diagonal": GADGET_DIAGONAL,
        "two_triangles": TWO_TRIANGLES,
    }


def random_graph(rng, n, p):
    iu, ju = np.triu_indices(n, 1)
    keep = rng.random(len(iu)) < p
    return Graph(n, np.stack([iu[keep], ju[keep]], axis=1))


def random_partition_groups(rng, n, max_groups=None):
    k = rng.integers(1, (max_groups or n) + 1) if n else 0
    labels = rng.integers(0, max(k, 1), size=n)
    groups = [np.flatnonzero(labels == i).tolist() for i in range(max(k, 1))]
    return [grp for grp in groups if grp]


@st.composite
def graphs(draw, max_nodes=12, features=False):
    n = draw(st.integers(0, max_nodes))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    feats = None
    if features:
        feats = draw(
            st.lists(
                st.lists(st.integers(-5, 5), min_size=2, max_size=2),
                min_size=n,
                max_size=n,
            )
        )
        feats = np.array(feats, dtype=float).reshape(n, 2)
    return from_edge_list(n, chosen, features=feats)


@pytest.fixture
def fixture_data():
    return FIXTURE_DATA


def data_root():
    return Path(os.environ.get("COARSEN_DATA", HERE.parent / "data"))


# one line per acceptance criterion, printed after the run
ACCEPTANCE: dict[str, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE, key=lambda k: (len(k), k)):
            terminalreporter.write_line(ACCEPTANCE[key])
