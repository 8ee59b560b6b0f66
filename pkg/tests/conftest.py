import itertools
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bergesat.hypergraph import make_graph  # noqa: E402


def complete_graph(n):
    return make_graph(n, itertools.combinations(range(n), 2))


def cycle(n):
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n):
    return make_graph(n, [(i, i + 1) for i in range(n - 1)])


def star(leaves):
    return make_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


P2 = path(2)
P3 = path(3)
P4 = path(4)
P5 = path(5)
K3 = complete_graph(3)
K4 = complete_graph(4)
K5 = complete_graph(5)
K6 = complete_graph(6)
C4 = cycle(4)
C9 = cycle(9)
K13 = star(3)
TWO_K3 = make_graph(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)])
THREE_K3 = make_graph(9, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (6, 7), (6, 8), (7, 8)])


@pytest.fixture
def small_patterns():
    return {"P3": P3, "K3": K3, "C4": C4, "K13": K13}
