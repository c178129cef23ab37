import random

import pytest

from pvertex.errors import UnbalancedParts
from pvertex.families import complete_bipartite, cycle, grid, path, star
from pvertex.graph import Bipartition, Graph, bipartition, pendant_edges
from pvertex.matching import maximum_matching
from pvertex.structure import (
    TriangularOrdering,
    antenna_vertex,
    is_balanced,
    pendant_reduce,
    triangular_ordering,
)

from conftest import biadjacency_graph, figure1, triangular_bruteforce

# Figure-2 graph: Figure-1 with 1-based vertices 1 and 7 removed
FIGURE2 = figure1().remove_vertices((0, 6))


def test_antenna_examples():
    assert antenna_vertex(star(3)) == 0
    assert antenna_vertex(cycle(6)) is None
    g2, ids = FIGURE2
    a = antenna_vertex(g2)
    assert ids[a] == 5  # 1-based vertex 6, adjacent to pendants 11 and 12


def test_pendant_reduce_figure1():
    tr = pendant_reduce(figure1())
    assert tr.removed == ((6, 0),)
    assert tr.reason == "Antenna" and tr.antenna == 5
    g2, ids = FIGURE2
    assert tr.terminal == g2 and list(tr.terminal_ids) == ids


def test_pendant_reduce_paths():
    tr = pendant_reduce(path(2))
    assert tr.removed == ((0, 1),) and tr.reason == "Empty" and tr.terminal.n == 0
    tr = pendant_reduce(path(4))
    assert tr.removed == ((0, 1), (2, 3)) and tr.reason == "Empty"


def test_pendant_reduce_reason_holds():
    rng = random.Random(21)
    for _ in range(300):
        n = rng.randint(1, 9)
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.3]
        tr = pendant_reduce(Graph(n, edges))
        t = tr.terminal
        if tr.reason == "Empty":
            assert t.n == 0
        elif tr.reason == "Antenna":
            assert antenna_vertex(t) is not None and tr.terminal_ids[antenna_vertex(t)] == tr.antenna
        else:
            assert pendant_edges(t) == [] and antenna_vertex(t) is None


def test_balance_examples():
    assert is_balanced(complete_bipartite(3, 3), bipartition(complete_bipartite(3, 3)))
    assert not is_balanced(complete_bipartite(2, 3), bipartition(complete_bipartite(2, 3)))
    bp = bipartition(grid(3, 3))
    assert (len(bp.part_x), len(bp.part_y)) == (5, 4)
    assert not is_balanced(grid(3, 3), bp)


def test_triangular_examples():
    g = Graph(6, [(0, 3), (1, 4), (2, 5)])
    bp = Bipartition((0, 1, 2), (3, 4, 5))
    t = triangular_ordering(g, bp)
    assert t is not None and t.is_valid(g, bp)
    for n in range(2, 5):
        kb = complete_bipartite(n, n)
        assert triangular_ordering(kb, bipartition(kb)) is None
    # a1..a3 = 0..2, b1..b3 = 3..5
    g = Graph(6, [(0, 3), (0, 4), (1, 4), (1, 5), (2, 5)])
    t = triangular_ordering(g, bp)
    assert t.is_valid(g, bp)
    assert t.biadjacency(g) == [[1, 1, 0], [0, 1, 1], [0, 0, 1]]
    with pytest.raises(UnbalancedParts):
        triangular_ordering(star(2), bipartition(star(2)))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_triangular_agrees_with_bruteforce(k):
    xs, ys = tuple(range(k)), tuple(range(k, 2 * k))
    bp = Bipartition(xs, ys)
    for mask in range(1 << (k * k)):
        g = biadjacency_graph(k, mask)
        got = triangular_ordering(g, bp)
        assert (got is not None) == triangular_bruteforce(g, xs, ys)
        if got is not None:
            assert got.is_valid(g, bp)


def test_triangular_with_matching_has_full_diagonal():
    k = 3
    bp = Bipartition((0, 1, 2), (3, 4, 5))
    for mask in range(1 << 9):
        g = biadjacency_graph(k, mask)
        t = triangular_ordering(g, bp)
        if t is None or not maximum_matching(g, bp).covers(g.n):
            continue
        d = t.biadjacency(g)
        assert all(d[i][i] for i in range(k))


def test_exhaustive_fallback_on_larger_parts():
    # 5+5 upper-triangular pattern, hidden by a shuffle
    rng = random.Random(4)
    rows, cols = list(range(5)), list(range(5, 10))
    edges = [(rows[i], cols[j]) for i in range(5) for j in range(i, 5) if j == i or rng.random() < 0.5]
    perm = list(range(10))
    rng.shuffle(perm)
    g = Graph(10, edges).relabel(perm)
    bp = Bipartition(tuple(sorted(perm[r] for r in rows)), tuple(sorted(perm[c] for c in cols)))
    t = triangular_ordering(g, bp)
    assert isinstance(t, TriangularOrdering) and t.is_valid(g, bp)
