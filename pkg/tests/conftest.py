"""Shared fixtures and independent reference oracles.

The oracles deliberately avoid the package's own algorithms: determinants by
cofactor expansion, matchings by permutation search, bridges by deletion,
triangularity by trying every ordering pair.
"""
from fractions import Fraction
from itertools import permutations, product

import pytest

from pvertex.graph import Graph, connected_components

# Figure-1 graph, 1-based as drawn; vertex 7 is the lone pendant
FIGURE1_EDGES_1BASED = [
    (1, 7), (1, 8), (1, 9), (1, 11), (1, 12), (2, 8), (2, 9), (3, 9), (3, 10),
    (4, 9), (4, 10), (5, 9), (5, 10), (6, 10), (6, 11), (6, 12),
]


def figure1() -> Graph:
    return Graph(12, [(a - 1, b - 1) for a, b in FIGURE1_EDGES_1BASED])


@pytest.fixture
def figure1_graph():
    return figure1()


def cofactor_det(rows):
    rows = [list(map(Fraction, r)) for r in rows]
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return rows[0][0]
    total = Fraction(0)
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        total += (-1) ** j * rows[0][j] * cofactor_det(minor)
    return total


def has_pm_bruteforce(g: Graph) -> bool:
    """Perfect matching by trying every pairing of part X with part Y."""
    if g.n % 2:
        return False
    verts = list(range(g.n))

    def rec(left):
        if not left:
            return True
        v = left[0]
        for w in left[1:]:
            if g.has_edge(v, w) and rec([x for x in left if x not in (v, w)]):
                return True
        return False

    return rec(verts)


def bridges_bruteforce(g: Graph) -> set:
    base = len(connected_components(g))
    return {e for e in g.edges if len(connected_components(g.remove_edges([e]))) > base}


def triangular_bruteforce(g: Graph, xs, ys) -> bool:
    for rows in permutations(xs):
        for cols in permutations(ys):
            if all(not g.has_edge(rows[i], cols[j]) for i in range(len(rows)) for j in range(i)):
                return True
    return False


def biadjacency_graph(k: int, mask: int) -> Graph:
    """Bipartite graph with X = 0..k-1, Y = k..2k-1, edge (i, k+j) iff bit
    ``i*k + j`` of ``mask`` is set."""
    return Graph(2 * k, [(i, k + j) for i, j in product(range(k), range(k)) if mask >> (i * k + j) & 1])


def pytest_configure(config):
    config._acceptance_lines = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
