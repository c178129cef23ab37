import networkx as nx
import pytest

from pvertex.errors import (
    BadBailVertex,
    BailBudgetExceeded,
    InvalidAssignment,
    ParameterOutOfRange,
    SizeMismatch,
)
from pvertex.families import (
    FamilySpec,
    complete,
    corona,
    cycle,
    gen_barbell,
    gen_petersen,
    generalized_threaded_union,
    generate,
    grid,
    hypercube,
    path,
    star,
    threaded_union,
)
from pvertex.graph import Graph, bipartition, is_connected


def _nx(g):
    ng = nx.Graph(list(g.edges))
    ng.add_nodes_from(range(g.n))
    return ng


def test_generate_examples():
    g = generate(FamilySpec("gen-petersen", (8, 3)))
    assert (g.n, g.m) == (16, 24)
    assert set(g.degrees()) == {3} and bipartition(g) is not None
    for l in range(1, 8):
        b = generate(FamilySpec("gen-barbell", (2, 2, l)))
        assert nx.is_isomorphic(_nx(b), _nx(path(l + 3)))
    assert generate(FamilySpec("hypercube", (1,))) == path(2)


def test_families_match_networkx():
    assert nx.is_isomorphic(_nx(hypercube(4)), nx.hypercube_graph(4))
    assert nx.is_isomorphic(_nx(grid(4, 3)), nx.grid_2d_graph(4, 3))
    assert nx.is_isomorphic(_nx(gen_petersen(5, 2)), nx.petersen_graph())
    assert nx.is_isomorphic(_nx(generate(FamilySpec("barbell", (4,)))), nx.barbell_graph(4, 0))
    assert nx.is_isomorphic(_nx(generate(FamilySpec("lollipop", (4, 3)))), nx.lollipop_graph(4, 3))


def test_canonical_numbering():
    g = grid(2, 3)
    assert g.has_edge(0, 1) and g.has_edge(0, 3) and not g.has_edge(2, 3)
    q = hypercube(3)
    assert q.has_edge(0b101, 0b100) and not q.has_edge(0b101, 0b110)
    p = gen_petersen(5, 2)
    assert p.has_edge(0, 5) and p.has_edge(5, 7)
    b = gen_barbell(3, 4, 2)
    assert b.has_edge(2, 7) and b.has_edge(7, 3)


def test_hypercube_and_grid_invariants():
    for d in range(1, 7):
        q = hypercube(d)
        assert q.n == 2 ** d and set(q.degrees()) == {d} and bipartition(q) is not None
    for m in range(1, 7):
        for n in range(1, 7):
            assert bipartition(grid(m, n)) is not None


@pytest.mark.parametrize("base", [path(3), cycle(4), star(3), complete(4)])
@pytest.mark.parametrize("t", [1, 2, 3])
def test_corona_invariants(base, t):
    g = corona(base, t)
    assert g.n == base.n * (t + 1)
    for v in range(base.n):
        assert g.degree(v) == base.degree(v) + t


def test_parameter_errors():
    for spec in [FamilySpec("cycle", (2,)), FamilySpec("gen-petersen", (6, 3)), FamilySpec("path", (0,)),
                 FamilySpec("nope", (1,)), FamilySpec("grid", (2,))]:
        with pytest.raises(ParameterOutOfRange):
            generate(spec)


def test_threaded_union_examples():
    g1, g2 = complete(3), path(3)
    assert threaded_union(path(2), [(g1, 2), (g2, 0)]) == Graph(6, list(g1.edges) + [(3, 4), (4, 5), (2, 3)])
    # triangle, cherry centred at its bail, triangle, over P_3
    cherry = Graph(3, [(0, 1), (0, 2)])
    g = threaded_union(path(3), [(complete(3), 0), (cherry, 0), (complete(3), 0)])
    assert g == Graph(9, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (6, 7), (6, 8), (7, 8), (0, 3), (3, 6)])
    assert threaded_union(cycle(5), [(Graph(1), 0)] * 5) == cycle(5)


def test_threaded_union_counts():
    comps = [(complete(4), 1), (cycle(5), 3), (path(2), 0), (star(3), 2)]
    h = Graph(4, [(0, 1), (1, 2), (1, 3)])
    g = threaded_union(h, comps)
    assert g.n == sum(c.n for c, _ in comps)
    assert g.m == sum(c.m for c, _ in comps) + h.m
    assert is_connected(g)


def test_threaded_union_errors():
    with pytest.raises(SizeMismatch):
        threaded_union(path(2), [(path(2), 0)])
    with pytest.raises(BadBailVertex):
        threaded_union(path(2), [(path(2), 0), (path(2), 2)])


def test_generalized_reduces_to_plain():
    comps = [(complete(3), 1), (path(4), 0), (cycle(4), 2)]
    h = path(3)
    plain = threaded_union(h, comps)
    assign = {(0, 1): (1, 0), (1, 2): (0, 2)}
    assert generalized_threaded_union(h, [(g, [b]) for g, b in comps], assign) == plain


def test_generalized_star_with_three_bails():
    centre = path(4)
    leaves = [complete(3)] * 3
    comps = [(centre, [0, 1, 3])] + [(k, [0]) for k in leaves]
    assign = {(0, 1): (0, 0), (0, 2): (1, 0), (0, 3): (3, 0)}
    g = generalized_threaded_union(star(3), comps, assign)
    assert g.n == 13 and g.m == 3 + 9 + 3
    assert g.has_edge(0, 4) and g.has_edge(1, 7) and g.has_edge(3, 10)


def test_generalized_paths_join_to_longer_path():
    g = generalized_threaded_union(path(2), [(path(3), [2]), (path(3), [0])], {(0, 1): (2, 0)})
    assert g == path(6)


def test_generalized_errors():
    with pytest.raises(BailBudgetExceeded):
        generalized_threaded_union(path(2), [(path(3), [0, 2]), (path(2), [0])], {(0, 1): (0, 0)})
    with pytest.raises(InvalidAssignment):
        generalized_threaded_union(path(2), [(path(3), [0]), (path(2), [0])], {(0, 1): (1, 0)})
    with pytest.raises(InvalidAssignment):
        generalized_threaded_union(path(2), [(path(3), [0]), (path(2), [0])], {})
