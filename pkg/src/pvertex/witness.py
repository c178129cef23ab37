"""Exact witness constructions.

Complete graphs and bipartite graphs with a perfect matching get closed-form
witnesses; threaded unions are assembled block by block from component
witnesses using two determinant-preserving gluing steps (a single coupling
across a bridge, and a three-way closure around a triangle of components).
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Mapping, Optional, Sequence

from .errors import (
    ComponentTooSmall,
    InvalidAssignment,
    NoConsecutiveSingletons,
    NotPerfect,
    NotTreeCycleBlock,
    ParameterOutOfRange,
    SizeMismatch,
    UnverifiedInput,
    ZeroCoupling,
)
from .families import block_offsets, complete, generalized_threaded_union
from .graph import (
    Bipartition,
    Graph,
    _norm,
    bridges,
    connected_components,
    cycle_blocks,
    is_tree_cycle_block,
)
from .linalg import (
    RatMatrix,
    Verification,
    _bareiss_det,
    as_rational,
    block_diag,
    inverse,
    rational_str,
    verify_property_P,
)
from .matching import Matching, check_bipartition


@dataclass(frozen=True)
class Witness:
    matrix: RatMatrix
    graph: Graph
    verification: Verification

    @classmethod
    def build(cls, matrix: RatMatrix, graph: Graph) -> "Witness":
        """Verify ``matrix`` against ``graph`` and wrap it; raises
        UnverifiedInput if it does not certify the property."""
        ver = verify_property_P(matrix, graph)
        if not ver.has_property_p:
            raise UnverifiedInput(
                f"matrix fails verification (det {rational_str(ver.determinant)}, "
                f"{ver.p_vertex_count}/{ver.n} vanishing minors)"
            )
        return cls(matrix, graph, ver)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def det(self) -> Fraction:
        return self.verification.determinant

    def is_valid(self) -> bool:
        return self.verification.has_property_p and self.matrix.n == self.graph.n

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "entries": self.matrix.to_strings(),
            "det": rational_str(self.det),
            "minors": [rational_str(x) for x in self.verification.minors],
        }


EMPTY_WITNESS = Witness(RatMatrix.zeros(0), Graph(0), Verification(Fraction(1), (), 0))


def _require(w: Witness, name: str = "witness") -> None:
    if not isinstance(w, Witness) or not w.is_valid():
        raise UnverifiedInput(f"{name} does not carry a passing verification")


def _check_c(c) -> Fraction:
    c = as_rational(c)
    if c == 0:
        raise ZeroCoupling("coupling weight must be nonzero")
    return c


# -- closed-form families -----------------------------------------------------

def complete_witness(n: int) -> Witness:
    """Diagonal ``2 - n``, off-diagonal ``1``; determinant ``(1 - n)^(n - 1)``."""
    if n < 2:
        raise ParameterOutOfRange(f"complete witness needs n >= 2, got {n}")
    a = 2 - n
    m = RatMatrix([[a if i == j else 1 for j in range(n)] for i in range(n)], cols=n)
    return Witness.build(m, complete(n))


def _biadjacency_weights(rows, cols, edges, weight) -> list[list[int]]:
    return [[weight(x, y) if _norm(x, y) in edges else 0 for y in cols] for x in rows]


def bipartite_pm_witness(g: Graph, bp: Bipartition, m: Matching) -> Witness:
    """``[[0, D], [D^T, 0]]`` with ``D`` a nonsingular weighting of the
    biadjacency matrix; its inverse has zero diagonal blocks."""
    check_bipartition(g, bp)
    xs, ys = set(bp.part_x), set(bp.part_y)
    pairs = [(x, y) if x in xs else (y, x) for x, y in m.pairs]
    if (
        len(pairs) * 2 != g.n
        or any(not g.has_edge(x, y) for x, y in pairs)
        or {x for x, _ in pairs} != xs
        or {y for _, y in pairs} != ys
    ):
        raise NotPerfect("matching is not a perfect matching of the graph")
    if g.n == 0:
        return EMPTY_WITNESS
    rows = [x for x, _ in sorted(pairs)]
    cols = [y for _, y in sorted(pairs)]  # matching sits on the diagonal of D
    matched = {_norm(x, y) for x, y in pairs}
    k = len(rows)

    # a bare matching is already a permutation matrix; weight 2 only
    # matters once other edges compete with it
    heavy = 2 if g.m > k else 1
    d = _biadjacency_weights(rows, cols, g.edges, lambda x, y: heavy if _norm(x, y) in matched else 1)
    if _bareiss_det(d) == 0:
        rng = random.Random(g.n * 7919 + g.m)
        for _ in range(16):
            d = _biadjacency_weights(rows, cols, g.edges, lambda x, y: rng.randint(1, 2 * g.n * g.n))
            if _bareiss_det(d) != 0:
                break
        else:
            t = factorial(k) + 1
            rank = {x: i + 1 for i, x in enumerate(rows)}
            d = _biadjacency_weights(
                rows, cols, g.edges,
                lambda x, y: t ** rank[x] if _norm(x, y) in matched else 1,
            )
    a = [[0] * g.n for _ in range(g.n)]
    for i, x in enumerate(rows):
        for j, y in enumerate(cols):
            a[x][y] = a[y][x] = d[i][j]
    return Witness.build(RatMatrix(a, cols=g.n), g)


# -- gluing steps --------------------------------------------------------------

def _bridge_matrix(m1: RatMatrix, m2: RatMatrix, i: int, j: int, c: Fraction) -> RatMatrix:
    n1 = m1.n
    rows = block_diag([m1, m2]).tolist()
    rows[i][n1 + j] = rows[n1 + j][i] = c
    return RatMatrix(rows, cols=n1 + m2.n)


def _too_small(*ws: Witness) -> None:
    for k, w in enumerate(ws, 1):
        if w.n <= 1:
            raise ComponentTooSmall(f"component {k} has order {w.n}; need at least 2")


def thread_bridge(w1: Witness, w2: Witness, i: int, j: int, c=1) -> Witness:
    """Join two witnesses by the single edge ``(i, n1 + j)`` carrying ``c``.

    The result has determinant ``det(M1) * det(M2)``.
    """
    _require(w1, "first witness")
    _require(w2, "second witness")
    c = _check_c(c)
    _too_small(w1, w2)
    if not (0 <= i < w1.n and 0 <= j < w2.n):
        raise SizeMismatch("bail vertex out of range")
    n1 = w1.n
    g = Graph(n1 + w2.n, list(w1.graph.edges) + [(u + n1, v + n1) for u, v in w2.graph.edges] + [(i, n1 + j)])
    return Witness.build(_bridge_matrix(w1.matrix, w2.matrix, i, j, c), g)


def _triangle_matrix(b1: RatMatrix, m3: RatMatrix, v2: int, u_pos: int, w: int, c: Fraction) -> RatMatrix:
    nb = b1.n
    rows = block_diag([b1, m3]).tolist()
    rows[v2][nb + w] = rows[nb + w][v2] = c
    rows[u_pos][nb + w] = rows[nb + w][u_pos] = c
    return RatMatrix(rows, cols=nb + m3.n)


def close_triangle(w1: Witness, w2: Witness, w3: Witness, v1: int, v2: int, u: int, w: int, c=1) -> Witness:
    """Glue three witnesses along the edges ``(v1, u)``, ``(u, w)`` and
    ``(v2, w)``; ``v1`` and ``v2`` live in the first graph and may coincide.

    Vertex order of the result is G1, G2, G3. Determinant is
    ``det(M1) * det(M2) * det(M3)``.
    """
    for k, x in enumerate((w1, w2, w3), 1):
        _require(x, f"witness {k}")
    c = _check_c(c)
    _too_small(w1, w2, w3)
    if not (0 <= v1 < w1.n and 0 <= v2 < w1.n and 0 <= u < w2.n and 0 <= w < w3.n):
        raise SizeMismatch("attachment vertex out of range")
    n1, n2 = w1.n, w2.n
    b1 = _bridge_matrix(w1.matrix, w2.matrix, v1, u, c)
    m = _triangle_matrix(b1, w3.matrix, v2, n1 + u, w, c)
    edges = list(w1.graph.edges)
    edges += [(a + n1, b + n1) for a, b in w2.graph.edges]
    edges += [(a + n1 + n2, b + n1 + n2) for a, b in w3.graph.edges]
    edges += [(v1, n1 + u), (n1 + u, n1 + n2 + w), (v2, n1 + n2 + w)]
    return Witness.build(m, Graph(n1 + n2 + w3.n, edges))


def pendant_lift(g: Graph, u: int, v: int, rest: Witness, rest_ids: Sequence[int]) -> Witness:
    """Witness for ``g`` given one for ``g - {u, v}`` where ``u`` is a pendant
    vertex hanging at ``v``.

    With ``b`` the 0/1 vector of ``v``'s other neighbours and ``M`` the rest
    witness, put ``1`` on ``(u, v)`` and ``d = b^T M^{-1} b`` at ``(v, v)``.
    The Schur complement of ``M`` on ``{u, v}`` is then ``[[0, 1], [1, 0]]``,
    whose inverse has zero diagonal, and the ``M`` block of the inverse is
    ``M^{-1}`` again, so every diagonal entry of the inverse vanishes.
    """
    _require(rest, "rest witness")
    if g.adj[u] != (v,):
        raise ParameterOutOfRange(f"vertex {u} is not a pendant at {v}")
    if len(rest_ids) != rest.n:
        raise SizeMismatch("rest ids do not match the rest witness")
    pos = {x: k for k, x in enumerate(rest_ids)}
    b = [Fraction(0)] * rest.n
    for x in g.adj[v]:
        if x != u:
            b[pos[x]] = Fraction(1)
    if rest.n:
        minv = inverse(rest.matrix)
        d = sum(
            (b[i] * minv[i, j] * b[j] for i in range(rest.n) for j in range(rest.n) if b[i] and b[j]),
            Fraction(0),
        )
    else:
        d = Fraction(0)
    a = [[Fraction(0)] * g.n for _ in range(g.n)]
    a[u][v] = a[v][u] = Fraction(1)
    a[v][v] = d
    for k, x in enumerate(rest_ids):
        if b[k]:
            a[v][x] = a[x][v] = b[k]
        for l, y in enumerate(rest_ids):
            a[x][y] = rest.matrix[k, l]
    return Witness.build(RatMatrix(a, cols=g.n), g)


def embed_components(g: Graph, parts: Sequence[tuple[Witness, Sequence[int]]]) -> Witness:
    """Block-diagonal witness for a disconnected ``g`` from witnesses of its
    components; ``parts[k] = (witness, ids)`` with ``ids`` the vertices of
    ``g`` the component occupies, in the witness's order."""
    order = [x for _, ids in parts for x in ids]
    if sorted(order) != list(range(g.n)):
        raise SizeMismatch("component ids do not partition the vertex set")
    big = block_diag([w.matrix for w, _ in parts])
    where = {x: k for k, x in enumerate(order)}
    return Witness.build(big.reorder([where[v] for v in range(g.n)]), g)


# -- threaded-union assembly --------------------------------------------------

@dataclass(frozen=True)
class ThreadSpec:
    """A base graph and one ``(graph, witness, bail)`` triple per base vertex.

    ``bail`` is a vertex id for a plain threaded union or a collection of
    ids (a bail set) for a generalized one.
    """

    base: Graph
    components: tuple
    c: Fraction = Fraction(1)


@dataclass
class _Part:
    """A partially assembled matrix plus where each (component, vertex) sits."""

    matrix: RatMatrix
    pos: dict

    @property
    def n(self) -> int:
        return self.matrix.n


def _leaf(k: int, w: Witness) -> _Part:
    return _Part(w.matrix, {(k, v): v for v in range(w.n)})


def _join(p1: _Part, p2: _Part, a, b, c: Fraction) -> _Part:
    m = _bridge_matrix(p1.matrix, p2.matrix, p1.pos[a], p2.pos[b], c)
    pos = dict(p1.pos)
    pos.update({key: p1.n + x for key, x in p2.pos.items()})
    return _Part(m, pos)


def _triangle(p1: _Part, p2: _Part, p3: _Part, v1, v2, u, w, c: Fraction) -> _Part:
    b1 = _join(p1, p2, v1, u, c)
    m = _triangle_matrix(b1.matrix, p3.matrix, b1.pos[v2], b1.pos[u], p3.pos[w], c)
    pos = dict(b1.pos)
    pos.update({key: b1.n + x for key, x in p3.pos.items()})
    return _Part(m, pos)


def _attach(assignment, i: int, j: int) -> tuple:
    """``((i, bail_i), (j, bail_j))`` for the base edge ``(i, j)``."""
    if i < j:
        bi, bj = assignment[(i, j)]
    else:
        bj, bi = assignment[(j, i)]
    return (i, bi), (j, bj)


def _rotate_cycle(cyc: list[int], assignment) -> Optional[list[int]]:
    """Rotate (or reflect) a base cycle so its 2nd and 3rd vertices each
    meet both of their cycle edges at one vertex; None if impossible."""
    m = len(cyc)
    for seq in (cyc, [cyc[0]] + cyc[:0:-1]):
        for s in range(m):
            r = seq[s:] + seq[:s]
            ok = True
            for k in (1, 2):
                left = _attach(assignment, r[k], r[k - 1])[0]
                right = _attach(assignment, r[k], r[(k + 1) % m])[0]
                if left != right:
                    ok = False
            if ok:
                return r
    return None


def _assemble(h: Graph, witnesses: Sequence[Witness], assignment, c: Fraction) -> RatMatrix:
    if not h.n or not is_tree_cycle_block_safe(h):
        raise NotTreeCycleBlock("base graph is not a connected tree-cycle block graph")
    if h.n == 1:
        return witnesses[0].matrix
    _too_small(*witnesses)
    leaves = [_leaf(k, w) for k, w in enumerate(witnesses)]
    unit_of = list(range(h.n))
    units: dict[int, _Part] = {}
    for cyc in cycle_blocks(h):
        r = _rotate_cycle(cyc, assignment)
        if r is None:
            raise NoConsecutiveSingletons(f"no two consecutive single-bail components on base cycle {cyc}")
        m = len(r)
        # path r[3], r[4], ..., r[m-1], r[0] glued by single couplings
        chain = r[3:] + [r[0]]
        part = leaves[chain[0]]
        for a, b in zip(chain, chain[1:]):
            ea, eb = _attach(assignment, a, b)
            part = _join(part, leaves[b], ea, eb, c)
        v1, u = _attach(assignment, r[0], r[1])
        _, w = _attach(assignment, r[1], r[2])
        _, v2 = _attach(assignment, r[2], r[3 % m])
        part = _triangle(part, leaves[r[1]], leaves[r[2]], v1, v2, u, w, c)
        head = min(r)
        for x in r:
            unit_of[x] = head
        units[head] = part
    for x in range(h.n):
        if unit_of[x] == x and x not in units:
            units[x] = leaves[x]
    # glue units across the base bridges, breadth-first from vertex 0
    bridge_list = sorted(bridges(h))
    done = {unit_of[0]}
    part = units[unit_of[0]]
    frontier = True
    while frontier:
        frontier = False
        for a, b in bridge_list:
            ua, ub = unit_of[a], unit_of[b]
            if (ua in done) == (ub in done):
                continue
            if ub in done:
                a, b, ua, ub = b, a, ub, ua
            ea, eb = _attach(assignment, a, b)
            part = _join(part, units[ub], ea, eb, c)
            done.add(ub)
            frontier = True
    offsets = block_offsets([w.graph for w in witnesses])
    order = [None] * part.n
    for (k, v), x in part.pos.items():
        order[offsets[k] + v] = x
    return part.matrix.reorder(order)


def is_tree_cycle_block_safe(h: Graph) -> bool:
    return len(connected_components(h)) == 1 and is_tree_cycle_block(h)


def _unpack(spec: ThreadSpec):
    comps = list(spec.components)
    if len(comps) != spec.base.n:
        raise SizeMismatch(f"base graph has {spec.base.n} vertices but {len(comps)} components given")
    for k, (g, w, _) in enumerate(comps):
        _require(w, f"component {k} witness")
        if w.graph != g:
            raise UnverifiedInput(f"component {k} witness belongs to a different graph")
    return comps, _check_c(spec.c)


def thread_over(spec: ThreadSpec) -> Witness:
    """Witness for the threaded union of the components over the base."""
    comps, c = _unpack(spec)
    h = spec.base
    assignment = {}
    for i, j in h.edges:
        assignment[(i, j)] = (comps[i][2], comps[j][2])
    g = generalized_threaded_union(h, [(gr, [bail]) for gr, _, bail in comps], assignment)
    return Witness.build(_assemble(h, [w for _, w, _ in comps], assignment, c), g)


def generalized_thread_over(spec: ThreadSpec, assignment: Mapping[tuple[int, int], tuple[int, int]]) -> Witness:
    """Witness for a generalized threaded union; ``assignment`` maps each
    base edge ``(i, j)``, ``i < j``, to the pair of bail vertices it joins."""
    comps, c = _unpack(spec)
    h = spec.base
    g = generalized_threaded_union(h, [(gr, list(bails)) for gr, _, bails in comps], assignment)
    norm = {}
    for (i, j), (bi, bj) in assignment.items():
        norm[(i, j) if i < j else (j, i)] = (bi, bj) if i < j else (bj, bi)
    if set(norm) != set(h.edges):
        raise InvalidAssignment("assignment must cover exactly the base edges")
    return Witness.build(_assemble(h, [w for _, w, _ in comps], norm, c), g)
