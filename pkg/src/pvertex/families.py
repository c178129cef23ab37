"""Named graph families and the threaded-union graph operations.

Canonical numbering, per family:

* path / cycle: ``0..n-1`` in order along the path or cycle.
* complete-bipartite K(m, n): part X is ``0..m-1``, part Y is ``m..m+n-1``.
* hypercube Q(n): a vertex's id is its binary code.
* grid G(m, n): row-major, ``(i, j) -> i*n + j`` with ``m`` rows.
* gen-petersen P(n, k): outer ``u_i -> i``, inner ``v_i -> n + i``.
* lollipop L(m, n): clique ``0..m-1``; path ``m..m+n-1``; bridge ``0 - m``.
* gen-barbell B(m, n, l): clique ``0..m-1``, clique ``m..m+n-1``, then the
  ``l - 1`` interior path vertices; the path runs ``m-1 -> ... -> m``.
* barbell B(n) = B(n, n, 1).
* star K(1, k): centre ``0``.
* corona G o K_t: base vertices keep their ids; the copy of K_t hanging at
  base vertex ``i`` is ``n + i*t .. n + i*t + t - 1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Mapping, Optional, Sequence

from .errors import (
    BadBailVertex,
    BailBudgetExceeded,
    InvalidAssignment,
    ParameterOutOfRange,
    SizeMismatch,
)
from .graph import Graph, _norm, disjoint_union

FAMILIES = (
    "path", "cycle", "complete", "complete-bipartite", "hypercube", "grid",
    "gen-petersen", "lollipop", "barbell", "gen-barbell", "corona", "star",
)


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: tuple = ()
    base: Optional[Graph] = None  # corona only


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise ParameterOutOfRange(msg)


def path(n: int) -> Graph:
    _need(n >= 1, f"path needs n >= 1, got {n}")
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    _need(n >= 3, f"cycle needs n >= 3, got {n}")
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def complete(n: int) -> Graph:
    _need(n >= 1, f"complete graph needs n >= 1, got {n}")
    return Graph(n, combinations(range(n), 2))


def complete_bipartite(m: int, n: int) -> Graph:
    _need(m >= 1 and n >= 1, f"complete bipartite needs m, n >= 1, got {m}, {n}")
    return Graph(m + n, ((i, m + j) for i in range(m) for j in range(n)))


def star(k: int) -> Graph:
    _need(k >= 1, f"star needs k >= 1, got {k}")
    return complete_bipartite(1, k)


def hypercube(n: int) -> Graph:
    _need(n >= 1, f"hypercube needs n >= 1, got {n}")
    size = 1 << n
    return Graph(size, ((v, v ^ (1 << b)) for v in range(size) for b in range(n) if v < v ^ (1 << b)))


def grid(m: int, n: int) -> Graph:
    _need(m >= 1 and n >= 1, f"grid needs m, n >= 1, got {m}, {n}")
    edges = []
    for i in range(m):
        for j in range(n):
            v = i * n + j
            if j + 1 < n:
                edges.append((v, v + 1))
            if i + 1 < m:
                edges.append((v, v + n))
    return Graph(m * n, edges)


def gen_petersen(n: int, k: int) -> Graph:
    _need(n >= 3 and 1 <= k <= (n - 1) // 2, f"P(n, k) needs n >= 3 and 1 <= k <= (n-1)/2, got {n}, {k}")
    edges = []
    for i in range(n):
        edges.append((i, (i + 1) % n))
        edges.append((n + i, n + (i + k) % n))
        edges.append((i, n + i))
    return Graph(2 * n, {_norm(u, v) for u, v in edges})


def lollipop(m: int, n: int) -> Graph:
    _need(m >= 3 and n >= 1, f"lollipop needs m >= 3 and n >= 1, got {m}, {n}")
    edges = list(combinations(range(m), 2))
    edges.append((0, m))
    edges.extend((m + i, m + i + 1) for i in range(n - 1))
    return Graph(m + n, edges)


def gen_barbell(m: int, n: int, l: int) -> Graph:
    _need(m >= 1 and n >= 1 and l >= 1, f"gen-barbell needs m, n, l >= 1, got {m}, {n}, {l}")
    edges = list(combinations(range(m), 2))
    edges.extend(combinations(range(m, m + n), 2))
    chain = [m - 1] + list(range(m + n, m + n + l - 1)) + [m]
    edges.extend(zip(chain, chain[1:]))
    return Graph(m + n + l - 1, edges)


def barbell(n: int) -> Graph:
    _need(n >= 1, f"barbell needs n >= 1, got {n}")
    return gen_barbell(n, n, 1)


def corona(base: Graph, t: int) -> Graph:
    _need(t >= 1, f"corona needs t >= 1, got {t}")
    n = base.n
    edges = list(base.edges)
    for i in range(n):
        copy = range(n + i * t, n + (i + 1) * t)
        edges.extend(combinations(copy, 2))
        edges.extend((i, c) for c in copy)
    return Graph(n * (t + 1), edges)


_BUILDERS = {
    "path": (path, 1),
    "cycle": (cycle, 1),
    "complete": (complete, 1),
    "complete-bipartite": (complete_bipartite, 2),
    "hypercube": (hypercube, 1),
    "grid": (grid, 2),
    "gen-petersen": (gen_petersen, 2),
    "lollipop": (lollipop, 2),
    "barbell": (barbell, 1),
    "gen-barbell": (gen_barbell, 3),
    "star": (star, 1),
}


def generate(spec: FamilySpec) -> Graph:
    if spec.family == "corona":
        _need(spec.base is not None and len(spec.params) == 1, "corona takes a base graph and t")
        return corona(spec.base, *spec.params)
    if spec.family not in _BUILDERS:
        raise ParameterOutOfRange(f"unknown family {spec.family!r}")
    fn, arity = _BUILDERS[spec.family]
    _need(len(spec.params) == arity, f"{spec.family} takes {arity} parameter(s), got {len(spec.params)}")
    return fn(*(int(p) for p in spec.params))


# -- threaded unions ----------------------------------------------------------

def block_offsets(graphs: Sequence[Graph]) -> list[int]:
    out, total = [], 0
    for g in graphs:
        out.append(total)
        total += g.n
    return out


def threaded_union(h: Graph, comps: Sequence[tuple[Graph, int]]) -> Graph:
    """Disjoint union of the components, plus an edge between bail vertices
    for every edge of ``h``. Component ``i`` occupies a contiguous block of
    ids in input order."""
    if len(comps) != h.n:
        raise SizeMismatch(f"base graph has {h.n} vertices but {len(comps)} components given")
    for i, (g, bail) in enumerate(comps):
        if not 0 <= bail < g.n:
            raise BadBailVertex(f"bail {bail} not a vertex of component {i}")
    union, offsets = disjoint_union(g for g, _ in comps)
    extra = [(offsets[i] + comps[i][1], offsets[j] + comps[j][1]) for i, j in h.edges]
    return Graph(union.n, list(union.edges) + extra)


def generalized_threaded_union(
    h: Graph,
    comps: Sequence[tuple[Graph, Sequence[int]]],
    assignment: Mapping[tuple[int, int], tuple[int, int]],
) -> Graph:
    """Threaded union where component ``i`` exposes a bail set; for each base
    edge ``(i, j)`` with ``i < j``, ``assignment[(i, j)] = (b_i, b_j)`` picks
    the bail in each endpoint component joined by that edge."""
    if len(comps) != h.n:
        raise SizeMismatch(f"base graph has {h.n} vertices but {len(comps)} components given")
    for i, (g, bails) in enumerate(comps):
        bails = set(bails)
        if not 1 <= len(bails) <= max(1, h.degree(i)):
            raise BailBudgetExceeded(
                f"component {i} has {len(bails)} bails but base degree {h.degree(i)}"
            )
        if any(not 0 <= b < g.n for b in bails):
            raise BadBailVertex(f"bail set of component {i} has an out-of-range vertex")
    keys = {_norm(*k) for k in assignment}
    if keys != set(h.edges) or len(keys) != len(assignment):
        raise InvalidAssignment("assignment must cover exactly the base edges")
    union, offsets = disjoint_union(g for g, _ in comps)
    extra = []
    for (i, j), (bi, bj) in assignment.items():
        if i > j:
            i, j, bi, bj = j, i, bj, bi
        if bi not in set(comps[i][1]) or bj not in set(comps[j][1]):
            raise InvalidAssignment(f"edge ({i}, {j}) uses a vertex outside the bail sets")
        extra.append((offsets[i] + bi, offsets[j] + bj))
    return Graph(union.n, list(union.edges) + extra)
