"""Structural reductions and recognisers: antennas, the pendant-reduction
pipeline, balance, and triangular orderings of bipartite graphs."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import UnbalancedParts
from .graph import Bipartition, Graph, pendant_edges

EXHAUSTIVE_LIMIT = 8


def antenna_vertex(g: Graph) -> Optional[int]:
    """Smallest vertex with at least two degree-1 neighbours."""
    for v in range(g.n):
        if sum(1 for w in g.adj[v] if g.degree(w) == 1) >= 2:
            return v
    return None


@dataclass(frozen=True)
class ReductionTrace:
    """Outcome of repeated pendant-edge deletion.

    ``removed`` and ``antenna`` use the input graph's vertex ids;
    ``terminal`` is renumbered and ``terminal_ids[k]`` is the input id of
    its vertex ``k``.
    """

    removed: tuple
    terminal: Graph
    terminal_ids: tuple
    reason: str  # "PendantFree" | "Antenna" | "Empty"
    antenna: Optional[int] = None

    def to_json(self) -> dict:
        return {
            "removed": [list(e) for e in self.removed],
            "terminal": {
                "n": self.terminal.n,
                "edges": [[self.terminal_ids[u], self.terminal_ids[v]] for u, v in self.terminal.sorted_edges()],
                "vertices": list(self.terminal_ids),
            },
            "reason": self.reason,
            "antenna": self.antenna,
        }


def pendant_reduce(g: Graph) -> ReductionTrace:
    """Delete the pendant edge with the smallest pendant id, together with
    both endpoints, until the graph is empty, has an antenna, or has no
    pendant edge."""
    current = g
    ids = list(range(g.n))
    removed = []
    while True:
        if current.n == 0:
            return ReductionTrace(tuple(removed), current, tuple(ids), "Empty")
        a = antenna_vertex(current)
        if a is not None:
            return ReductionTrace(tuple(removed), current, tuple(ids), "Antenna", ids[a])
        pend = pendant_edges(current)
        if not pend:
            return ReductionTrace(tuple(removed), current, tuple(ids), "PendantFree")
        u, v = pend[0]
        removed.append((ids[u], ids[v]))
        current, keep = current.remove_vertices((u, v))
        ids = [ids[k] for k in keep]


def is_balanced(g: Graph, bp: Bipartition) -> bool:
    return len(bp.part_x) == len(bp.part_y)


@dataclass(frozen=True)
class TriangularOrdering:
    row_order: tuple
    col_order: tuple

    def biadjacency(self, g: Graph) -> list[list[int]]:
        return [[int(g.has_edge(a, b)) for b in self.col_order] for a in self.row_order]

    def is_valid(self, g: Graph, bp: Bipartition) -> bool:
        if sorted(self.row_order) != sorted(bp.part_x) or sorted(self.col_order) != sorted(bp.part_y):
            return False
        m = self.biadjacency(g)
        return all(m[i][j] == 0 for i in range(len(m)) for j in range(i))


def _greedy(g: Graph, bp: Bipartition) -> Optional[TriangularOrdering]:
    rows_left = set(bp.part_x)
    cols_left = set(bp.part_y)
    rows: list[int] = []
    cols: list[int] = []
    while rows_left:
        cand = None
        for a in sorted(rows_left):
            if sum(1 for b in g.adj[a] if b in cols_left) <= 1:
                cand = a
                break
        if cand is None:
            return None
        live = [b for b in g.adj[cand] if b in cols_left]
        b = live[0] if live else min(cols_left)
        rows.append(cand)
        cols.append(b)
        rows_left.discard(cand)
        cols_left.discard(b)
    return TriangularOrdering(tuple(reversed(rows)), tuple(reversed(cols)))


def _columns_for(g: Graph, bp: Bipartition, row_order) -> Optional[tuple]:
    """Column order making the biadjacency upper triangular for a fixed row
    order: column ``b`` must sit at or after its lowest neighbouring row."""
    n = len(row_order)
    pos = {a: i for i, a in enumerate(row_order)}
    need = {b: max((pos[a] for a in g.adj[b] if a in pos), default=0) for b in bp.part_y}
    ranked = sorted(bp.part_y, key=lambda b: (-need[b], b))
    cols = [None] * n
    for slot, b in zip(range(n - 1, -1, -1), ranked):
        if slot < need[b]:
            return None
        cols[slot] = b
    return tuple(cols)


def _prefix_ok(need: dict, n: int) -> bool:
    counts = sorted(need.values(), reverse=True)
    return all(r <= n - 1 - k for k, r in enumerate(counts))


def _exhaustive(g: Graph, bp: Bipartition) -> Optional[TriangularOrdering]:
    n = len(bp.part_x)
    xs = sorted(bp.part_x)

    def extend(prefix: list[int], need: dict) -> Optional[list[int]]:
        if len(prefix) == n:
            return prefix
        p = len(prefix)
        for a in xs:
            if a in prefix:
                continue
            new_need = dict(need)
            for b in g.adj[a]:
                new_need[b] = max(new_need[b], p)
            if _prefix_ok(new_need, n):
                got = extend(prefix + [a], new_need)
                if got is not None:
                    return got
        return None

    rows = extend([], {b: 0 for b in bp.part_y})
    if rows is None:
        return None
    cols = _columns_for(g, bp, rows)
    return TriangularOrdering(tuple(rows), cols) if cols is not None else None


def triangular_ordering(g: Graph, bp: Bipartition) -> Optional[TriangularOrdering]:
    """Orderings of the two parts making the biadjacency upper triangular.

    Tries a greedy peel from the bottom row first; any answer is validated.
    When the greedy fails and each part has at most EXHAUSTIVE_LIMIT
    vertices, a pruned search over row orders settles the question.
    """
    if len(bp.part_x) != len(bp.part_y):
        raise UnbalancedParts(f"parts of size {len(bp.part_x)} and {len(bp.part_y)}")
    got = _greedy(g, bp)
    if got is not None and got.is_valid(g, bp):
        return got
    if len(bp.part_x) <= EXHAUSTIVE_LIMIT:
        got = _exhaustive(g, bp)
        if got is not None and got.is_valid(g, bp):
            return got
    return None
