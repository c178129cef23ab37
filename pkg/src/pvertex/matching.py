"""Bipartite maximum matching (Hopcroft-Karp) and Hall-violator extraction."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .errors import InvalidBipartition, NotBipartite, UnbalancedParts
from .graph import Bipartition, Graph, bipartition

_INF = float("inf")


@dataclass(frozen=True)
class Matching:
    """Vertex-disjoint edges, each stored as ``(x, y)`` with ``x`` in part X."""

    pairs: tuple

    def __len__(self) -> int:
        return len(self.pairs)

    def mate(self) -> dict[int, int]:
        out = {}
        for x, y in self.pairs:
            out[x] = y
            out[y] = x
        return out

    def covers(self, n: int) -> bool:
        return 2 * len(self.pairs) == n


@dataclass(frozen=True)
class HallViolator:
    s: tuple
    neighborhood: tuple

    def check(self, g: Graph) -> bool:
        """Re-derive N(S) from ``g`` and confirm ``|N(S)| < |S|``."""
        nbhd = sorted({w for v in self.s for w in g.adj[v]})
        return tuple(nbhd) == tuple(self.neighborhood) and len(nbhd) < len(self.s)


def check_bipartition(g: Graph, bp: Bipartition) -> None:
    xs, ys = set(bp.part_x), set(bp.part_y)
    if xs & ys or len(xs) + len(ys) != g.n or (xs | ys) != set(range(g.n)):
        raise InvalidBipartition("parts do not partition the vertex set")
    for u, v in g.edges:
        if (u in xs) == (v in xs):
            raise InvalidBipartition(f"edge ({u}, {v}) lies inside one part")


def _hopcroft_karp(g: Graph, xs: tuple, ys: set) -> dict[int, int]:
    mate: dict[int, int] = {}
    dist: dict[int, float] = {}

    def bfs() -> bool:
        queue = deque()
        for x in xs:
            if x in mate:
                dist[x] = _INF
            else:
                dist[x] = 0
                queue.append(x)
        found = False
        while queue:
            x = queue.popleft()
            for y in g.adj[x]:
                x2 = mate.get(y)
                if x2 is None:
                    found = True
                elif dist[x2] == _INF:
                    dist[x2] = dist[x] + 1
                    queue.append(x2)
        return found

    def dfs(root: int) -> bool:
        # iterative augmenting-path search along the BFS layering
        path = []
        stack = [(root, iter(g.adj[root]))]
        while stack:
            x, it = stack[-1]
            advanced = False
            for y in it:
                x2 = mate.get(y)
                if x2 is None:
                    path.append((x, y))
                    for px, py in path:
                        mate[px] = py
                        mate[py] = px
                    return True
                if dist[x2] == dist[x] + 1:
                    path.append((x, y))
                    stack.append((x2, iter(g.adj[x2])))
                    advanced = True
                    break
            if not advanced:
                dist[x] = _INF
                stack.pop()
                if path:
                    path.pop()
        return False

    while bfs():
        for x in xs:
            if x not in mate:
                dfs(x)
    return mate


def maximum_matching(g: Graph, bp: Bipartition) -> Matching:
    check_bipartition(g, bp)
    mate = _hopcroft_karp(g, bp.part_x, set(bp.part_y))
    pairs = tuple(sorted((x, mate[x]) for x in bp.part_x if x in mate))
    return Matching(pairs)


def _violator_from(g: Graph, bp: Bipartition, m: Matching) -> Optional[HallViolator]:
    mate = m.mate()
    free = [x for x in bp.part_x if x not in mate]
    if not free:
        return None
    # X-vertices reachable from free X-vertices along alternating paths
    reach_x = set(free)
    queue = deque(free)
    while queue:
        x = queue.popleft()
        for y in g.adj[x]:
            x2 = mate.get(y)
            if x2 is not None and x2 not in reach_x:
                reach_x.add(x2)
                queue.append(x2)
    s = tuple(sorted(reach_x))
    nbhd = tuple(sorted({y for x in s for y in g.adj[x]}))
    return HallViolator(s, nbhd)


def hall_violator(g: Graph, bp: Bipartition) -> Optional[HallViolator]:
    """A set S in part X with |N(S)| < |S|, or None if a perfect matching exists."""
    check_bipartition(g, bp)
    if len(bp.part_x) != len(bp.part_y):
        raise UnbalancedParts(f"parts of size {len(bp.part_x)} and {len(bp.part_y)}")
    return _violator_from(g, bp, maximum_matching(g, bp))


def has_perfect_matching(g: Graph) -> bool:
    bp = bipartition(g)
    if bp is None:
        raise NotBipartite("graph has an odd cycle")
    return maximum_matching(g, bp).covers(g.n)
