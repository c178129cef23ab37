"""Simple undirected graphs on dense vertex ids and the structural queries
the rest of the package leans on (2-colouring, components, bridges, blocks).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import DisconnectedInput, PropertyPError

Edge = tuple[int, int]


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    Build one with ``Graph(n, edges)``; edges may be given in any order and
    orientation, duplicates are rejected.
    """

    n: int
    edges: frozenset = field(default_factory=frozenset)
    adj: tuple = field(init=False, repr=False, compare=False)

    def __init__(self, n: int, edges: Iterable[Iterable[int]] = ()):
        if n < 0:
            raise PropertyPError(f"vertex count must be >= 0, got {n}")
        seen: set[Edge] = set()
        for e in edges:
            u, v = (int(x) for x in e)
            if u == v:
                raise PropertyPError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise PropertyPError(f"edge ({u}, {v}) out of range for n={n}")
            key = _norm(u, v)
            if key in seen:
                raise PropertyPError(f"duplicate edge {key}")
            seen.add(key)
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for u, v in seen:
            nbrs[u].append(v)
            nbrs[v].append(u)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(seen))
        object.__setattr__(self, "adj", tuple(tuple(sorted(a)) for a in nbrs))

    # -- basic queries -------------------------------------------------
    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self.edges

    @property
    def m(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph, renumbered in increasing order of the old ids.

        Returns the subgraph and ``old_ids`` with ``old_ids[new] = old``.
        """
        old_ids = sorted(set(vertices))
        index = {v: i for i, v in enumerate(old_ids)}
        sub_edges = [
            (index[u], index[v])
            for u, v in self.edges
            if u in index and v in index
        ]
        return Graph(len(old_ids), sub_edges), old_ids

    def remove_vertices(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        drop = set(vertices)
        return self.induced(v for v in range(self.n) if v not in drop)

    def remove_edges(self, edges: Iterable[Edge]) -> "Graph":
        drop = {_norm(*e) for e in edges}
        return Graph(self.n, (e for e in self.edges if e not in drop))

    def relabel(self, perm: list[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return Graph(self.n, ((perm[u], perm[v]) for u, v in self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.sorted_edges()})"


def disjoint_union(graphs: Iterable[Graph]) -> tuple[Graph, list[int]]:
    """Disjoint union; component ``i`` occupies ids ``offsets[i]..``."""
    offsets = []
    edges = []
    total = 0
    for g in graphs:
        offsets.append(total)
        edges.extend((u + total, v + total) for u, v in g.edges)
        total += g.n
    return Graph(total, edges), offsets


@dataclass(frozen=True)
class Bipartition:
    part_x: tuple
    part_y: tuple

    def side(self) -> dict[int, int]:
        s = {v: 0 for v in self.part_x}
        s.update({v: 1 for v in self.part_y})
        return s


def bipartition(g: Graph) -> Optional[Bipartition]:
    """2-colouring of ``g`` or None if an odd cycle exists.

    Each component is coloured by BFS from its smallest vertex, which lands
    in ``part_x``.
    """
    colour = [-1] * g.n
    for s in range(g.n):
        if colour[s] != -1:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if colour[w] == -1:
                    colour[w] = 1 - colour[u]
                    queue.append(w)
                elif colour[w] == colour[u]:
                    return None
    xs = tuple(v for v in range(g.n) if colour[v] == 0)
    ys = tuple(v for v in range(g.n) if colour[v] == 1)
    return Bipartition(xs, ys)


def connected_components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        stack = [s]
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


def bridges(g: Graph) -> set[Edge]:
    """Cut edges via an iterative low-link DFS, O(n + m)."""
    order = [-1] * g.n
    low = [0] * g.n
    found: set[Edge] = set()
    counter = 0
    for root in range(g.n):
        if order[root] != -1:
            continue
        order[root] = low[root] = counter
        counter += 1
        # frames: (vertex, parent, next neighbour index)
        stack = [(root, -1, 0)]
        while stack:
            v, parent, i = stack[-1]
            if i < len(g.adj[v]):
                stack[-1] = (v, parent, i + 1)
                w = g.adj[v][i]
                if order[w] == -1:
                    order[w] = low[w] = counter
                    counter += 1
                    stack.append((w, v, 0))
                elif w != parent:
                    low[v] = min(low[v], order[w])
            else:
                stack.pop()
                if parent != -1:
                    low[parent] = min(low[parent], low[v])
                    if low[v] > order[parent]:
                        found.add(_norm(parent, v))
    return found


def biconnected_blocks(g: Graph) -> list[frozenset]:
    """Edge sets of the biconnected components (blocks) of ``g``.

    Bridges come back as single-edge blocks; isolated vertices have none.
    """
    order = [-1] * g.n
    low = [0] * g.n
    blocks: list[frozenset] = []
    counter = 0
    for root in range(g.n):
        if order[root] != -1:
            continue
        order[root] = low[root] = counter
        counter += 1
        edge_stack: list[Edge] = []
        stack = [(root, -1, 0)]
        while stack:
            v, parent, i = stack[-1]
            if i < len(g.adj[v]):
                stack[-1] = (v, parent, i + 1)
                w = g.adj[v][i]
                if order[w] == -1:
                    edge_stack.append(_norm(v, w))
                    order[w] = low[w] = counter
                    counter += 1
                    stack.append((w, v, 0))
                elif w != parent and order[w] < order[v]:
                    edge_stack.append(_norm(v, w))
                    low[v] = min(low[v], order[w])
            else:
                stack.pop()
                if parent != -1:
                    low[parent] = min(low[parent], low[v])
                    if low[v] >= order[parent]:
                        target = _norm(parent, v)
                        block = []
                        while True:
                            e = edge_stack.pop()
                            block.append(e)
                            if e == target:
                                break
                        blocks.append(frozenset(block))
    return blocks


def cycle_blocks(g: Graph) -> list[list[int]]:
    """Blocks of ``g`` that are simple cycles, as cyclic vertex orders.

    Each cycle starts at its smallest vertex and proceeds towards the
    smaller of that vertex's two cycle neighbours.
    """
    out = []
    for block in biconnected_blocks(g):
        verts = {x for e in block for x in e}
        if len(block) < 3 or len(block) != len(verts):
            continue
        nb: dict[int, list[int]] = {v: [] for v in verts}
        for u, v in block:
            nb[u].append(v)
            nb[v].append(u)
        if any(len(a) != 2 for a in nb.values()):
            continue
        out.append(_walk_cycle(nb))
    out.sort()
    return out


def _walk_cycle(nb: dict[int, list[int]]) -> list[int]:
    start = min(nb)
    cyc = [start]
    prev, cur = start, min(nb[start])
    while cur != start:
        cyc.append(cur)
        a, b = nb[cur]
        prev, cur = cur, (b if a == prev else a)
    return cyc


def pendant_edges(g: Graph) -> list[tuple[int, int]]:
    """``(pendant_vertex, attachment_vertex)`` for every edge at a degree-1
    vertex, sorted by pendant id. A K2 component is reported once."""
    out = []
    for v in range(g.n):
        if g.degree(v) == 1:
            u = g.adj[v][0]
            if g.degree(u) == 1 and u < v:
                continue
            out.append((v, u))
    return out


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.m == g.n - 1 and is_connected(g)


def is_cycle(g: Graph) -> bool:
    return g.n >= 3 and g.m == g.n and all(d == 2 for d in g.degrees()) and is_connected(g)


def is_complete(g: Graph) -> bool:
    return g.m == g.n * (g.n - 1) // 2


def is_unicyclic(g: Graph) -> bool:
    return g.n >= 3 and g.m == g.n and is_connected(g)


def is_tree_cycle_block(g: Graph) -> bool:
    """Every component of ``g`` minus its bridges is a vertex or a cycle."""
    if not is_connected(g):
        raise DisconnectedInput("is_tree_cycle_block expects a connected graph")
    rest = g.remove_edges(bridges(g))
    for comp in connected_components(rest):
        if len(comp) == 1:
            continue
        sub, _ = rest.induced(comp)
        if not is_cycle(sub):
            return False
    return True


def adjacency_rows(g: Graph) -> list[list[int]]:
    rows = [[0] * g.n for _ in range(g.n)]
    for u, v in g.edges:
        rows[u][v] = rows[v][u] = 1
    return rows
