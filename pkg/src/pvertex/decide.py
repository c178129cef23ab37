"""Rule cascade deciding whether a graph has the property, with certificates.

Per recursion step the rules run in this order:

* R0  disconnected: decide each component, combine block-diagonally.
* R1  single vertex: No (its only principal minor, the empty one, is 1).
* R3  antenna: No.
* R2  pendant edge ``(u, v)``: decide ``g - {u, v}``; a Yes is lifted back.
* R4  bipartite: unbalanced is No, a perfect matching is Yes, and no
  perfect matching is No when order <= 8, a triangular ordering exists,
  or the graph is a tree or unicyclic. Anything else falls through.
* R5  complete graph: Yes.
* R6  cycle: Yes (odd cycles only numerically).
* R7  threaded decomposition over a tree-cycle block base.
* R8  Unknown, or numeric Yes if the optional search succeeds.

Vertex ids in obstructions and rule trails always refer to the input graph.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from .errors import NoConsecutiveSingletons, NotATree
from .graph import (
    Graph,
    adjacency_rows,
    bipartition,
    bridges,
    connected_components,
    cycle_blocks,
    is_complete,
    is_cycle,
    is_tree,
    is_tree_cycle_block,
    is_unicyclic,
    pendant_edges,
)
from .linalg import RatMatrix, det
from .matching import HallViolator, hall_violator, maximum_matching
from .numeric import NumericWitness, SearchConfig, search_witness
from .structure import antenna_vertex, triangular_ordering
from .witness import (
    EMPTY_WITNESS,
    ThreadSpec,
    Witness,
    bipartite_pm_witness,
    complete_witness,
    embed_components,
    generalized_thread_over,
    pendant_lift,
)

YES, NO, UNKNOWN = "Yes", "No", "Unknown"

# R7 tries every subset of cut candidates only when there are this few
SUBSET_LIMIT = 10


@dataclass(frozen=True)
class Obstruction:
    """Reason for a No. ``context`` lists the input vertices of the graph
    the rule fired on (after any pendant rewrites)."""

    kind: str  # "IsolatedVertex" | "Antenna" | "Unbalanced" | "HallViolator"
    context: tuple
    vertex: Optional[int] = None
    pendants: tuple = ()
    part_x: tuple = ()
    part_y: tuple = ()
    s: tuple = ()
    neighborhood: tuple = ()

    def check(self, g: Graph) -> bool:
        """Re-derive the obstruction from ``g`` restricted to ``context``."""
        sub, ids = g.induced(self.context)
        loc = {x: k for k, x in enumerate(ids)}
        if self.kind == "IsolatedVertex":
            return sub.n == 1 and self.vertex == ids[0]
        if self.kind == "Antenna":
            v = loc[self.vertex]
            pend = [ids[w] for w in sub.adj[v] if sub.degree(w) == 1]
            return len(pend) >= 2 and set(self.pendants) <= set(pend)
        if self.kind == "Unbalanced":
            bp = bipartition(sub)
            return (
                bp is not None
                and sorted(ids[x] for x in bp.part_x) == sorted(self.part_x)
                and sorted(ids[y] for y in bp.part_y) == sorted(self.part_y)
                and len(self.part_x) != len(self.part_y)
            )
        if self.kind == "HallViolator":
            hv = HallViolator(tuple(loc[x] for x in self.s), tuple(sorted(loc[y] for y in self.neighborhood)))
            return hv.check(sub)
        return False

    def to_json(self) -> dict:
        out = {"kind": self.kind, "context": list(self.context)}
        if self.kind == "IsolatedVertex":
            out["vertex"] = self.vertex
        elif self.kind == "Antenna":
            out["vertex"] = self.vertex
            out["pendants"] = list(self.pendants)
        elif self.kind == "Unbalanced":
            out["partX"] = list(self.part_x)
            out["partY"] = list(self.part_y)
        else:
            out["s"] = list(self.s)
            out["neighborhood"] = list(self.neighborhood)
        return out


@dataclass
class Certificate:
    status: str
    witness: Optional[Witness] = None
    obstruction: Optional[Obstruction] = None
    reason: Optional[str] = None
    rule_trail: list = field(default_factory=list)
    numeric_only: bool = False
    numeric: Optional[NumericWitness] = None

    def to_json(self) -> dict:
        out = {"status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.obstruction is not None:
            out["obstruction"] = self.obstruction.to_json()
        if self.reason is not None:
            out["reason"] = self.reason
        if self.numeric is not None:
            out["numericWitness"] = self.numeric.to_json()
        out["ruleTrail"] = list(self.rule_trail)
        out["numericOnly"] = self.numeric_only
        return out


class _Engine:
    def __init__(self, numeric: bool, cfg: SearchConfig):
        self.numeric = numeric
        self.cfg = cfg
        self.memo: dict[Graph, Certificate] = {}

    # Each call works on a renumbered graph; ``ids`` maps back to input ids.
    def decide(self, g: Graph, ids: list[int]) -> Certificate:
        comps = connected_components(g)
        if len(comps) > 1:
            return self._components(g, ids, comps)
        if g.n == 0:
            return Certificate(YES, EMPTY_WITNESS, rule_trail=["Empty"])
        if g.n == 1:
            ob = Obstruction("IsolatedVertex", (ids[0],), vertex=ids[0])
            return Certificate(NO, obstruction=ob, rule_trail=[f"R1:IsolatedVertex({ids[0]})"])
        a = antenna_vertex(g)
        if a is not None:
            pend = tuple(sorted(ids[w] for w in g.adj[a] if g.degree(w) == 1))
            ob = Obstruction("Antenna", tuple(sorted(ids)), vertex=ids[a], pendants=pend)
            return Certificate(NO, obstruction=ob, rule_trail=[f"R3:Antenna({ids[a]})"])
        pend = pendant_edges(g)
        if pend:
            return self._pendant(g, ids, *pend[0])
        return self._connected(g, ids)

    def _components(self, g, ids, comps) -> Certificate:
        certs = []
        for comp in comps:
            sub, local = g.induced(comp)
            certs.append((self.decide(sub, [ids[x] for x in local]), local))
        trail = [f"R0:Components({len(comps)})"]
        for c, _ in certs:
            trail.extend(c.rule_trail)
        for c, _ in certs:
            if c.status == NO:
                return Certificate(NO, obstruction=c.obstruction, rule_trail=trail)
        if any(c.status == UNKNOWN for c, _ in certs):
            return Certificate(UNKNOWN, reason="a component is undecided", rule_trail=trail)
        if any(c.witness is None for c, _ in certs):
            return Certificate(YES, rule_trail=trail, numeric_only=True)
        w = embed_components(g, [(c.witness, local) for c, local in certs])
        return Certificate(YES, w, rule_trail=trail)

    def _pendant(self, g, ids, u, v) -> Certificate:
        rest, keep = g.remove_vertices((u, v))
        sub = self.decide(rest, [ids[k] for k in keep])
        trail = [f"R2:Pendant({ids[u]},{ids[v]})"] + sub.rule_trail
        if sub.status != YES:
            return Certificate(sub.status, obstruction=sub.obstruction, reason=sub.reason, rule_trail=trail)
        if sub.witness is None:
            return Certificate(YES, rule_trail=trail, numeric_only=True, numeric=None)
        return Certificate(YES, pendant_lift(g, u, v, sub.witness, keep), rule_trail=trail)

    def _connected(self, g: Graph, ids) -> Certificate:
        """Rules R4 to R8 on a connected, antenna-free, pendant-free graph.
        The outcome depends on ``g`` only up to the id mapping, so it is
        memoised on the renumbered graph."""
        if g in self.memo:
            cached = self.memo[g]
            return _relabel(cached, ids)
        ident = list(range(g.n))
        cert = self._connected_uncached(g)
        self.memo[g] = cert
        return _relabel(cert, ids) if ids != ident else cert

    def _connected_uncached(self, g: Graph) -> Certificate:
        ids = list(range(g.n))
        bp = bipartition(g)
        if bp is not None:
            cert = self._bipartite(g, ids, bp)
            if cert is not None:
                return cert
        if is_complete(g):
            return Certificate(YES, complete_witness(g.n), rule_trail=[f"R5:Complete({g.n})"])
        if is_cycle(g):
            # even cycles were settled by R4
            cert = Certificate(YES, rule_trail=[f"R6:OddCycle({g.n})"], numeric_only=True)
            if self.numeric:
                cert.numeric = search_witness(g, self.cfg)
            return cert
        cert = self._threaded(g)
        if cert is not None:
            return cert
        trail = ["R8:Unknown"]
        if self.numeric:
            nw = search_witness(g, self.cfg)
            if nw is not None:
                return Certificate(YES, rule_trail=["R8:NumericSearch"], numeric_only=True, numeric=nw)
        return Certificate(UNKNOWN, reason="no rule applies", rule_trail=trail)

    def _bipartite(self, g, ids, bp) -> Optional[Certificate]:
        if len(bp.part_x) != len(bp.part_y):
            ob = Obstruction("Unbalanced", tuple(ids), part_x=bp.part_x, part_y=bp.part_y)
            return Certificate(NO, obstruction=ob, rule_trail=["R4:Unbalanced"])
        m = maximum_matching(g, bp)
        if m.covers(g.n):
            return Certificate(YES, bipartite_pm_witness(g, bp, m), rule_trail=["R4:PerfectMatching"])
        if g.n <= 8 or triangular_ordering(g, bp) is not None or is_tree(g) or is_unicyclic(g):
            hv = hall_violator(g, bp)
            ob = Obstruction("HallViolator", tuple(ids), s=hv.s, neighborhood=hv.neighborhood)
            return Certificate(NO, obstruction=ob, rule_trail=["R4:HallViolator"])
        return None

    # -- R7 ------------------------------------------------------------------
    def _threaded(self, g: Graph) -> Optional[Certificate]:
        items = [("bridge", (e,)) for e in sorted(bridges(g))]
        for cyc in cycle_blocks(g):
            edges = tuple(sorted((min(a, b), max(a, b)) for a, b in zip(cyc, cyc[1:] + cyc[:1])))
            items.append(("cycle", edges))
        if not items:
            return None
        k = len(items)
        subsets = [tuple(range(k))] + [(i,) for i in range(k)] if k > 1 else [(0,)]
        if k <= SUBSET_LIMIT:
            for size in range(k - 1, 1, -1):
                subsets.extend(combinations(range(k), size))
        for chosen in subsets:
            cut = [e for i in chosen for e in items[i][1]]
            cert = self._try_cut(g, cut)
            if cert is not None:
                return cert
        return None

    def _try_cut(self, g: Graph, cut) -> Optional[Certificate]:
        rest = g.remove_edges(cut)
        pieces = connected_components(rest)
        if len(pieces) < 2 or any(len(p) < 2 for p in pieces):
            return None
        where = {v: k for k, p in enumerate(pieces) for v in p}
        base_edges = {}
        for a, b in cut:
            pa, pb = where[a], where[b]
            if pa == pb:
                return None
            key = (min(pa, pb), max(pa, pb))
            if key in base_edges:
                return None
            base_edges[key] = (a, b) if pa < pb else (b, a)
        h = Graph(len(pieces), base_edges)
        if not is_tree_cycle_block(h):
            return None
        subs = []
        for p in pieces:
            sub, _ = g.induced(p)
            cert = self.decide(sub, list(range(sub.n)))
            if cert.status != YES:
                return None
            subs.append((sub, cert))
        local = [{v: i for i, v in enumerate(p)} for p in pieces]
        assignment = {
            (i, j): (local[i][a], local[j][b]) for (i, j), (a, b) in base_edges.items()
        }
        bails = [set() for _ in pieces]
        for (i, j), (a, b) in assignment.items():
            bails[i].add(a)
            bails[j].add(b)
        trail = [f"R7:Threaded({len(pieces)} pieces, {len(cut)} cut edges)"]
        if any(c.witness is None for _, c in subs):
            return Certificate(YES, rule_trail=trail, numeric_only=True)
        spec = ThreadSpec(h, tuple((sub, c.witness, tuple(sorted(b))) for (sub, c), b in zip(subs, bails)))
        try:
            w = generalized_thread_over(spec, assignment)
        except NoConsecutiveSingletons:
            return None
        # piece ids are increasing within each piece, so block order maps back
        order = [v for p in pieces for v in p]
        pos = {v: k for k, v in enumerate(order)}
        m = w.matrix.reorder([pos[v] for v in range(g.n)])
        return Certificate(YES, Witness.build(m, g), rule_trail=trail)


def _relabel(cert: Certificate, ids) -> Certificate:
    """Map a certificate computed on the renumbered graph to input ids."""
    ob = cert.obstruction
    if ob is not None:
        f = lambda xs: tuple(ids[x] for x in xs)  # noqa: E731
        ob = Obstruction(
            ob.kind,
            tuple(sorted(f(ob.context))),
            None if ob.vertex is None else ids[ob.vertex],
            f(ob.pendants),
            f(ob.part_x),
            f(ob.part_y),
            f(ob.s),
            tuple(sorted(f(ob.neighborhood))),
        )
    return Certificate(
        cert.status, cert.witness, ob, cert.reason, list(cert.rule_trail), cert.numeric_only, cert.numeric
    )


def decide(g: Graph, numeric: bool = False, cfg: Optional[SearchConfig] = None) -> Certificate:
    """Decide the property for ``g``. With ``numeric=True`` odd cycles and
    otherwise undecided graphs are handed to the numeric search; a numeric
    success is reported as Yes with ``numeric_only`` set."""
    eng = _Engine(numeric, cfg or SearchConfig())
    return eng.decide(g, list(range(g.n)))


def decide_tree_crosscheck(t: Graph) -> bool:
    """Nonsingularity of the adjacency matrix of the tree ``t``."""
    if not is_tree(t):
        raise NotATree("input is not a tree")
    return det(RatMatrix(adjacency_rows(t), cols=t.n)) != 0
