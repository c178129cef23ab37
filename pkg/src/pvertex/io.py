"""Graph documents: JSON ``{"n", "edges", "labels"?}`` and the plain edge list
(first line ``n m``, then ``m`` lines ``u v``, 0-based; ``#`` starts a
comment)."""
from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from typing import Optional

from .errors import MalformedInput, PropertyPError
from .graph import Graph
from .linalg import RatMatrix


@dataclass(frozen=True)
class GraphDocument:
    n: int
    edges: tuple
    labels: Optional[tuple] = None

    def __post_init__(self):
        if self.labels is not None and len(self.labels) != self.n:
            raise MalformedInput(f"{len(self.labels)} labels for {self.n} vertices")

    @classmethod
    def from_graph(cls, g: Graph, labels=None) -> "GraphDocument":
        return cls(g.n, tuple(g.sorted_edges()), None if labels is None else tuple(labels))

    def to_graph(self) -> Graph:
        try:
            return Graph(self.n, self.edges)
        except PropertyPError as exc:
            raise MalformedInput(str(exc)) from exc

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels else str(v)

    def to_json(self) -> dict:
        out = {"n": self.n, "edges": [list(e) for e in self.edges]}
        if self.labels is not None:
            out["labels"] = list(self.labels)
        return out

    def to_edgelist(self) -> str:
        lines = [f"{self.n} {len(self.edges)}"] + [f"{u} {v}" for u, v in self.edges]
        return "\n".join(lines) + "\n"

    def dumps(self, fmt: str = "json") -> str:
        if fmt == "edgelist":
            return self.to_edgelist()
        return json.dumps(self.to_json()) + "\n"


def _parse_json(text: str) -> GraphDocument:
    try:
        doc = json.loads(text)
        n = int(doc["n"])
        edges = tuple((int(u), int(v)) for u, v in doc["edges"])
        labels = doc.get("labels")
    except (ValueError, KeyError, TypeError) as exc:
        raise MalformedInput(f"bad graph JSON: {exc}") from exc
    return GraphDocument(n, edges, None if labels is None else tuple(str(x) for x in labels))


def _parse_edgelist(text: str) -> GraphDocument:
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    try:
        n, m = (int(x) for x in rows[0])
        edges = tuple((int(u), int(v)) for u, v in rows[1:])
    except (ValueError, IndexError) as exc:
        raise MalformedInput(f"bad edge list: {exc}") from exc
    if len(edges) != m:
        raise MalformedInput(f"header promises {m} edges, found {len(edges)}")
    return GraphDocument(n, edges)


def parse_graph(text: str) -> GraphDocument:
    """Parse either format; JSON is recognised by a leading ``{``."""
    if text.lstrip().startswith("{"):
        doc = _parse_json(text)
    else:
        doc = _parse_edgelist(text)
    doc.to_graph()  # validate now so callers see MalformedInput early
    return doc


def read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as f:
            return f.read()
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc}") from exc


def read_graph(path: str) -> GraphDocument:
    return parse_graph(read_text(path))


def parse_matrix(text: str) -> RatMatrix:
    """A matrix as a JSON list of rows, or a witness object with ``entries``.
    Entries may be integers or ``"p/q"`` strings."""
    try:
        doc = json.loads(text)
        rows = doc["entries"] if isinstance(doc, dict) else doc
        return RatMatrix(rows)
    except (ValueError, KeyError, TypeError, ZeroDivisionError, PropertyPError) as exc:
        raise MalformedInput(f"bad matrix: {exc}") from exc
