"""Exact dense linear algebra over the rationals.

Entries are :class:`fractions.Fraction`. Determinants and inverses are
computed fraction-free: each row is scaled to integers, then Bareiss
elimination runs on Python ints, which keeps intermediate values exact and
is far cheaper than ``Fraction`` arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .errors import (
    AsymmetricMatrix,
    NonSquare,
    PatternError,
    SizeMismatch,
    Singular,
)
from .graph import Graph

Rational = Fraction


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions, floats (exactly) and ``"p/q"`` strings."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def rational_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class RatMatrix:
    """Immutable dense matrix of Fractions, stored row-major."""

    __slots__ = ("rows", "_shape")

    def __init__(self, rows: Iterable[Iterable], cols: int | None = None):
        data = tuple(tuple(as_rational(x) for x in r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        for r in data:
            if len(r) != cols:
                raise SizeMismatch("ragged rows")
        self.rows = data
        self._shape = (len(data), cols)

    @classmethod
    def zeros(cls, r: int, c: int | None = None) -> "RatMatrix":
        c = r if c is None else c
        return cls([[0] * c for _ in range(r)], cols=c)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    @property
    def shape(self) -> tuple[int, int]:
        return self._shape

    @property
    def n(self) -> int:
        return self._shape[0]

    def is_square(self) -> bool:
        return self._shape[0] == self._shape[1]

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, RatMatrix) and self.rows == other.rows and self.shape == other.shape

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(rational_str(x) for x in r) + "]" for r in self.rows)
        return f"RatMatrix([{body}])"

    def is_symmetric(self) -> bool:
        if not self.is_square():
            return False
        n = self.n
        return all(self.rows[i][j] == self.rows[j][i] for i in range(n) for j in range(i + 1, n))

    def transpose(self) -> "RatMatrix":
        return RatMatrix(zip(*self.rows), cols=self.shape[0]) if self.rows else RatMatrix.zeros(self.shape[1], 0)

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape[1] != other.shape[0]:
            raise SizeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows)) if other.rows else []
        out = [[sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)) for c in cols] for r in self.rows]
        return RatMatrix(out, cols=other.shape[1])

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return RatMatrix(
            ([a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)),
            cols=self.shape[1],
        )

    def scale(self, c) -> "RatMatrix":
        c = as_rational(c)
        return RatMatrix(([c * x for x in r] for r in self.rows), cols=self.shape[1])

    def delete(self, i: int) -> "RatMatrix":
        """Principal submatrix with row and column ``i`` removed."""
        return RatMatrix(
            (r[:i] + r[i + 1:] for k, r in enumerate(self.rows) if k != i),
            cols=self.shape[1] - 1,
        )

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "RatMatrix":
        return RatMatrix(([self.rows[i][j] for j in cols] for i in rows), cols=len(cols))

    def reorder(self, order: Sequence[int]) -> "RatMatrix":
        """Symmetric permutation: entry ``(i, j)`` of the result is
        ``self[order[i], order[j]]``."""
        return self.submatrix(order, order)

    def diagonal(self) -> list[Fraction]:
        return [self.rows[i][i] for i in range(min(self.shape))]

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self.rows]

    def to_strings(self) -> list[list[str]]:
        return [[rational_str(x) for x in r] for r in self.rows]

    def to_float(self):
        import numpy as np

        return np.array([[float(x) for x in r] for r in self.rows], dtype=float).reshape(self.shape)


def block_matrix(blocks: Sequence[Sequence[RatMatrix]]) -> RatMatrix:
    """Assemble a matrix from a grid of compatible blocks."""
    rows = []
    for brow in blocks:
        height = brow[0].shape[0]
        for b in brow:
            if b.shape[0] != height:
                raise SizeMismatch("block heights differ within a block row")
        for i in range(height):
            row = []
            for b in brow:
                row.extend(b.rows[i])
            rows.append(row)
    cols = sum(b.shape[1] for b in blocks[0]) if blocks else 0
    return RatMatrix(rows, cols=cols)


def block_diag(mats: Sequence[RatMatrix]) -> RatMatrix:
    total = sum(m.n for m in mats)
    out = [[Fraction(0)] * total for _ in range(total)]
    off = 0
    for m in mats:
        for i, r in enumerate(m.rows):
            out[off + i][off:off + m.n] = r
        off += m.n
    return RatMatrix(out, cols=total)


# -- integer kernels ------------------------------------------------------

def _integer_rows(m: RatMatrix) -> tuple[list[list[int]], int]:
    """Scale each row to integers; returns (rows, product of row scales)."""
    out = []
    scale = 1
    for r in m.rows:
        s = lcm(*(x.denominator for x in r)) if r else 1
        scale *= s
        out.append([x.numerator * (s // x.denominator) for x in r])
    return out, scale


def _bareiss_det(a: list[list[int]]) -> int:
    n = len(a)
    if n == 0:
        return 1
    a = [row[:] for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for p in range(k + 1, n):
                if a[p][k] != 0:
                    a[k], a[p] = a[p], a[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            f = ri[k]
            if f:
                a[i] = ri[:k + 1] + [
                    (piv * x - f * y) // prev for x, y in zip(ri[k + 1:], row_k[k + 1:])
                ]
            elif piv != prev:
                a[i] = ri[:k + 1] + [piv * x // prev for x in ri[k + 1:]]
        prev = piv
    return sign * a[n - 1][n - 1]


def _bareiss_inverse(a: list[list[int]]) -> tuple[int, int, list[list[int]]]:
    """Fraction-free Gauss-Jordan on ``[a | I]``.

    Returns ``(det(a), p, r)`` where ``p`` is the last pivot and
    ``a^{-1} = r / p``. Raises Singular when ``det(a) = 0``.
    """
    n = len(a)
    m = [row[:] + [int(i == j) for j in range(n)] for i, row in enumerate(a)]
    sign = 1
    prev = 1
    for k in range(n):
        if m[k][k] == 0:
            for p in range(k + 1, n):
                if m[p][k] != 0:
                    m[k], m[p] = m[p], m[k]
                    sign = -sign
                    break
            else:
                raise Singular("matrix is singular")
        piv = m[k][k]
        row_k = m[k]
        for i in range(n):
            if i == k:
                continue
            ri = m[i]
            f = ri[k]
            if f:
                m[i] = [(piv * x - f * y) // prev for x, y in zip(ri, row_k)]
            elif piv != prev:
                m[i] = [piv * x // prev for x in ri]
        prev = piv
    return sign * prev, prev, [row[n:] for row in m]


# -- public operations ----------------------------------------------------

def det(m: RatMatrix) -> Fraction:
    """Exact determinant; the 0x0 determinant is 1."""
    if not m.is_square():
        raise NonSquare(f"determinant of a {m.shape} matrix")
    rows, scale = _integer_rows(m)
    return Fraction(_bareiss_det(rows), scale)


def inverse(m: RatMatrix) -> RatMatrix:
    if not m.is_square():
        raise NonSquare(f"inverse of a {m.shape} matrix")
    n = m.n
    rows, _ = _integer_rows(m)
    row_scale = [lcm(*(x.denominator for x in r)) if r else 1 for r in m.rows]
    _, d, r = _bareiss_inverse(rows)
    # r / d is inv(S A) = inv(A) inv(S); undo the row scaling on the columns
    return RatMatrix(
        [[Fraction(r[i][j] * row_scale[j], d) for j in range(n)] for i in range(n)],
        cols=n,
    )


def inverse_diagonal(m: RatMatrix) -> tuple[Fraction, list[Fraction]]:
    """``(det(m), diag(m^{-1}))`` from one elimination; raises Singular."""
    if not m.is_square():
        raise NonSquare(f"inverse of a {m.shape} matrix")
    n = m.n
    rows, scale = _integer_rows(m)
    row_scale = [lcm(*(x.denominator for x in r)) if r else 1 for r in m.rows]
    d_signed, d, r = _bareiss_inverse(rows)
    return Fraction(d_signed, scale), [Fraction(r[i][i] * row_scale[i], d) for i in range(n)]


def principal_minors(m: RatMatrix) -> list[Fraction]:
    """``det(m(i))`` for each ``i``, each computed by its own elimination."""
    if not m.is_square():
        raise NonSquare(f"principal minors of a {m.shape} matrix")
    return [det(m.delete(i)) for i in range(m.n)]


@dataclass(frozen=True)
class Verification:
    determinant: Fraction
    minors: tuple
    p_vertex_count: int

    @property
    def n(self) -> int:
        return len(self.minors)

    @property
    def has_property_p(self) -> bool:
        return self.determinant != 0 and self.p_vertex_count == self.n

    def to_json(self) -> dict:
        return {
            "det": rational_str(self.determinant),
            "minors": [rational_str(x) for x in self.minors],
            "pVertexCount": self.p_vertex_count,
        }


def check_pattern(m: RatMatrix, g: Graph) -> None:
    """Raise unless ``m`` is a symmetric member of S(g)."""
    if not m.is_square():
        raise NonSquare(f"matrix of shape {m.shape}")
    if m.n != g.n:
        raise SizeMismatch(f"matrix order {m.n} but graph has {g.n} vertices")
    if not m.is_symmetric():
        raise AsymmetricMatrix("matrix is not symmetric")
    for i in range(m.n):
        row = m.rows[i]
        for j in range(i + 1, m.n):
            on_edge = g.has_edge(i, j)
            if on_edge and row[j] == 0:
                raise PatternError(f"zero entry on edge ({i}, {j})", (i, j))
            if not on_edge and row[j] != 0:
                raise PatternError(f"nonzero entry off the edge set at ({i}, {j})", (i, j))


def verify_property_P(m: RatMatrix, g: Graph) -> Verification:
    """Check ``m`` lies in S(g) and compute its determinant and minors.

    Nonsingular inputs get their minors from the inverse diagonal
    (``det(m(i)) = det(m) * inv(m)[i, i]``); singular ones fall back to
    one determinant per deletion.
    """
    check_pattern(m, g)
    try:
        d, diag = inverse_diagonal(m)
        minors = [d * x for x in diag]
    except Singular:
        d = Fraction(0)
        minors = principal_minors(m)
    zeros = sum(1 for x in minors if x == 0)
    return Verification(d, tuple(minors), zeros)
