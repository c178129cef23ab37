"""Floating-point search for witness matrices, plus rationalisation back to
exact arithmetic.

The free variables are the diagonal entries and one weight per edge. The
objective drives every diagonal entry of the inverse to zero. Both the
matrix and the residuals are measured after normalising the matrix to unit
RMS entry size (``sigma = ||A||_F / sqrt(n)``); without this the search can
shrink the inverse diagonal simply by inflating the matrix. A one-sided
penalty keeps ``|det(A / sigma)|`` above a floor, and edge weights are
reparametrised as ``s * (floor + softplus(z))`` so they never reach zero.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np
from scipy.linalg import lu_factor, lu_solve
from scipy.optimize import least_squares

from .errors import SingularPoint
from .graph import Graph
from .linalg import RatMatrix
from .witness import UnverifiedInput, Witness

EDGE_FLOOR = 1e-3
FD_STEP = 1e-6


@dataclass(frozen=True)
class SearchConfig:
    restarts: int = 8
    max_iters: int = 2000
    residual_tol: float = 1e-10
    det_floor: float = 1e-6
    seed: int = 0
    rationalize_max_denominator: int = 64

    def __post_init__(self):
        if min(self.restarts, self.max_iters, self.rationalize_max_denominator) <= 0:
            raise ValueError("restarts, max_iters and rationalize_max_denominator must be positive")
        if not 0 < self.residual_tol < 1 or self.det_floor <= 0:
            raise ValueError("need 0 < residual_tol < 1 and det_floor > 0")


@dataclass(frozen=True)
class NumericWitness:
    matrix: np.ndarray = field(repr=False)
    residual: float
    det_estimate: float
    condition_estimate: float
    seed: int = 0
    restart: int = 0

    def to_json(self) -> dict:
        return {
            "n": int(self.matrix.shape[0]),
            "entries": [[float(x) for x in row] for row in self.matrix],
            "residual": self.residual,
            "det": self.det_estimate,
            "condition": self.condition_estimate,
            "seed": self.seed,
            "restart": self.restart,
        }


class _Problem:
    """Residuals and Jacobian in terms of (diagonal, edge weights)."""

    def __init__(self, g: Graph, det_floor: float):
        self.g = g
        self.n = g.n
        self.edges = g.sorted_edges()
        self.log_floor = np.log(det_floor)
        self.eu = np.array([u for u, _ in self.edges], dtype=int)
        self.ev = np.array([v for _, v in self.edges], dtype=int)

    def matrix(self, diag: np.ndarray, w: np.ndarray) -> np.ndarray:
        a = np.diag(diag).astype(float)
        a[self.eu, self.ev] = w
        a[self.ev, self.eu] = w
        return a

    def residuals(self, diag, w, jac: bool = True):
        n = self.n
        a = self.matrix(diag, w)
        try:
            b = np.linalg.inv(a)
        except np.linalg.LinAlgError as exc:
            raise SingularPoint("matrix is singular at this point") from exc
        if not np.all(np.isfinite(b)):
            raise SingularPoint("matrix is singular at this point")
        fro2 = float(np.sum(a * a))
        sigma = np.sqrt(fro2 / n)
        sign, logdet = np.linalg.slogdet(a)
        if sign == 0:
            raise SingularPoint("matrix is singular at this point")
        ell = logdet - n * np.log(sigma)  # log|det(A / sigma)|
        bd = np.diag(b)
        r = np.empty(n + 1)
        r[:n] = bd * sigma
        active = ell < self.log_floor
        r[n] = (self.log_floor - ell) if active else 0.0
        if not jac:
            return r, a, b
        # d sigma / d parameter
        ds_diag = diag / (sigma * n)
        ds_edge = 2.0 * w / (sigma * n)
        j = np.zeros((n + 1, n + len(w)))
        # d B_ii / d a_kk = -B_ik^2 ; d B_ii / d a_kl = -2 B_ik B_il
        j[:n, :n] = -(b * b) * sigma + np.outer(bd, ds_diag)
        if len(w):
            j[:n, n:] = -2.0 * b[:, self.eu] * b[:, self.ev] * sigma + np.outer(bd, ds_edge)
        if active:
            j[n, :n] = -(np.diag(b) - n * ds_diag / sigma)
            if len(w):
                j[n, n:] = -(2.0 * b[self.eu, self.ev] - n * ds_edge / sigma)
        return r, j

    def objective(self, x: np.ndarray) -> float:
        r, _, _ = self.residuals(x[: self.n], x[self.n:], jac=False)
        return float(r @ r)

    def gradient(self, x: np.ndarray) -> np.ndarray:
        r, j = self.residuals(x[: self.n], x[self.n:])
        return 2.0 * j.T @ r


def _softplus(z):
    return np.logaddexp(0.0, z)


def _sigmoid(z):
    return 0.5 * (1.0 + np.tanh(0.5 * z))


def gradient_check(g: Graph, point) -> float:
    """Relative error (infinity norm) between the analytic gradient of the
    search objective and central finite differences with step 1e-6.

    ``point`` lists the diagonal entries followed by the edge weights in
    sorted edge order.
    """
    prob = _Problem(g, 1e-6)
    x = np.asarray(point, dtype=float)
    if x.shape != (g.n + g.m,):
        raise ValueError(f"point must have {g.n + g.m} entries")
    analytic = prob.gradient(x)
    fd = np.empty_like(x)
    for k in range(len(x)):
        xp, xm = x.copy(), x.copy()
        xp[k] += FD_STEP
        xm[k] -= FD_STEP
        fd[k] = (prob.objective(xp) - prob.objective(xm)) / (2 * FD_STEP)
    scale = max(np.max(np.abs(fd)), np.max(np.abs(analytic)), 1e-12)
    return float(np.max(np.abs(analytic - fd)) / scale)


def _independent_residual(a: np.ndarray) -> tuple[float, float, float]:
    """(max |diag(A^-1)|, det, condition) via an LU factorisation."""
    lu, piv = lu_factor(a)
    inv = lu_solve((lu, piv), np.eye(a.shape[0]))
    sign = np.prod(np.where(piv != np.arange(len(piv)), -1.0, 1.0))
    d = float(sign * np.prod(np.diag(lu)))
    return float(np.max(np.abs(np.diag(inv)))), d, float(np.linalg.cond(a))


def _run(prob: _Problem, cfg: SearchConfig, restart: int):
    n, m = prob.n, len(prob.edges)
    rng = np.random.default_rng([cfg.seed, restart])
    diag0 = rng.uniform(-2.0, 2.0, n)
    sgn = rng.choice([-1.0, 1.0], m)
    mag0 = rng.uniform(0.5, 2.0, m)
    # invert w = s * (floor + softplus(z)) for the starting magnitudes
    z0 = np.log(np.expm1(mag0 - EDGE_FLOOR))
    x0 = np.concatenate([diag0, z0])

    def split(x):
        return x[:n], sgn * (EDGE_FLOOR + _softplus(x[n:]))

    def fun(x):
        d, w = split(x)
        try:
            return prob.residuals(d, w, jac=False)[0]
        except SingularPoint:
            return np.full(n + 1, 1e6)

    def jac(x):
        d, w = split(x)
        try:
            _, j = prob.residuals(d, w)
        except SingularPoint:
            return np.zeros((n + 1, n + m))
        j = j.copy()
        j[:, n:] *= sgn * _sigmoid(x[n:])
        return j

    try:
        res = least_squares(fun, x0, jac=jac, method="trf", max_nfev=cfg.max_iters,
                            xtol=1e-15, ftol=1e-15, gtol=1e-15)
    except (ValueError, np.linalg.LinAlgError):
        return None
    d, w = split(res.x)
    a = prob.matrix(d, w)
    sigma = np.sqrt(np.sum(a * a) / n)
    if not np.isfinite(sigma) or sigma == 0:
        return None
    return a / sigma


def search_witness(g: Graph, cfg: SearchConfig = SearchConfig()) -> Optional[NumericWitness]:
    """Best of ``cfg.restarts`` seeded local searches, or None when no run
    reaches ``cfg.residual_tol`` with ``|det|`` above ``cfg.det_floor`` and
    every edge weight at least the floor in magnitude."""
    if g.n < 2:
        return None
    prob = _Problem(g, cfg.det_floor)
    best = None
    for k in range(cfg.restarts):
        a = _run(prob, cfg, k)
        if a is None:
            continue
        try:
            resid, d, cond = _independent_residual(a)
        except (ValueError, np.linalg.LinAlgError):
            continue
        if not np.isfinite(resid) or abs(d) <= cfg.det_floor:
            continue
        if len(prob.edges) and np.min(np.abs(a[prob.eu, prob.ev])) < EDGE_FLOOR:
            continue
        if best is None or resid < best.residual:
            best = NumericWitness(a, resid, d, cond, cfg.seed, k)
        if resid <= cfg.residual_tol * 1e-3:
            break  # good enough that later restarts cannot matter in practice
    if best is None or best.residual > cfg.residual_tol:
        return None
    return best


def rationalize(nw: NumericWitness, g: Graph, max_den: int = 64) -> Optional[Witness]:
    """Round to rationals with bounded denominators and verify exactly.

    The matrix is first tried as is, then rescaled so that each distinct edge
    magnitude in turn becomes 1 (witnesses are scale invariant, and the
    normalised search output usually carries an irrational scale).
    """
    a = np.asarray(nw.matrix, dtype=float)
    scales = [1.0]
    for u, v in g.sorted_edges():
        s = abs(a[u, v])
        if s > 0 and all(abs(s - t) > 1e-9 * max(s, t) for t in scales):
            scales.append(s)
    for s in scales:
        rows = []
        ok = True
        for i in range(g.n):
            row = []
            for j in range(g.n):
                x = a[i, j] / s
                if i != j and not g.has_edge(i, j):
                    row.append(Fraction(0))
                    continue
                q = Fraction(x).limit_denominator(max_den)
                if i != j and (q == 0 or (q > 0) != (x > 0)):
                    ok = False
                    break
                row.append(q)
            if not ok:
                break
            rows.append(row)
        if not ok:
            continue
        try:
            return Witness.build(RatMatrix(rows, cols=g.n), g)
        except UnverifiedInput:
            continue
    return None
