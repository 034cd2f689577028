"""Dense two-phase tableau simplex with Bland's rule.

Solves ``max c^T x  s.t.  A x <= b,  lower <= x <= upper`` for the small
programs built by the power-flow module and by the test oracles. Each row of
``A`` carries a tag so callers can map rows back to scenarios.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Hashable, Sequence

import numpy as np

FEAS_TOL = 1e-8
PIVOT_TOL = 1e-11
_COST_TOL = 1e-10


class LpError(RuntimeError):
    pass


class DimensionMismatchError(LpError, ValueError):
    pass


class NumericalBreakdownError(LpError):
    pass


class LpStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LinearProgram:
    """``max c^T x`` subject to ``A x <= b`` and ``lower <= x <= upper``."""

    c: np.ndarray
    A: np.ndarray
    b: np.ndarray
    lower: np.ndarray | None = None
    upper: np.ndarray | None = None
    tags: Sequence[Hashable] | None = None

    def __post_init__(self):
        c = np.asarray(self.c, dtype=float).ravel()
        n = c.size
        A = np.asarray(self.A, dtype=float)
        if A.size == 0:
            A = A.reshape(0, n)
        b = np.asarray(self.b, dtype=float).ravel()
        if A.ndim != 2 or A.shape[1] != n:
            raise DimensionMismatchError(f"A has shape {A.shape}, expected (m, {n})")
        if b.size != A.shape[0]:
            raise DimensionMismatchError(f"b has {b.size} entries, A has {A.shape[0]} rows")
        lower = np.zeros(n) if self.lower is None else np.asarray(self.lower, dtype=float).ravel()
        upper = np.full(n, np.inf) if self.upper is None else np.asarray(self.upper, dtype=float).ravel()
        if lower.size != n or upper.size != n:
            raise DimensionMismatchError("bounds must have one entry per variable")
        tags = tuple(range(A.shape[0])) if self.tags is None else tuple(self.tags)
        if len(tags) != A.shape[0]:
            raise DimensionMismatchError("one tag per constraint row is required")
        for name, value in (("c", c), ("A", A), ("b", b), ("lower", lower), ("upper", upper)):
            value.setflags(write=False)
            object.__setattr__(self, name, value)
        object.__setattr__(self, "tags", tags)

    @property
    def n_vars(self):
        return self.c.size

    @property
    def n_rows(self):
        return self.b.size

    def select_rows(self, keep):
        keep = np.asarray(keep, dtype=bool)
        return LinearProgram(
            self.c, self.A[keep], self.b[keep], self.lower, self.upper,
            [t for t, k in zip(self.tags, keep) if k],
        )


@dataclass
class LpSolution:
    status: LpStatus
    x: np.ndarray | None = None
    objective_value: float = float("nan")
    active_set: frozenset = frozenset()
    row_duals: np.ndarray | None = None
    bound_duals: np.ndarray | None = field(default=None, repr=False)
    iterations: int = 0

    @property
    def optimal(self):
        return self.status is LpStatus.OPTIMAL


class _Tableau:
    def __init__(self, T, basis):
        self.T = T
        self.basis = basis
        self.iterations = 0

    def pivot(self, r, j):
        T = self.T
        piv = T[r, j]
        if abs(piv) < PIVOT_TOL:
            raise NumericalBreakdownError(f"pivot magnitude {abs(piv):.3e} below {PIVOT_TOL}")
        T[r] /= piv
        col = T[:, j].copy()
        col[r] = 0.0
        T -= np.outer(col, T[r])
        self.basis[r] = j
        self.iterations += 1

    def run(self, cost, allowed, max_iter):
        """Maximise ``cost @ z`` over the current tableau; Bland's rule."""
        T = self.T
        m = T.shape[0]
        while True:
            if self.iterations > max_iter:
                raise NumericalBreakdownError("simplex iteration cap reached (cycling?)")
            cb = cost[self.basis]
            reduced = cost[:-1] - cb @ T[:, :-1]
            scale = 1.0 + np.abs(cost[:-1]).max(initial=0.0)
            enter = None
            for j in np.flatnonzero(allowed):
                if reduced[j] > _COST_TOL * scale:
                    enter = j
                    break
            if enter is None:
                return "optimal"
            column = T[:, enter]
            best_r, best_ratio = None, np.inf
            for r in range(m):
                if column[r] > PIVOT_TOL:
                    ratio = T[r, -1] / column[r]
                    if ratio < best_ratio - 1e-12 or (
                        abs(ratio - best_ratio) <= 1e-12 and self.basis[r] < self.basis[best_r]
                    ):
                        best_r, best_ratio = r, ratio
            if best_r is None:
                return "unbounded"
            self.pivot(best_r, enter)


def _standardise(lp):
    """Rewrite bounds so that every variable is a nonnegative ``y``.

    Returns (x0, T, M, h) with x = x0 + T y and the system ``M y <= h``; the
    rows after ``A``'s encode finite upper bounds. None if a box is empty.
    """
    n = lp.n_vars
    cols, x0 = [], np.zeros(n)
    bound_rows = []  # (column index in y, x index, rhs)
    for j in range(n):
        lo, up = lp.lower[j], lp.upper[j]
        if lo > up:
            return None
        if np.isfinite(lo):
            x0[j] = lo
            cols.append((j, 1.0))
            if np.isfinite(up):
                bound_rows.append((len(cols) - 1, j, up - lo))
        elif np.isfinite(up):
            x0[j] = up
            cols.append((j, -1.0))
        else:
            cols.append((j, 1.0))
            cols.append((j, -1.0))
    T = np.zeros((n, len(cols)))
    for idx, (j, sgn) in enumerate(cols):
        T[j, idx] = sgn
    M = lp.A @ T
    h = lp.b - lp.A @ x0
    if bound_rows:
        B = np.zeros((len(bound_rows), len(cols)))
        for r, (col, _, rhs) in enumerate(bound_rows):
            B[r, col] = 1.0
        M = np.vstack([M, B])
        h = np.concatenate([h, [rhs for _, _, rhs in bound_rows]])
    return x0, T, M, h


def solve_lp(lp):
    """Solve ``lp`` and return an :class:`LpSolution` with a dual certificate."""
    if not isinstance(lp, LinearProgram):
        raise TypeError("solve_lp expects a LinearProgram")
    std = _standardise(lp)
    if std is None:
        return LpSolution(LpStatus.INFEASIBLE)
    x0, Tmap, M, h = std
    m, ny = M.shape

    row_scale = np.maximum(np.abs(M).max(axis=1, initial=0.0), np.abs(h))
    row_scale[row_scale == 0.0] = 1.0
    M = M / row_scale[:, None]
    h = h / row_scale
    sign = np.where(h < 0.0, -1.0, 1.0)
    need_art = np.flatnonzero(h < 0.0)
    n_art = need_art.size

    # columns: y (ny) | slacks (m) | artificials (n_art) | rhs
    width = ny + m + n_art + 1
    T = np.zeros((m, width))
    T[:, :ny] = M * sign[:, None]
    T[np.arange(m), ny + np.arange(m)] = sign
    T[need_art, ny + m + np.arange(n_art)] = 1.0
    T[:, -1] = h * sign
    basis = [ny + i for i in range(m)]
    for a, r in enumerate(need_art):
        basis[r] = ny + m + a
    tab = _Tableau(T, basis)
    max_iter = 50 * (m + ny + n_art + 10)

    if n_art:
        cost1 = np.zeros(width)
        cost1[ny + m:ny + m + n_art] = -1.0
        tab.run(cost1, np.ones(width - 1, dtype=bool), max_iter)
        infeas = -float(cost1[tab.basis] @ tab.T[:, -1])
        if infeas > FEAS_TOL * (1.0 + np.abs(h).max()):
            return LpSolution(LpStatus.INFEASIBLE, iterations=tab.iterations)
        # drive zero-level artificials out of the basis
        keep_rows = np.ones(m, dtype=bool)
        for r in range(m):
            if tab.basis[r] >= ny + m:
                cands = np.flatnonzero(np.abs(tab.T[r, :ny + m]) > 1e-9)
                if cands.size:
                    tab.pivot(r, int(cands[0]))
                else:
                    keep_rows[r] = False
        if not keep_rows.all():
            tab.T = tab.T[keep_rows]
            tab.basis = [b for b, k in zip(tab.basis, keep_rows) if k]

    cost2 = np.zeros(width)
    cost2[:ny] = (lp.c @ Tmap)
    allowed = np.zeros(width - 1, dtype=bool)
    allowed[:ny + m] = True
    outcome = tab.run(cost2, allowed, max_iter)
    if outcome == "unbounded":
        return LpSolution(LpStatus.UNBOUNDED, iterations=tab.iterations)

    z = np.zeros(width - 1)
    z[tab.basis] = tab.T[:, -1]
    y = z[:ny]
    x = x0 + Tmap @ y
    x = np.clip(x, lp.lower, lp.upper)

    # dual prices from the final basis: B^T pi = c_B on the scaled, sign-fixed system
    full = np.zeros((m, width - 1))
    full[:, :ny] = M * sign[:, None]
    full[np.arange(m), ny + np.arange(m)] = sign
    rows_alive = np.ones(m, dtype=bool)
    if n_art:
        rows_alive = keep_rows
    Bmat = full[rows_alive][:, tab.basis]
    try:
        pi = np.linalg.solve(Bmat.T, cost2[tab.basis])
    except np.linalg.LinAlgError as exc:
        raise NumericalBreakdownError("singular final basis") from exc
    duals_std = np.zeros(m)
    duals_std[rows_alive] = pi
    duals_std = duals_std * sign / row_scale
    row_duals = np.maximum(duals_std[:lp.n_rows], 0.0)

    residual = lp.b - lp.A @ x
    tol = FEAS_TOL * (1.0 + np.abs(lp.b))
    if np.any(residual < -tol):
        raise NumericalBreakdownError(
            f"solution violates constraints by {-residual.min():.3e}"
        )
    stationarity = lp.c - lp.A.T @ row_duals
    bound_duals = stationarity  # >0 prices an upper bound, <0 a lower bound
    active = frozenset(t for t, r, tl in zip(lp.tags, residual, tol) if r <= tl)
    return LpSolution(
        LpStatus.OPTIMAL,
        x=x,
        objective_value=float(lp.c @ x),
        active_set=active,
        row_duals=row_duals,
        bound_duals=bound_duals,
        iterations=tab.iterations,
    )


def solve_lp_excluding(lp, excluded_tags):
    """Re-solve with every row whose tag is in ``excluded_tags`` dropped."""
    excluded = set(excluded_tags)
    keep = np.array([t not in excluded for t in lp.tags], dtype=bool)
    return solve_lp(lp.select_rows(keep))


def complementary_slackness_residual(lp, sol):
    """Largest |multiplier * slack| over rows and bounds; ~0 at an optimum."""
    slack = lp.b - lp.A @ sol.x
    worst = float(np.max(np.abs(sol.row_duals * slack), initial=0.0))
    up = np.where(sol.bound_duals > 0, sol.bound_duals * (lp.upper - sol.x), 0.0)
    lo = np.where(sol.bound_duals < 0, -sol.bound_duals * (sol.x - lp.lower), 0.0)
    up = np.nan_to_num(up, nan=np.inf, posinf=np.inf)
    lo = np.nan_to_num(lo, nan=np.inf, posinf=np.inf)
    return max(worst, float(np.max(np.abs(up), initial=0.0)), float(np.max(np.abs(lo), initial=0.0)))
