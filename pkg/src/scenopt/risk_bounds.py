"""Risk and confidence bounds of the scenario approach.

Four families of bounds are covered:

* ``beta_basic`` - confidence for a plain scenario program with ``d`` decision
  variables (binomial lower tail).
* ``beta_discard`` - confidence when ``R`` sampled constraints are removed and
  violated by the solution.
* ``eps_wait_judge`` - a-posteriori risk given the observed number ``k`` of
  support constraints.
* ``eps_discard_support`` - a-posteriori risk given ``k`` support constraints
  after ``R`` removals.

All combinatorial quantities are handled as logarithms so that terms like
``C(N+R, R)`` never overflow.
"""
from __future__ import annotations

import csv
import functools
import io
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.special import gammaln, logsumexp

BISECTION_TOL = 1e-12
BISECTION_MAX_ITER = 200


class InvalidParameterError(ValueError):
    """Raised when bound parameters fall outside their admissible range."""


class BracketingError(RuntimeError):
    """No sign change of the risk equation on (0, 1); should never happen for valid input."""


def _check_int(name, value, minimum):
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise InvalidParameterError(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise InvalidParameterError(f"{name} must be >= {minimum}, got {value}")
    return int(value)


def _check_prob(name, value):
    value = float(value)
    if not 0.0 < value < 1.0:
        raise InvalidParameterError(f"{name} must lie in (0, 1), got {value}")
    return value


@dataclass(frozen=True)
class BoundParams:
    """Parameter bundle shared by the bound equations.

    ``n_scenarios`` is N, ``n_decision`` is d, ``risk`` is epsilon,
    ``confidence`` is beta, ``n_removed`` is R and ``n_support`` is k.
    """

    n_scenarios: int
    n_decision: int
    risk: float
    confidence: float
    n_removed: int = 0
    n_support: int = 0

    def __post_init__(self):
        _check_int("n_scenarios", self.n_scenarios, 1)
        _check_int("n_decision", self.n_decision, 1)
        _check_int("n_removed", self.n_removed, 0)
        _check_int("n_support", self.n_support, 0)
        _check_prob("risk", self.risk)
        _check_prob("confidence", self.confidence)
        if self.n_support > self.n_decision:
            raise InvalidParameterError("n_support must not exceed n_decision")
        if self.n_removed >= self.n_scenarios:
            raise InvalidParameterError("n_removed must be smaller than n_scenarios")


# ---------------------------------------------------------------------------
# a-priori bounds


def _log_binom(n, k):
    return gammaln(n + 1.0) - gammaln(k + 1.0) - gammaln(n - k + 1.0)


def log_binom_cdf(j, n, eps):
    """log P(Bin(n, eps) <= j), summed term by term in log space."""
    if j < 0:
        return -math.inf
    if j >= n:
        return 0.0
    i = np.arange(j + 1, dtype=float)
    log_terms = _log_binom(n, i) + i * math.log(eps) + (n - i) * math.log1p(-eps)
    return float(min(logsumexp(log_terms), 0.0))


def beta_basic(N, d, eps):
    """Confidence of the plain scenario program: P(Bin(N, eps) <= d - 1)."""
    N = _check_int("N", N, 1)
    d = _check_int("d", d, 1)
    eps = _check_prob("eps", eps)
    if d - 1 >= N:
        return 1.0
    return math.exp(log_binom_cdf(d - 1, N, eps))


def log_beta_discard(N, R, d, eps):
    N = _check_int("N", N, 1)
    R = _check_int("R", R, 0)
    d = _check_int("d", d, 1)
    eps = _check_prob("eps", eps)
    if R + d - 1 >= N:
        raise InvalidParameterError(f"need R + d - 1 < N, got R={R}, d={d}, N={N}")
    return float(_log_binom(R + d - 1, R)) + log_binom_cdf(R + d - 1, N, eps)


def beta_discard(N, R, d, eps):
    """Confidence after removing R constraints, C(R+d-1, R) P(Bin(N, eps) <= R+d-1).

    The value is returned unclamped and can exceed one.
    """
    log_value = log_beta_discard(N, R, d, eps)
    if R == 0:
        return beta_basic(N, d, eps)
    return math.exp(log_value) if log_value < 709.0 else math.inf


def _min_samples(log_beta, beta, start):
    # log_beta is nonincreasing in N; bracket by doubling, then bisect.
    target = math.log(beta)
    if log_beta(start) <= target:
        return start
    lo, hi = start, max(2 * start, start + 1)
    while log_beta(hi) > target:
        lo, hi = hi, 2 * hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if log_beta(mid) <= target:
            hi = mid
        else:
            lo = mid
    return hi


def min_samples_basic(eps, beta, d):
    """Smallest N with beta_basic(N, d, eps) <= beta."""
    eps = _check_prob("eps", eps)
    beta = _check_prob("beta", beta)
    d = _check_int("d", d, 1)
    return _min_samples(lambda n: log_binom_cdf(d - 1, n, eps), beta, 1)


def min_samples_discard(eps, beta, d, R):
    """Smallest N with beta_discard(N, R, d, eps) <= beta."""
    eps = _check_prob("eps", eps)
    beta = _check_prob("beta", beta)
    d = _check_int("d", d, 1)
    R = _check_int("R", R, 0)
    if R == 0:
        return min_samples_basic(eps, beta, d)
    log_c = float(_log_binom(R + d - 1, R))
    return _min_samples(lambda n: log_c + log_binom_cdf(R + d - 1, n, eps), beta, R + d)


# ---------------------------------------------------------------------------
# a-posteriori risk


class _RiskEquation:
    """Log-domain evaluation of the risk equation for fixed (k, N, beta).

    The equation compares ``beta/(N+1) * sum_{m=k}^{N} C(m,k) (1-e)^(m-k)``
    with ``C(N+R, R) C(N, k) (1-e)^(N-k)``; ``log_gap`` returns the log of the
    first minus the log of the second, which has the same sign as their
    difference and is increasing in e. Several R values are handled at once.
    """

    def __init__(self, k, R, N, beta):
        self.k, self.N, self.beta = k, N, beta
        self.R = np.atleast_1d(np.asarray(R, dtype=int))
        m = np.arange(k + 1, N + 1, dtype=float)
        # log C(m, k) via t_m = t_{m-1} * m / (m - k), t_k = 1
        self.log_coef = np.concatenate(([0.0], np.cumsum(np.log(m) - np.log(m - k))))
        self.powers = np.arange(N - k + 1, dtype=float)
        self.log_lhs_const = math.log(beta) - math.log(N + 1)
        self.log_rhs_const = _log_binom(N + self.R, self.R) + float(self.log_coef[-1])

    def log_gap(self, eps):
        """Gap at ``eps``, broadcast against the R values."""
        eps, log_rhs_const = np.broadcast_arrays(np.asarray(eps, dtype=float), self.log_rhs_const)
        out = np.full(eps.shape, math.inf)
        inside = eps < 1.0
        if inside.any():
            l1p = np.log1p(-eps[inside])
            a = self.log_coef[None, :] + l1p[:, None] * self.powers[None, :]
            top = a.max(axis=1)
            lhs = self.log_lhs_const + top + np.log(np.exp(a - top[:, None]).sum(axis=1))
            out[inside] = lhs - (log_rhs_const[inside] + (self.N - self.k) * l1p)
        return out

    def __call__(self, eps):
        """Value of the equation itself (may underflow for large N)."""
        eps, log_rhs_const = np.broadcast_arrays(np.asarray(eps, dtype=float), self.log_rhs_const)
        gap = self.log_gap(eps)
        out = np.full(eps.shape, self.beta / (self.N + 1))
        inside = eps < 1.0
        log_rhs = log_rhs_const[inside] + (self.N - self.k) * np.log1p(-eps[inside])
        out[inside] = np.exp(log_rhs) * np.expm1(gap[inside])
        return out

    def solve(self):
        """Roots for every R, by simultaneous bisection on [0, 1]."""
        lo = np.zeros(self.R.shape)
        hi = np.ones(self.R.shape)
        g_lo, g_hi = self.log_gap(lo), self.log_gap(hi)
        bad = ~((g_lo < 0.0) & (g_hi > 0.0))
        if bad.any():
            R = int(self.R[bad][0])
            raise BracketingError(
                f"no sign change for k={self.k}, R={R}, N={self.N}, beta={self.beta}"
            )
        for _ in range(BISECTION_MAX_ITER):
            if np.max(hi - lo) <= BISECTION_TOL:
                break
            mid = 0.5 * (lo + hi)
            below = self.log_gap(mid) < 0.0
            lo = np.where(below, mid, lo)
            hi = np.where(below, hi, mid)
        # upper end keeps the certificate on the conservative side of the root
        return hi


def risk_equation(k, R, N, beta):
    """Callable evaluator of the risk equation (for checks and plotting)."""
    k, R, N, beta = _check_posterior(k, R, N, beta)
    return _RiskEquation(k, R, N, beta)


def _check_posterior(k, R, N, beta):
    k = _check_int("k", k, 0)
    R = _check_int("R", R, 0)
    N = _check_int("N", N, 1)
    beta = _check_prob("beta", beta)
    if k >= N:
        raise InvalidParameterError(f"need k < N, got k={k}, N={N}")
    return k, R, N, beta


def eps_discard_support(k, R, N, beta):
    """Risk certificate after observing k support constraints and removing R.

    ``N`` counts the scenarios kept after removal, so N + R were drawn.
    """
    return _eps_cached(*_check_posterior(k, R, N, beta))


@functools.lru_cache(maxsize=65536)
def _eps_cached(k, R, N, beta):
    # the removal loop asks for the same (k, R, N) over and over
    return float(_RiskEquation(k, R, N, beta).solve()[0])


def eps_wait_judge(k, N, beta):
    """Risk certificate given k support constraints and no removal."""
    return eps_discard_support(k, 0, N, beta)


class RemovalChoice(NamedTuple):
    n_removed: int
    epsilon: float
    saturated: bool


def choose_removals(k, eps_target, n_total, beta, r_max):
    """Largest R <= r_max with eps(k, R) <= eps_target.

    At each candidate R the kept-scenario count is ``n_total - R``.
    ``saturated`` is True when the search stopped at ``r_max`` (or at the
    largest R that leaves more than k scenarios) rather than at the target.
    ``epsilon`` is eps(k, n_removed).
    """
    eps_target = _check_prob("eps_target", eps_target)
    r_max = _check_int("r_max", r_max, 0)
    n_total = _check_int("n_total", n_total, 1)
    r_limit = min(r_max, n_total - k - 1)
    if r_limit < 0:
        raise InvalidParameterError(f"need k < n_total, got k={k}, n_total={n_total}")
    current = eps_discard_support(k, 0, n_total, beta)
    if current > eps_target:
        return RemovalChoice(0, current, False)
    R = 0
    while R < r_limit:
        nxt = eps_discard_support(k, R + 1, n_total - R - 1, beta)
        if nxt > eps_target:
            return RemovalChoice(R, current, False)
        R, current = R + 1, nxt
    return RemovalChoice(R, current, True)


# ---------------------------------------------------------------------------
# lookup table


@dataclass(frozen=True)
class RiskTable:
    """Precomputed eps(k, R) for k in [0, d] and R in [0, r_max].

    Row ``k`` column ``R`` of ``values`` holds the certificate for N kept
    scenarios (``n_scenarios``), matching how the table is usually read:
    N fixed, then look up the observed (k, R).
    """

    n_scenarios: int
    confidence: float
    values: np.ndarray = field(repr=False)

    @property
    def n_decision(self):
        return self.values.shape[0] - 1

    @property
    def r_max(self):
        return self.values.shape[1] - 1

    def __getitem__(self, key):
        k, R = key
        return float(self.values[k, R])

    @property
    def entries(self):
        return {(k, R): float(v) for (k, R), v in np.ndenumerate(self.values)}

    def to_csv(self, fh=None):
        """Write ``k,R,epsilon`` rows; returns the text when ``fh`` is None."""
        own = fh is None
        if own:
            fh = io.StringIO()
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["k", "R", "epsilon"])
        for (k, R), v in np.ndenumerate(self.values):
            writer.writerow([k, R, f"{v:.12g}"])
        if own:
            return fh.getvalue()
        return None


def build_risk_table(N, d, beta, r_max):
    """Solve the risk equation on the full (k, R) grid."""
    N = _check_int("N", N, 1)
    d = _check_int("d", d, 1)
    r_max = _check_int("r_max", r_max, 0)
    beta = _check_prob("beta", beta)
    if d >= N:
        raise InvalidParameterError(f"need d < N, got d={d}, N={N}")
    values = np.empty((d + 1, r_max + 1))
    for k in range(d + 1):
        try:
            values[k] = _RiskEquation(k, np.arange(r_max + 1), N, beta).solve()
        except BracketingError as exc:
            raise BracketingError(f"table row k={k}: {exc}") from exc
    values.setflags(write=False)
    return RiskTable(N, beta, values)
