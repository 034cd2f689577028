"""Linear cost over a ball of random radius.

``min c^T x  s.t.  ||x|| <= delta`` for every sampled radius ``delta``. The
scenario solution sits on the smallest kept radius, so its violation
probability is exactly ``F(radius)`` and removing the ``j`` smallest samples
makes the ``(j+1)``-th order statistic binding. That makes this program a
cheap, exact testbed for the bounds and for the removal loop.

Radii are compared in signed form: a negative binding radius (possible with
the normal distribution) means the sampled program is infeasible, and it is
reported as such rather than hidden.
"""
from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from . import presets
from .risk_bounds import choose_removals
from .scenario_engine import ScenarioProgram, ScenarioSolveError, removal_loop


class EmptyActiveSetError(ScenarioSolveError):
    pass


@dataclass(frozen=True)
class RadiusDistribution:
    """Radius law: ``"normal"`` (mean, std) or ``"uniform"`` on (low, high).

    ``truncate`` redraws negative normal samples.
    """

    kind: str
    a: float
    b: float
    truncate: bool = False

    def __post_init__(self):
        if self.kind not in ("normal", "uniform"):
            raise ValueError(f"unknown distribution {self.kind!r}")

    @property
    def label(self):
        if self.kind == "normal":
            tag = "N({:g},{:g})".format(self.a, self.b)
            return tag + "+" if self.truncate else tag
        return "U({:g},{:g})".format(self.a, self.b)

    @property
    def _frozen(self):
        if self.kind == "normal":
            return stats.norm(self.a, self.b)
        return stats.uniform(self.a, self.b - self.a)

    def cdf(self, x):
        if self.kind == "normal" and self.truncate:
            p0 = stats.norm.cdf(0.0, self.a, self.b)
            return np.clip((self._frozen.cdf(x) - p0) / (1 - p0), 0.0, 1.0)
        return self._frozen.cdf(x)

    def ppf(self, q):
        if self.kind == "normal" and self.truncate:
            p0 = stats.norm.cdf(0.0, self.a, self.b)
            return self._frozen.ppf(p0 + np.asarray(q) * (1 - p0))
        return self._frozen.ppf(q)

    def sample(self, rng, size):
        if self.kind == "uniform":
            return rng.uniform(self.a, self.b, size)
        out = rng.normal(self.a, self.b, size)
        if self.truncate:
            bad = out < 0
            while bad.any():
                out[bad] = rng.normal(self.a, self.b, int(bad.sum()))
                bad = out < 0
        return out


NORMAL_3_1 = RadiusDistribution("normal", 3.0, 1.0)
UNIFORM_0_1 = RadiusDistribution("uniform", 0.0, 1.0)


def exact_quantile(distribution, eps):
    """Largest radius bound met with probability 1 - eps, i.e. the eps-quantile.

    Truncation is ignored here on purpose, the tabulated exact value is the
    plain normal quantile.
    """
    if not 0.0 < eps < 1.0:
        raise ValueError("eps must lie in (0, 1)")
    plain = RadiusDistribution(distribution.kind, distribution.a, distribution.b)
    return float(plain.ppf(eps))


@dataclass(frozen=True)
class SphereSolution:
    x: np.ndarray
    radius: float
    support: int


class SphereProgram(ScenarioProgram):
    sense = "min"

    def __init__(self, radii, cost):
        self.radii = np.asarray(radii, dtype=float)
        self.cost = np.asarray(cost, dtype=float)
        self.cost_norm = float(np.linalg.norm(self.cost))
        if self.cost_norm == 0.0:
            raise ValueError("cost vector must be nonzero")
        if not np.all(np.isfinite(self.radii)):
            raise ValueError("radii must be finite")
        self.n_scenarios = self.radii.size
        self.n_decision = self.cost.size

    def solve(self, active):
        idx = np.fromiter(sorted(active), dtype=int)
        if idx.size == 0:
            raise EmptyActiveSetError("sphere program needs at least one active scenario")
        j = int(idx[np.argmin(self.radii[idx])])  # argmin keeps the lowest index on ties
        r = float(self.radii[j])
        x = -r * self.cost / self.cost_norm
        return SphereSolution(x, r, j), -self.cost_norm * r

    def scenario(self, index):
        return self.radii[index]

    def violates_sample(self, solution, sample):
        return solution.radius > sample

    def violates(self, solution, index):
        return bool(solution.radius > self.radii[index])

    def violation_mask(self, solution, samples):
        return solution.radius > np.asarray(samples, dtype=float)

    def support_candidates(self, solution, active):
        return frozenset(i for i in active if self.radii[i] == solution.radius)


def solve_sphere(radii, cost, removed=()):
    """Closed-form solution ``(x, objective, support index)`` with ``removed`` dropped."""
    program = SphereProgram(radii, cost)
    active = frozenset(range(program.n_scenarios)) - frozenset(removed)
    sol, obj = program.solve(active)
    return sol.x, obj, sol.support


def violation_probability(distribution, solution):
    """Exact V(x*) = P(delta < binding radius)."""
    return float(distribution.cdf(solution.radius))


# ---------------------------------------------------------------------------
# Table I reproduction


def trial_rng(*key):
    """Counter-based stream owned by one trial."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(list(key))))


@dataclass(frozen=True)
class Approach:
    name: str
    n_samples: int
    n_removed: int | None  # None: chosen from the risk certificate


@dataclass(frozen=True)
class TableOneConfig:
    eps: float
    beta: float
    d: int
    approaches: tuple
    distributions: tuple = (NORMAL_3_1, UNIFORM_0_1)
    trials: int = 10000
    seed: int = 0
    r_cap: int = 200


@dataclass(frozen=True)
class TableOneRow:
    dist: str
    approach: str
    n_samples: int
    n_removed: int
    mean_radius: float
    stderr: float
    trials: int
    seed: int
    radii: np.ndarray | None = field(default=None, repr=False, compare=False)


def table_one_config(preset, trials=10000, seed=0, preset_budget=True):
    """Config for ``"a"`` (d=30) or ``"b"`` (d=100).

    With ``preset_budget`` the removal count of the new approach is the
    preset one; otherwise it is recomputed from the risk certificate.
    """
    p = presets.TABLE_ONE[preset]
    new_r = p["new"][1] if preset_budget else None
    approaches = (
        Approach("basic", p["basic"][0], 0),
        Approach("discard", p["discard"][0], p["discard"][1]),
        Approach("new", p["new"][0], new_r),
    )
    return TableOneConfig(presets.TABLE_ONE_EPS, presets.TABLE_ONE_BETA, p["d"], approaches,
                          trials=trials, seed=seed)


def _budget(approach, config):
    if approach.n_removed is not None:
        return approach.n_removed
    # the binding sphere is the only support constraint
    return choose_removals(1, config.eps, approach.n_samples, config.beta, config.r_cap).n_removed


def _trial_seed(config, dist_index, approach_index):
    return [config.seed, dist_index, approach_index]


def _closed_form_radii(dist, n, r, config, di, ai):
    out = np.empty(config.trials)
    base = _trial_seed(config, di, ai)
    for t in range(config.trials):
        rng = trial_rng(*base, t)
        sample = dist.sample(rng, n)
        out[t] = np.partition(sample, r)[r]
    return out


def _engine_radii(dist, approach, config, di, ai):
    out = np.empty(config.trials)
    base = _trial_seed(config, di, ai)
    cost = np.ones(config.d)
    for t in range(config.trials):
        rng = trial_rng(*base, t)
        program = SphereProgram(dist.sample(rng, approach.n_samples), cost)
        trace = removal_loop(program, config.eps, config.beta, config.r_cap,
                             fixed_removals=approach.n_removed)
        out[t] = trace.solution.radius
    return out


def _table_cell(args):
    config, method, di, ai = args
    dist, approach = config.distributions[di], config.approaches[ai]
    r = _budget(approach, config)
    if method == "engine":
        resolved = Approach(approach.name, approach.n_samples, r)
        radii = _engine_radii(dist, resolved, config, di, ai)
    else:
        radii = _closed_form_radii(dist, approach.n_samples, r, config, di, ai)
    stderr = float(radii.std(ddof=1) / np.sqrt(radii.size)) if radii.size > 1 else float("inf")
    return TableOneRow(dist.label, approach.name, approach.n_samples, r, float(radii.mean()),
                       stderr, config.trials, config.seed, radii)


def reproduce_table_one(config, method="closed-form", jobs=1):
    """Mean binding radius per distribution and approach.

    ``method="engine"`` drives every trial through the generic removal loop;
    the default uses the order-statistic shortcut, which gives identical radii
    for identical seeds and is much faster. Cells may run in ``jobs``
    processes; results do not depend on it.
    """
    if method not in ("closed-form", "engine"):
        raise ValueError(f"unknown method {method!r}")
    cells = [(config, method, di, ai)
             for di in range(len(config.distributions))
             for ai in range(len(config.approaches))]
    if jobs and jobs > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, len(cells))) as pool:
            return list(pool.map(_table_cell, cells))
    return [_table_cell(c) for c in cells]


def table_one_exact_rows(config):
    return [TableOneRow(d.label, "exact", 0, 0, exact_quantile(d, config.eps), 0.0, 0, config.seed)
            for d in config.distributions]


TABLE_ONE_COLUMNS = ["dist", "approach", "N", "r", "mean_radius", "stderr", "trials", "seed"]


def table_one_csv(rows, fh=None):
    own = fh is None
    if own:
        fh = io.StringIO()
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(TABLE_ONE_COLUMNS)
    for row in rows:
        if row.approach == "exact":
            writer.writerow([row.dist, row.approach, "", "", f"{row.mean_radius:.6g}", "", "", row.seed])
        else:
            writer.writerow([row.dist, row.approach, row.n_samples, row.n_removed,
                             f"{row.mean_radius:.6g}", f"{row.stderr:.3g}", row.trials, row.seed])
    return fh.getvalue() if own else None


def order_statistic_mean(distribution, n, j, trials=100_000, seed=12345):
    """Monte Carlo mean of the j-th smallest of n draws, via a Beta(j, n-j+1) quantile draw.

    Independent of the sorting path used by :func:`reproduce_table_one`.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    u = rng.beta(j, n - j + 1, trials)
    return float(np.mean(distribution.ppf(u)))
