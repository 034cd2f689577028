"""Generic scenario programs: support detection and iterative constraint removal.

A concrete program subclasses :class:`ScenarioProgram` and implements
``solve`` over an index set of active scenarios plus a per-sample violation
test. Everything else (support sets, the removal loop with its risk
certificate, Monte Carlo violation estimates) lives here.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .risk_bounds import choose_removals, eps_discard_support

SUPPORT_RTOL = 1e-9


class ScenarioSolveError(RuntimeError):
    """A scenario subproblem could not be solved; carries the scenario context."""

    def __init__(self, message, scenario=None):
        super().__init__(message)
        self.scenario = scenario


class ScenarioProgram:
    """Convex program with one constraint per sampled scenario.

    Subclasses set ``n_scenarios``, ``n_decision`` and ``sense`` ("min" or
    "max") and implement :meth:`solve` and :meth:`violates_sample`.
    ``solve`` must be deterministic for a fixed index set and must be safe to
    call concurrently on different index sets.
    """

    n_scenarios: int
    n_decision: int
    sense = "min"

    def solve(self, active):
        """Return ``(solution, objective)`` using only scenarios in ``active``."""
        raise NotImplementedError

    def scenario(self, index):
        raise NotImplementedError

    def violates_sample(self, solution, sample):
        raise NotImplementedError

    def violates(self, solution, index):
        return bool(self.violates_sample(solution, self.scenario(index)))

    def violation_mask(self, solution, samples):
        return np.array([self.violates_sample(solution, s) for s in samples], dtype=bool)

    def support_candidates(self, solution, active):
        """Scenarios that may be support constraints; all active ones by default."""
        return active

    def improvement(self, base, new):
        """How much ``new`` improves on ``base`` (positive = better)."""
        return base - new if self.sense == "min" else new - base


@dataclass(frozen=True)
class SupportReport:
    support_set: frozenset
    objective: float
    tolerance: float
    improvements: dict = field(default_factory=dict, compare=False)

    @property
    def k(self):
        return len(self.support_set)


@dataclass
class ViolationEstimate:
    n_fresh: int
    violations: int
    ci_low: float
    ci_high: float

    @property
    def rate(self):
        return self.violations / self.n_fresh

    @property
    def half_width(self):
        return 0.5 * (self.ci_high - self.ci_low)


@dataclass
class IterationRecord:
    n_active: int
    objective: float
    k: int
    r_target: int
    removed: list
    restored: list = field(default_factory=list)


@dataclass
class RemovalTrace:
    """Everything the removal loop did, enough to audit the final certificate."""

    iterations: list
    removed: list
    support: SupportReport
    epsilon: float
    termination: str
    n_total: int
    beta: float
    eps_target: float | None
    solution: object = field(default=None, repr=False, compare=False)
    degenerate: bool = False
    error: str | None = None

    @property
    def k(self):
        return self.support.k

    @property
    def objective(self):
        return self.support.objective

    def to_dict(self):
        return {
            "n_total": self.n_total,
            "beta": self.beta,
            "eps_target": self.eps_target,
            "iterations": [asdict(it) for it in self.iterations],
            "removed": [int(i) for i in self.removed],
            "support_set": sorted(int(i) for i in self.support.support_set),
            "k": self.k,
            "objective": self.objective,
            "epsilon": self.epsilon,
            "termination": self.termination,
            "degenerate": self.degenerate,
            "error": self.error,
        }

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), **kwargs)


def find_support_set(program, active, base_solution, base_objective, mapper=map):
    """Leave-one-out support detection over the program's candidate scenarios.

    ``mapper`` lets callers fan the re-solves out (e.g. ``executor.map``).
    """
    active = frozenset(active)
    candidates = sorted(frozenset(program.support_candidates(base_solution, active)) & active)
    tol = SUPPORT_RTOL * (1.0 + abs(base_objective))

    def leave_out(i):
        try:
            return program.solve(active - {i})[1]
        except ScenarioSolveError as exc:
            raise ScenarioSolveError(f"leave-one-out solve without scenario {i}: {exc}", i) from exc

    objectives = list(mapper(leave_out, candidates))
    improvements = {}
    for i, obj in zip(candidates, objectives):
        gain = program.improvement(base_objective, obj)
        if gain > tol:
            improvements[i] = gain
    return SupportReport(frozenset(improvements), float(base_objective), tol, improvements)


def verify_removed_violated(program, solution, removed):
    """(all violated?, indices that are *not* violated)."""
    offending = [i for i in removed if not program.violates(solution, i)]
    return not offending, offending


def wilson_interval(successes, n, z=1.959963984540054):
    p = successes / n
    denom = 1.0 + z * z / n
    centre = (p + z * z / (2 * n)) / denom
    half = z / denom * math.sqrt(p * (1 - p) / n + z * z / (4 * n * n))
    return max(0.0, centre - half), min(1.0, centre + half)


def estimate_violation(program, solution, fresh_scenarios):
    """Monte Carlo violation frequency of ``solution`` on independent samples."""
    mask = np.asarray(program.violation_mask(solution, fresh_scenarios), dtype=bool)
    n = mask.size
    if n == 0:
        raise ValueError("need at least one fresh scenario")
    hits = int(mask.sum())
    lo, hi = wilson_interval(hits, n)
    return ViolationEstimate(n, hits, lo, hi)


def _is_degenerate(program, support, objective, tol):
    # an empty support set is checked too: duplicated binding scenarios land here
    try:
        _, obj = program.solve(frozenset(support))
    except ScenarioSolveError:
        return True
    return abs(obj - objective) > tol


def _pick(report, budget, exclude):
    ranked = sorted(
        (i for i in report.support_set if i not in exclude),
        key=lambda i: (-report.improvements[i], i),
    )
    return ranked[:budget]


def removal_loop(program, eps_target, beta, r_cap, n_total=None, fixed_removals=None,
                 max_iter=None, mapper=map):
    """Remove support constraints while the risk certificate stays below ``eps_target``.

    Each round solves with the removed set ``I`` excluded, observes the
    number ``k`` of support constraints, sets the removal target ``R`` as the
    largest value with eps(k, R) <= eps_target, and removes up to
    ``min(k, R - |I|)`` support constraints (largest objective gain first).
    The loop stops once ``|I|`` equals the target and every removed scenario
    is violated. Removed scenarios found satisfied afterwards are put back and
    replaced by other support constraints when possible.

    ``fixed_removals`` switches to a fixed budget (``fixed_removals=0`` is the
    plain scenario program). The final certificate is eps(k_final, |I|) with
    ``n_total - |I|`` kept scenarios.
    """
    n_total = program.n_scenarios if n_total is None else int(n_total)
    everything = frozenset(range(program.n_scenarios))
    max_iter = n_total if max_iter is None else max_iter
    removed, tried, iterations = [], set(), []
    prev_k = None
    termination = "iteration-cap"
    sol = obj = report = None

    def target(k):
        if fixed_removals is not None:
            return int(fixed_removals)
        return choose_removals(k, eps_target, n_total, beta, r_cap).n_removed

    def partial(reason, exc):
        rep = report or SupportReport(frozenset(), float("nan"), 0.0)
        return RemovalTrace(iterations, list(removed), rep, float("nan"), reason, n_total,
                            beta, eps_target, sol, error=str(exc))

    try:
        for _ in range(max_iter):
            active = everything - set(removed)
            sol, obj = program.solve(active)
            report = find_support_set(program, active, sol, obj, mapper)
            k = report.k
            r_target = target(k)
            record = IterationRecord(len(active), float(obj), k, r_target, [])
            iterations.append(record)
            if len(removed) > r_target:
                record.restored = removed[r_target:]
                tried.update(record.restored)
                del removed[r_target:]
                prev_k = k
                continue
            if len(removed) == r_target:
                all_violated, _ = verify_removed_violated(program, sol, removed)
                if all_violated and k == prev_k:
                    termination = "stable"
                else:
                    termination = "budget-reached"
                break
            if k == 0:
                termination = "no-support"
                break
            pick = _pick(report, min(k, r_target - len(removed)), tried)
            if not pick:
                termination = "no-removable-support"
                break
            removed.extend(pick)
            tried.update(pick)
            record.removed = list(pick)
            prev_k = k

        # violation repair
        while removed:
            active = everything - set(removed)
            sol, obj = program.solve(active)
            ok, offending = verify_removed_violated(program, sol, removed)
            if ok:
                break
            for i in offending:
                removed.remove(i)
            active = everything - set(removed)
            report = find_support_set(program, active, sol, obj, mapper)
            alternatives = _pick(report, len(offending), tried)
            iterations.append(IterationRecord(len(active), float(obj), report.k,
                                              len(removed) + len(offending), alternatives,
                                              list(offending)))
            if not alternatives:
                termination = "violation-repair exhausted"
                break
            removed.extend(alternatives)
            tried.update(alternatives)
            termination = "repaired"

        active = everything - set(removed)
        sol, obj = program.solve(active)
        report = find_support_set(program, active, sol, obj, mapper)
    except ScenarioSolveError as exc:
        return partial("solver-failure", exc)

    degenerate = _is_degenerate(program, report.support_set, obj, report.tolerance)
    n_kept = n_total - len(removed)
    eps = eps_discard_support(report.k, len(removed), n_kept, beta) if report.k < n_kept else 1.0
    return RemovalTrace(iterations, list(removed), report, eps, termination, n_total, beta,
                        eps_target, sol, degenerate)
