"""
Support constraints and the removal loop
========================================

Any program that can solve over a subset of scenarios plugs into the engine.
Here: a two-variable LP with one random halfspace per scenario.
"""

import numpy as np

from scenopt.linear_solver import LinearProgram, solve_lp
from scenopt.scenario_engine import (
    ScenarioProgram,
    estimate_violation,
    find_support_set,
    removal_loop,
)


class Halfspaces(ScenarioProgram):
    sense = "max"

    def __init__(self, A, b):
        self.A, self.b = A, b
        self.n_scenarios, self.n_decision = A.shape

    def solve(self, active):
        idx = sorted(active)
        lp = LinearProgram(np.ones(2), self.A[idx], self.b[idx], [-10, -10], [10, 10])
        sol = solve_lp(lp)
        return sol.x, sol.objective_value

    def scenario(self, i):
        return self.A[i], self.b[i]

    def violates_sample(self, x, sample):
        a, b = sample
        return a @ x > b + 1e-9


rng = np.random.default_rng(1)
A = np.abs(rng.normal(size=(300, 2))) + 0.1
b = rng.uniform(1, 2, 300)
program = Halfspaces(A, b)

# Support constraints: those whose removal improves the objective.
everything = frozenset(range(300))
x, obj = program.solve(everything)
report = find_support_set(program, everything, x, obj)
print("objective", obj, "support", sorted(report.support_set))

# Remove support constraints while the certificate stays below 0.1.
trace = removal_loop(program, eps_target=0.1, beta=1e-3, r_cap=30)
print("removed", trace.removed, "termination", trace.termination)
print("objective", trace.objective, "certificate", round(trace.epsilon, 4))

# The trace is plain JSON for auditing.
print(trace.to_json()[:200], "...")

# Fresh samples estimate the true violation probability.
fresh_A = np.abs(rng.normal(size=(20000, 2))) + 0.1
fresh_b = rng.uniform(1, 2, 20000)
est = estimate_violation(program, trace.solution, list(zip(fresh_A, fresh_b)))
print(f"fresh violation rate {est.rate:.4f} [{est.ci_low:.4f}, {est.ci_high:.4f}]")
