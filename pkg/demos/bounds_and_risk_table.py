"""
Prior bounds, sample sizes and the posterior risk table
=======================================================

How many scenarios are needed up front, and what risk can be certified
after looking at the solution.
"""

import numpy as np

from scenopt.risk_bounds import (
    beta_basic,
    beta_discard,
    build_risk_table,
    choose_removals,
    eps_wait_judge,
    min_samples_basic,
    min_samples_discard,
)

# The basic bound: probability that a program with d decision variables and
# N scenarios has risk above eps.
print("beta_basic(100, 5, 0.1) =", beta_basic(100, 5, 0.1))

# Inverting it gives the number of scenarios for a target (eps, beta).
for d in (2, 30, 100):
    print(f"d={d:3d}: N = {min_samples_basic(0.05, 1e-3, d)}")

# Removing R scenarios on purpose costs extra samples.
print("with 5 removals, d=30:", min_samples_discard(0.05, 1e-3, 30, 5))
print("beta_discard at that N:", beta_discard(min_samples_discard(0.05, 1e-3, 30, 5), 5, 30, 0.05))

# After solving we know k, the number of support constraints, and the
# certificate eps(k) is usually far better than the prior eps.
N, beta = 1000, 1e-3
for k in (1, 5, 30):
    print(f"k={k:2d}: eps(k) = {eps_wait_judge(k, N, beta):.4f}")

# The full lookup table over k and R, as stored for online use.
table = build_risk_table(N, 30, beta, 50)
print("eps(1, 0..5) =", np.round(table.values[1, :6], 4))
print("eps(30, 50)  =", round(table[30, 50], 4))

# How many removals keep a single support constraint under eps = 0.05?
print(choose_removals(1, 0.05, 923, beta, r_max=50))

# The table also goes to CSV (k,R,epsilon).
print(table.to_csv().splitlines()[:3])
