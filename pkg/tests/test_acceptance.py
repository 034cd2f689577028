"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run on its own with ``pytest tests/test_acceptance.py -v``; the verdict
lines are written straight to the terminal (and to test_output.txt when
piped through tee).
"""
import math
import os
import time

import numpy as np
import pytest

from scenopt import presets
from scenopt.cli import main
from scenopt.grid_opf import (
    OpfProgram,
    SimulationConfig,
    build_reduced_opf,
    build_scenario_opf,
    demo_feeder,
    demo_profile,
    demo_sampler,
    generate_synthetic_feeder,
    run_four_approach_simulation,
)
from scenopt.linear_solver import solve_lp
from scenopt.risk_bounds import (
    _RiskEquation,
    beta_basic,
    beta_discard,
    build_risk_table,
    eps_discard_support,
    eps_wait_judge,
    min_samples_basic,
    min_samples_discard,
)
from scenopt.scenario_engine import find_support_set, removal_loop
from scenopt.sphere_example import (
    NORMAL_3_1,
    UNIFORM_0_1,
    SphereProgram,
    exact_quantile,
    order_statistic_mean,
    reproduce_table_one,
    table_one_config,
    trial_rng,
)

from . import oracles

JOBS = os.cpu_count() or 1


@pytest.fixture
def verdict(capsys):
    def emit(criterion, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}")
        assert ok, detail
    return emit


@pytest.fixture(scope="module")
def table_one():
    out = {}
    for preset in ("a", "b"):
        t0 = time.perf_counter()
        rows = reproduce_table_one(table_one_config(preset, trials=10000, seed=0), jobs=JOBS)
        out[preset] = (rows, time.perf_counter() - t0)
    return out


def _decimals(printed):
    return max(0, -int(math.floor(math.log10(abs(printed)))))


# 1 --------------------------------------------------------------------------


def test_criterion_1_uniform_rows(table_one, verdict):
    # Rounding a Monte Carlo mean that sits near a rounding boundary is a coin
    # flip, so the printed digit is required to be consistent with the estimate:
    # its rounding interval must meet mean +- 3 standard errors. Plain rounding
    # of the estimate is reported alongside.
    details, ok, strict = [], True, 0
    for preset, (rows, seconds) in table_one.items():
        printed = presets.TABLE_ONE_PRINTED[preset]["uniform"][1:]
        uni = [r for r in rows if r.dist == UNIFORM_0_1.label]
        for row, shown in zip(uni, printed):
            predicted = (row.n_removed + 1) / (row.n_samples + 1)
            places = _decimals(shown)
            half_unit = 0.5 * 10.0 ** -places
            close = abs(row.mean_radius - predicted) <= 1e-3
            consistent = abs(row.mean_radius - shown) <= half_unit + 3 * row.stderr
            rounds = round(row.mean_radius, places) == shown
            strict += rounds
            ok &= close and consistent
            details.append(f"{preset}/{row.approach} {row.mean_radius:.6f}+-{row.stderr:.1e} "
                           f"vs j/(N+1)={predicted:.6f}, printed {shown} (rounds to it: {rounds})")
        ok &= seconds < 60
        details.append(f"table {preset} {seconds:.1f}s")
    details.append(f"plain rounding matches {strict}/6 cells")
    verdict(1, ok, "; ".join(details))


# 2 --------------------------------------------------------------------------


def test_criterion_2_normal_rows(table_one, verdict):
    details, ok = [], True
    for preset, (rows, _) in table_one.items():
        printed = presets.TABLE_ONE_PRINTED[preset]["normal"][1:]
        for row, shown in zip([r for r in rows if r.dist == NORMAL_3_1.label], printed):
            oracle = order_statistic_mean(NORMAL_3_1, row.n_samples, row.n_removed + 1, trials=100_000)
            ok &= abs(row.mean_radius - oracle) <= 0.03
            details.append(f"{preset}/{row.approach} {row.mean_radius:.4f} oracle {oracle:.4f} printed {shown}")
    q_normal = exact_quantile(NORMAL_3_1, 0.05)
    q_uniform = exact_quantile(UNIFORM_0_1, 0.05)
    ok &= round(q_normal, 3) == 1.355 and abs(q_uniform - 0.05) < 1e-15
    details.append(f"exact {q_normal:.4f} / {q_uniform:g}")
    verdict(2, ok, "; ".join(details))


# 3 --------------------------------------------------------------------------


def test_criterion_3_figure_one(verdict):
    fig = presets.FIGURE_ONE
    N, d, beta, r_max = fig["N"], fig["d"], fig["beta"], fig["r_max"]
    t0 = time.perf_counter()
    table = build_risk_table(N, d, beta, r_max)
    seconds = time.perf_counter() - t0
    V = table.values
    mono_k = bool(np.all(np.diff(V, axis=0) >= 0))
    mono_r = bool(np.all(np.diff(V, axis=1) >= 0))
    strict = bool(np.all(np.diff(V, axis=0) > 0) and np.all(np.diff(V, axis=1) > 0))
    wj = max(abs(V[k, 0] - eps_wait_judge(k, N, beta)) for k in range(d + 1))

    bracket_ok = dual_ok = True
    Rs = np.arange(r_max + 1)
    for k in range(d + 1):
        g = _RiskEquation(k, Rs, N, beta)
        roots = V[k]
        bracket_ok &= bool(np.all(g.log_gap(roots - 1e-9) < 0) and np.all(g.log_gap(roots + 1e-9) > 0))
        # dual feasibility on {root + j * 1e-3} for every R at once, in row chunks
        steps = 1e-3 * np.arange(int(1e3 * (1 - roots.min())) + 1)
        for chunk in np.array_split(steps, max(1, steps.size // 100)):
            ups = roots[None, :] + chunk[:, None]
            inside = ups < 1.0
            gap = g.log_gap(np.where(inside, ups, 1.0))
            dual_ok &= bool(np.all(gap[inside] >= 0))
    ok = mono_k and mono_r and wj <= 1e-10 and bracket_ok and dual_ok and seconds < 10
    verdict(3, ok, f"build {seconds:.2f}s; monotone k={mono_k} R={mono_r} (strict={strict}); "
                   f"R=0 vs wait-and-judge max diff {wj:.1e}; brackets {bracket_ok}; dual grid {dual_ok}")


# 4 --------------------------------------------------------------------------


def test_criterion_4_rational_oracle(verdict):
    worst, count = 0.0, 0
    for eps in (0.05, 0.2, 0.5):
        for N in range(1, 61):
            for d in range(1, 11):
                exact = float(oracles.beta_basic_rational(N, d, eps))
                worst = max(worst, abs(beta_basic(N, d, eps) - exact) / exact)
                count += 1
                for R in range(1, 6):
                    if R + d - 1 >= N:
                        continue
                    exact = float(oracles.beta_discard_rational(N, R, d, eps))
                    worst = max(worst, abs(beta_discard(N, R, d, eps) - exact) / exact)
                    count += 1
    verdict(4, worst <= 1e-12, f"{count} evaluations, worst relative error {worst:.2e}")


# 5 --------------------------------------------------------------------------


def test_criterion_5_zero_removal_reductions(verdict):
    worst_beta = worst_eps = 0.0
    for N in (10, 30, 100, 300, 1000, 3000, 10000):
        for d in (1, 3, 9):
            if d >= N:
                continue
            for eps in (0.01, 0.05, 0.2):
                b = beta_basic(N, d, eps)
                if b > 0:
                    worst_beta = max(worst_beta, abs(beta_discard(N, 0, d, eps) - b) / b)
        for beta in (1e-1, 1e-2, 1e-3, 1e-4):
            ks = [k for k in (0, 1, 3, 9) if k < N]
            # vectorised table path against the scalar solver
            column = build_risk_table(N, max(ks), beta, 0).values[:, 0]
            for k in ks:
                wj = eps_wait_judge(k, N, beta)
                worst_eps = max(worst_eps, abs(eps_discard_support(k, 0, N, beta) - wj),
                                abs(column[k] - wj))
    ok = worst_beta <= 1e-10 and worst_eps <= 1e-10
    verdict(5, ok, f"N in 10..10000: beta rel diff {worst_beta:.1e}, eps abs diff {worst_eps:.1e}")


# 6 --------------------------------------------------------------------------


@pytest.mark.parametrize("sizing", ["basic-bound", "with-removals"])
def test_criterion_6_sphere_soundness(sizing, verdict):
    beta, eps, d, runs = 0.05, 0.10, 5, 2000
    n = min_samples_basic(eps, beta, d) if sizing == "basic-bound" else 400
    t0 = time.perf_counter()
    exceed, removed = 0, []
    for run in range(runs):
        prog = SphereProgram(UNIFORM_0_1.sample(trial_rng(6, n, run), n), np.ones(d))
        trace = removal_loop(prog, eps, beta, r_cap=n)
        removed.append(len(trace.removed))
        exceed += UNIFORM_0_1.cdf(trace.solution.radius) > trace.epsilon
    seconds = time.perf_counter() - t0
    limit = 0.05 + 3 * math.sqrt(0.0475 / runs)
    freq = exceed / runs
    ok = freq <= limit and seconds < 300
    verdict(6, ok, f"{sizing}: N={n}, removals {sorted(set(removed))}, "
                   f"P(V > eps(k,|I|)) = {freq:.4f} <= {limit:.4f}, {seconds:.1f}s")


# 7 --------------------------------------------------------------------------


def test_criterion_7_reduced_vs_full(verdict):
    rng = np.random.default_rng(77)
    worst, binding_ok, sound, checked = 0.0, True, True, 0
    for i in range(200):
        n = int(rng.integers(2, 11))
        grid = generate_synthetic_feeder(n, seed=int(rng.integers(1 << 30)),
                                         n_generators=int(rng.integers(1, min(4, n - 1) + 1)))
        S = int(rng.integers(1, 51))
        V = 1.0 + rng.normal(0, 0.01, size=(S, n))
        full = solve_lp(build_scenario_opf(grid, V))
        lp, extremes = build_reduced_opf(grid, V)
        red = solve_lp(lp)
        worst = max(worst, abs(full.objective_value - red.objective_value))
        for kind, node in red.active_set:
            col = V[:, node]
            binding_ok &= V[extremes[kind, node], node] == (col.max() if kind == "max" else col.min())
        if S <= 20:
            prog = OpfProgram(grid, V)
            active = frozenset(range(S))
            sol, obj = prog.solve(active)
            narrowed = find_support_set(prog, active, sol, obj).support_set
            prog.support_candidates = lambda s, a: a
            sound &= narrowed == find_support_set(prog, active, sol, obj).support_set
            checked += 1
    ok = worst <= 1e-9 and binding_ok and sound
    verdict(7, ok, f"200 instances, max gap {worst:.1e}; binding rows map to extremes {binding_ok}; "
                   f"candidates sound on {checked} exhaustive checks: {sound}")


# 8 --------------------------------------------------------------------------


def test_criterion_8_four_approaches(verdict):
    grid = demo_feeder()
    report = run_four_approach_simulation(grid, demo_profile(grid), demo_sampler(),
                                          SimulationConfig(seed=0), jobs=JOBS)
    std = {r.t: r for r in report.by_approach("standard")}
    new = {r.t: r for r in report.by_approach("new")}
    steps = sorted(std)
    ge = all(new[t].objective >= std[t].objective - 1e-12 for t in steps)
    strict = float(np.mean([new[t].objective > std[t].objective + 1e-9 for t in steps]))
    vf = {k: v["violation_frequency"] for k, v in report.summary()["approaches"].items()}
    b_ok = vf["expectation"] > vf["standard"] and vf["expectation"] > vf["new"]
    c_ok = all(r.fresh_rate <= r.epsilon + 3 * r.fresh_half_width
               for name in ("standard", "new") for r in report.by_approach(name))
    ok = ge and strict >= 0.5 and b_ok and c_ok and len(steps) == 41 and not report.errors
    verdict(8, ok, f"(a) new >= standard at all {len(steps)} steps: {ge}, strictly on {strict:.0%}; "
                   f"(b) violation freq expectation {vf['expectation']:.3f} vs standard "
                   f"{vf['standard']:.3f} / new {vf['new']:.3f}; (c) fresh rates within bound: {c_ok}")


# 9 --------------------------------------------------------------------------


def test_criterion_9_sample_sizes(verdict):
    ok = min_samples_basic(0.2, 0.1, 2) == 18
    rows = []
    for label, d, R in (("basic d=30", 30, 0), ("basic d=100", 100, 0),
                        ("discard d=30 r=5", 30, 5), ("discard d=100 r=17", 100, 17)):
        key = "a" if d == 30 else "b"
        preset = presets.TABLE_ONE[key]["basic" if R == 0 else "discard"][0]
        exact = min_samples_discard(0.05, 1e-3, d, R) if R else min_samples_basic(0.05, 1e-3, d)

        def bound(n):
            return math.comb(R + d - 1, R) * oracles.binom_cdf_mp(R + d - 1, n, 0.05)

        # extended-precision check that exact is the first N meeting the bound
        ok &= bound(exact) <= 1e-3 < bound(exact - 1)
        rows.append(f"{label}: exact {exact} / preset {preset} "
                    f"(bound at preset N = {float(bound(preset)):.2e})")
    verdict(9, ok, "min_samples_basic(0.2, 0.1, 2) = 18; " + "; ".join(rows))


# 10 -------------------------------------------------------------------------


def test_criterion_10_cli_determinism(tmp_path, verdict):
    commands = [
        ["bounds", "--figure1"],
        ["bounds", "--samples-for", "--eps", "0.05", "--beta", "1e-3", "--d", "30", "--format", "json"],
        ["sphere", "--table1a", "--trials", "2000", "--seed", "7"],
        ["sphere", "--table1b", "--trials", "100", "--method", "engine", "--seed", "7"],
        ["opf", "--seed", "7", "--n-fresh", "2000"],
    ]
    same = []
    for i, argv in enumerate(commands):
        a, b = tmp_path / f"{i}a.csv", tmp_path / f"{i}b.csv"
        codes = (main([*argv, "--out", str(a), "--jobs", "1"]),
                 main([*argv, "--out", str(b), "--jobs", str(max(2, JOBS))]))
        same.append(codes == (0, 0) and a.read_bytes() == b.read_bytes())
        if argv[0] == "opf":
            same[-1] &= ((tmp_path / f"{i}a.summary.json").read_bytes()
                         == (tmp_path / f"{i}b.summary.json").read_bytes())
    verdict(10, all(same), f"{sum(same)}/{len(commands)} commands byte-identical across repeated runs")
