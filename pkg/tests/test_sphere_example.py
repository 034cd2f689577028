import csv
import io

import numpy as np
import pytest
from scipy import stats

from scenopt.scenario_engine import find_support_set
from scenopt.sphere_example import (
    NORMAL_3_1,
    UNIFORM_0_1,
    Approach,
    EmptyActiveSetError,
    RadiusDistribution,
    SphereProgram,
    TableOneConfig,
    exact_quantile,
    order_statistic_mean,
    reproduce_table_one,
    solve_sphere,
    table_one_config,
    table_one_csv,
    table_one_exact_rows,
    trial_rng,
    violation_probability,
)


def test_smallest_radius_binds():
    x, obj, j = solve_sphere([2.0, 1.0, 3.0], [3.0, 4.0])
    assert np.linalg.norm(x) == pytest.approx(1.0)
    assert j == 1
    assert obj == pytest.approx(-5.0)
    assert np.allclose(x, [-0.6, -0.8])


def test_removal_exposes_next_order_statistic():
    x, _, j = solve_sphere([2.0, 1.0, 3.0], [1.0], removed=[1])
    assert np.linalg.norm(x) == pytest.approx(2.0) and j == 0


def test_ties_pick_lowest_index():
    assert solve_sphere([1.0, 0.5, 0.5], [1.0])[2] == 1


def test_empty_active_set():
    with pytest.raises(EmptyActiveSetError):
        solve_sphere([1.0], [1.0], removed=[0])


def test_zero_cost_rejected():
    with pytest.raises(ValueError):
        SphereProgram([1.0], [0.0, 0.0])


def test_engine_support_is_argmin():
    rng = np.random.default_rng(0)
    for _ in range(10):
        radii = rng.normal(3, 1, 50)
        prog = SphereProgram(radii, np.ones(5))
        active = frozenset(range(50))
        sol, obj = prog.solve(active)
        assert find_support_set(prog, active, sol, obj).support_set == {int(np.argmin(radii))}


@pytest.mark.parametrize("dist,eps,expected", [
    (UNIFORM_0_1, 0.05, 0.05),
    (NORMAL_3_1, 0.05, 3 + stats.norm.ppf(0.05)),
    (NORMAL_3_1, 0.5, 3.0),
    (UNIFORM_0_1, 0.5, 0.5),
])
def test_exact_quantile(dist, eps, expected):
    assert exact_quantile(dist, eps) == pytest.approx(expected, abs=1e-12)


def test_exact_quantile_normal_value():
    assert round(exact_quantile(NORMAL_3_1, 0.05), 3) == 1.355


def test_truncated_normal_is_positive_and_exact_quantile_ignores_truncation():
    trunc = RadiusDistribution("normal", 0.5, 1.0, truncate=True)
    assert np.all(trunc.sample(np.random.default_rng(0), 10_000) >= 0)
    assert exact_quantile(trunc, 0.05) == pytest.approx(0.5 + stats.norm.ppf(0.05))
    assert trunc.label == "N(0.5,1)+"


def test_violation_probability_is_cdf():
    prog = SphereProgram([0.2, 0.4], [1.0])
    sol, _ = prog.solve(frozenset({0, 1}))
    assert violation_probability(UNIFORM_0_1, sol) == pytest.approx(0.2)


def test_binding_radius_is_order_statistic():
    cfg = TableOneConfig(0.05, 1e-3, 3, (Approach("discard", 40, 4),), (UNIFORM_0_1,),
                         trials=20, seed=3)
    row = reproduce_table_one(cfg)[0]
    for t, radius in enumerate(row.radii):
        sample = UNIFORM_0_1.sample(trial_rng(3, 0, 0, t), 40)
        assert radius == np.sort(sample)[4]


def test_engine_and_closed_form_identical():
    cfg = TableOneConfig(0.05, 1e-3, 5,
                         (Approach("basic", 200, 0), Approach("discard", 300, 3), Approach("new", 200, None)),
                         trials=8, seed=11)
    fast = reproduce_table_one(cfg, "closed-form")
    slow = reproduce_table_one(cfg, "engine")
    for a, b in zip(fast, slow):
        assert a.n_removed == b.n_removed
        assert np.array_equal(a.radii, b.radii)


def test_jobs_do_not_change_results():
    cfg = table_one_config("a", trials=50, seed=1)
    serial = reproduce_table_one(cfg)
    parallel = reproduce_table_one(cfg, jobs=3)
    assert [r.mean_radius for r in serial] == [r.mean_radius for r in parallel]


def test_computed_budget_for_small_table():
    cfg = table_one_config("a", trials=5, preset_budget=False)
    assert cfg.approaches[2].n_removed is None
    rows = reproduce_table_one(cfg)
    assert rows[2].n_removed == 5


def test_csv_layout():
    cfg = table_one_config("a", trials=3, seed=9)
    text = table_one_csv(table_one_exact_rows(cfg) + reproduce_table_one(cfg))
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["dist", "approach", "N", "r", "mean_radius", "stderr", "trials", "seed"]
    assert len(rows) == 1 + 2 + 6
    assert rows[1][:4] == ["N(3,1)", "exact", "", ""]
    assert all(r[-1] == "9" for r in rows[1:])


def test_single_trial_has_infinite_stderr():
    cfg = table_one_config("a", trials=1)
    assert all(np.isinf(r.stderr) for r in reproduce_table_one(cfg))


def test_order_statistic_oracle_on_uniform():
    # Beta(j, n - j + 1) mean is j / (n + 1)
    assert order_statistic_mean(UNIFORM_0_1, 99, 5) == pytest.approx(0.05, abs=5e-4)
