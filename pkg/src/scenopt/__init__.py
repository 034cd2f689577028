"""Scenario optimisation with support-constraint driven removal."""

__version__ = "0.1.0"

from .linear_solver import LinearProgram, LpSolution, LpStatus, solve_lp, solve_lp_excluding
from .risk_bounds import (
    BoundParams,
    InvalidParameterError,
    RiskTable,
    beta_basic,
    beta_discard,
    build_risk_table,
    choose_removals,
    eps_discard_support,
    eps_wait_judge,
    min_samples_basic,
    min_samples_discard,
)
from .scenario_engine import (
    RemovalTrace,
    ScenarioProgram,
    SupportReport,
    ViolationEstimate,
    estimate_violation,
    find_support_set,
    removal_loop,
    verify_removed_violated,
)

__all__ = [
    "BoundParams", "InvalidParameterError", "LinearProgram", "LpSolution", "LpStatus",
    "RemovalTrace", "RiskTable", "ScenarioProgram", "SupportReport", "ViolationEstimate",
    "beta_basic", "beta_discard", "build_risk_table", "choose_removals", "eps_discard_support",
    "eps_wait_judge", "estimate_violation", "find_support_set", "min_samples_basic",
    "min_samples_discard", "removal_loop", "solve_lp", "solve_lp_excluding",
    "verify_removed_violated",
]
