"""Chance-constrained optimal power flow on a linearised radial feeder.

Voltages follow the linear coupled model

    |V| = |V0| + diag(|V0|)^-1 (Zp (P_G + P_L) + Zq (Q_G + Q_L))

with loads entering as negative injections. The decision is an increment of
active and reactive generation per generator; the program maximises the
total increment subject to voltage limits for every sampled voltage profile.
Because the sampled profile enters additively, only the per-node extremes
over the samples matter, which keeps the linear programs small.
"""
from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import presets
from .linear_solver import LinearProgram, LpStatus, solve_lp
from .risk_bounds import min_samples_basic
from .scenario_engine import (
    ScenarioProgram,
    ScenarioSolveError,
    estimate_violation,
    removal_loop,
)

VOLTAGE_TOL = 1e-9
APPROACHES = ("optimum", "expectation", "standard", "new")


class GridModelError(ValueError):
    pass


@dataclass(frozen=True)
class Generator:
    node: int
    p_cap: float
    q_cap: float


@dataclass(frozen=True, eq=False)
class GridModel:
    n_nodes: int
    v0: np.ndarray
    zp: np.ndarray
    zq: np.ndarray
    generators: tuple = ()
    v_min: float = presets.OPF_V_MIN
    v_max: float = presets.OPF_V_MAX

    def __post_init__(self):
        n = self.n_nodes
        v0 = np.asarray(self.v0, dtype=float)
        zp = np.asarray(self.zp, dtype=float)
        zq = np.asarray(self.zq, dtype=float)
        if v0.shape != (n,) or zp.shape != (n, n) or zq.shape != (n, n):
            raise GridModelError("v0, zp, zq must have shapes (n,), (n, n), (n, n)")
        if np.any(v0 <= 0):
            raise GridModelError("no-load voltages must be positive")
        if not self.v_min < self.v_max:
            raise GridModelError("need v_min < v_max")
        gens = tuple(g if isinstance(g, Generator) else Generator(**g) for g in self.generators)
        for g in gens:
            if not 0 <= g.node < n:
                raise GridModelError(f"generator node {g.node} outside 0..{n - 1}")
        for name, value in (("v0", v0), ("zp", zp), ("zq", zq)):
            value.setflags(write=False)
            object.__setattr__(self, name, value)
        object.__setattr__(self, "generators", gens)

    @property
    def n_generators(self):
        return len(self.generators)

    @property
    def n_decision(self):
        return 2 * self.n_generators

    @property
    def gen_nodes(self):
        return np.array([g.node for g in self.generators], dtype=int)

    @property
    def sensitivity(self):
        """d|V| / d(dP_G, dQ_G), shape (n_nodes, 2 * n_generators)."""
        nodes = self.gen_nodes
        return np.hstack([self.zp[:, nodes], self.zq[:, nodes]]) / self.v0[:, None]

    def to_dict(self):
        return {
            "n_nodes": self.n_nodes,
            "v0": self.v0.tolist(),
            "zp": self.zp.tolist(),
            "zq": self.zq.tolist(),
            "v_min": self.v_min,
            "v_max": self.v_max,
            "generators": [{"node": g.node, "p_cap": g.p_cap, "q_cap": g.q_cap}
                           for g in self.generators],
        }

    def to_json(self, **kwargs):
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data):
        try:
            return cls(
                n_nodes=int(data["n_nodes"]),
                v0=data["v0"],
                zp=data["zp"],
                zq=data["zq"],
                generators=tuple(Generator(int(g["node"]), float(g["p_cap"]), float(g["q_cap"]))
                                 for g in data.get("generators", [])),
                v_min=float(data.get("v_min", presets.OPF_V_MIN)),
                v_max=float(data.get("v_max", presets.OPF_V_MAX)),
            )
        except (KeyError, TypeError) as exc:
            raise GridModelError(f"malformed grid model: {exc}") from exc

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


# ---------------------------------------------------------------------------
# feeder construction


def generate_synthetic_feeder(n_nodes, lines=None, generators=None, seed=0,
                              r_range=(0.005, 0.02), x_range=(0.005, 0.02), n_generators=3):
    """Radial feeder rooted at node 0 with common-path sensitivity matrices.

    ``lines`` is a list of ``(parent, child, r, x)``; when omitted a random
    tree with impedances drawn from the given ranges is built. ``Zp[i, j]``
    is the total resistance shared by the root paths of ``i`` and ``j``
    (likewise ``Zq`` with reactances), so both are symmetric PSD and the root
    row/column is zero.
    """
    if n_nodes < 2:
        raise GridModelError("a feeder needs at least two nodes")
    rng = np.random.default_rng(seed)
    if lines is None:
        lines = []
        for child in range(1, n_nodes):
            parent = int(rng.integers(max(0, child - 3), child))
            lines.append((parent, child, float(rng.uniform(*r_range)), float(rng.uniform(*x_range))))
    parent_of = {}
    for parent, child, r, x in lines:
        if child == 0 or child in parent_of:
            raise GridModelError(f"node {child} has more than one feeding line (not radial)")
        if not (0 <= parent < n_nodes and 0 <= child < n_nodes):
            raise GridModelError(f"line {parent}->{child} references an unknown node")
        parent_of[child] = (parent, float(r), float(x))
    if len(parent_of) != n_nodes - 1:
        raise GridModelError("a radial feeder needs exactly n_nodes - 1 lines reaching every node")

    paths = {0: {}}

    def path(node, seen=()):
        if node in paths:
            return paths[node]
        if node in seen:
            raise GridModelError("feeder contains a loop")
        parent, r, x = parent_of[node]
        p = dict(path(parent, seen + (node,)))
        p[node] = (r, x)
        paths[node] = p
        return p

    for node in range(n_nodes):
        path(node)
    zp = np.zeros((n_nodes, n_nodes))
    zq = np.zeros((n_nodes, n_nodes))
    for i in range(n_nodes):
        for j in range(i, n_nodes):
            shared = paths[i].keys() & paths[j].keys()
            zp[i, j] = zp[j, i] = sum(paths[i][e][0] for e in shared)
            zq[i, j] = zq[j, i] = sum(paths[i][e][1] for e in shared)

    if generators is None:
        nodes = rng.choice(np.arange(1, n_nodes), size=min(n_generators, n_nodes - 1), replace=False)
        generators = [Generator(int(n), 1.0, 0.5) for n in sorted(nodes)]
    return GridModel(n_nodes, np.ones(n_nodes), zp, zq, tuple(generators))


# ---------------------------------------------------------------------------
# voltage model


def _vec(x, n, name):
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != n:
        raise GridModelError(f"{name} has trailing dimension {x.shape[-1]}, expected {n}")
    return x


def voltage_from_loads(grid, p_load, q_load, p_gen=None, q_gen=None):
    """Node voltage magnitudes for nodal injections (rows = scenarios allowed)."""
    n = grid.n_nodes
    p = _vec(p_load, n, "p_load")
    q = _vec(q_load, n, "q_load")
    if p_gen is not None:
        p = p + _vec(p_gen, n, "p_gen")
    if q_gen is not None:
        q = q + _vec(q_gen, n, "q_gen")
    return grid.v0 + (p @ grid.zp.T + q @ grid.zq.T) / grid.v0


def voltage_increment(grid, voltage, dp_gen, dq_gen):
    """Voltages after per-generator increments; loads held fixed."""
    g = grid.n_generators
    dp = np.asarray(dp_gen, dtype=float)
    dq = np.asarray(dq_gen, dtype=float)
    if dp.shape != (g,) or dq.shape != (g,):
        raise GridModelError(f"increments must have {g} entries")
    voltage = _vec(voltage, grid.n_nodes, "voltage")
    return voltage + grid.sensitivity @ np.concatenate([dp, dq])


def scatter_to_nodes(grid, per_generator):
    out = np.zeros(grid.n_nodes)
    np.add.at(out, grid.gen_nodes, per_generator)
    return out


# ---------------------------------------------------------------------------
# scenario programs


@dataclass(frozen=True)
class OpfDecision:
    dp: np.ndarray
    dq: np.ndarray

    @property
    def vector(self):
        return np.concatenate([self.dp, self.dq])

    @property
    def objective(self):
        return float(self.dp.sum() + self.dq.sum())


def _box(grid, p_avail, q_avail, p_current, q_current):
    g = grid.n_generators
    p_avail = np.array([gen.p_cap for gen in grid.generators]) if p_avail is None else np.asarray(p_avail, float)
    q_avail = np.array([gen.q_cap for gen in grid.generators]) if q_avail is None else np.asarray(q_avail, float)
    p_current = np.zeros(g) if p_current is None else np.asarray(p_current, float)
    q_current = np.zeros(g) if q_current is None else np.asarray(q_current, float)
    lower = -np.concatenate([p_current, q_current])
    upper = np.concatenate([p_avail - p_current, q_avail - q_current])
    return lower, upper


def build_scenario_opf(grid, voltage_samples, p_avail=None, q_avail=None,
                       p_current=None, q_current=None):
    """One upper and one lower voltage row per node and scenario.

    Row tags are ``(scenario, node, "max" | "min")``.
    """
    V = np.atleast_2d(np.asarray(voltage_samples, dtype=float))
    S, n = V.shape
    M = grid.sensitivity
    A = np.vstack([np.vstack([M, -M]) for _ in range(S)])
    b = np.concatenate([np.concatenate([grid.v_max - V[i], V[i] - grid.v_min]) for i in range(S)])
    tags = [(i, l, kind) for i in range(S) for kind in ("max", "min") for l in range(n)]
    lower, upper = _box(grid, p_avail, q_avail, p_current, q_current)
    return LinearProgram(np.ones(grid.n_decision), A, b, lower, upper, tags)


def extreme_scenarios(voltage_samples):
    """Per-node argmax/argmin sample index (first index on ties)."""
    V = np.atleast_2d(np.asarray(voltage_samples, dtype=float))
    out = {}
    for l, i in enumerate(np.argmax(V, axis=0)):
        out[("max", l)] = int(i)
    for l, i in enumerate(np.argmin(V, axis=0)):
        out[("min", l)] = int(i)
    return out


def build_reduced_opf(grid, voltage_samples, p_avail=None, q_avail=None,
                      p_current=None, q_current=None):
    """Same optimum as :func:`build_scenario_opf` using per-node extremes only.

    Returns ``(lp, extremes)``; row tags are ``("max" | "min", node)`` and
    ``extremes`` maps each tag to the scenario attaining it.
    """
    V = np.atleast_2d(np.asarray(voltage_samples, dtype=float))
    M = grid.sensitivity
    n = grid.n_nodes
    A = np.vstack([M, -M])
    b = np.concatenate([grid.v_max - V.max(axis=0), V.min(axis=0) - grid.v_min])
    tags = [("max", l) for l in range(n)] + [("min", l) for l in range(n)]
    lower, upper = _box(grid, p_avail, q_avail, p_current, q_current)
    lp = LinearProgram(np.ones(grid.n_decision), A, b, lower, upper, tags)
    return lp, extreme_scenarios(V)


def _decision(grid, sol):
    g = grid.n_generators
    return OpfDecision(sol.x[:g].copy(), sol.x[g:].copy())


def solve_opf(grid, voltage_samples, **box):
    lp, _ = build_reduced_opf(grid, voltage_samples, **box)
    sol = solve_lp(lp)
    if sol.status is not LpStatus.OPTIMAL:
        raise ScenarioSolveError(f"OPF is {sol.status.value}")
    return _decision(grid, sol), sol.objective_value


def voltage_violated(grid, voltages, tol=VOLTAGE_TOL):
    V = np.atleast_2d(voltages)
    return (V.max(axis=1) > grid.v_max + tol) | (V.min(axis=1) < grid.v_min - tol)


class OpfProgram(ScenarioProgram):
    """Sampled voltage profiles as scenarios of the maximisation program."""

    sense = "max"

    def __init__(self, grid, voltage_samples, p_avail=None, q_avail=None,
                 p_current=None, q_current=None):
        self.grid = grid
        self.samples = np.atleast_2d(np.asarray(voltage_samples, dtype=float))
        self.box = dict(p_avail=p_avail, q_avail=q_avail, p_current=p_current, q_current=q_current)
        self.n_scenarios = self.samples.shape[0]
        self.n_decision = grid.n_decision
        self._M = grid.sensitivity

    def solve(self, active):
        idx = np.fromiter(sorted(active), dtype=int)
        if idx.size == 0:
            # no scenario constraints left: only the generator boxes bind
            lp = LinearProgram(np.ones(self.n_decision), np.zeros((0, self.n_decision)), [],
                               *_box(self.grid, **self.box))
            sol = solve_lp(lp)
        else:
            lp, _ = build_reduced_opf(self.grid, self.samples[idx], **self.box)
            sol = solve_lp(lp)
        if sol.status is not LpStatus.OPTIMAL:
            raise ScenarioSolveError(f"OPF is {sol.status.value} on {idx.size} scenarios")
        return _decision(self.grid, sol), sol.objective_value

    def scenario(self, index):
        return self.samples[index]

    def violates_sample(self, solution, sample):
        return bool(voltage_violated(self.grid, sample + self._M @ solution.vector)[0])

    def violation_mask(self, solution, samples):
        return voltage_violated(self.grid, np.atleast_2d(samples) + self._M @ solution.vector)

    def support_candidates(self, solution, active):
        idx = np.fromiter(sorted(active), dtype=int)
        if idx.size == 0:
            return frozenset()
        return frozenset(int(idx[i]) for i in extreme_scenarios(self.samples[idx]).values())


# ---------------------------------------------------------------------------
# load profiles and samplers


def step_labels(n_steps=presets.OPF_STEPS, start=presets.OPF_START_MINUTE,
                every=presets.OPF_STEP_MINUTES):
    return [f"{(start + every * t) // 60:02d}:{(start + every * t) % 60:02d}" for t in range(n_steps)]


@dataclass(frozen=True, eq=False)
class LoadProfile:
    """Expected loads and generator availability per time step.

    ``p_load``/``q_load`` are (T, n_nodes), negative for consumption;
    ``p_avail``/``q_avail`` are (T, n_generators).
    """

    p_load: np.ndarray
    q_load: np.ndarray
    p_avail: np.ndarray
    q_avail: np.ndarray

    @property
    def n_steps(self):
        return self.p_load.shape[0]


def synthetic_profile(grid, n_steps=presets.OPF_STEPS, seed=0, load_scale=0.02,
                      start=presets.OPF_START_MINUTE, every=presets.OPF_STEP_MINUTES):
    """Smooth diurnal loads and solar-like availability, plus a little noise.

    Stand-in for measured household and irradiation data.
    """
    rng = np.random.default_rng(seed)
    hours = (start + every * np.arange(n_steps)) / 60.0
    n = grid.n_nodes
    node_weight = np.r_[0.0, rng.uniform(0.6, 1.4, n - 1)]
    # morning shoulder, evening peak
    shape = 0.7 + 0.25 * np.exp(-((hours - 19.0) / 1.5) ** 2) + 0.1 * np.exp(-((hours - 12.0) / 2.0) ** 2)
    p_load = -load_scale * shape[:, None] * node_weight[None, :]
    q_load = 0.4 * p_load
    sun = np.clip(np.cos((hours - 13.0) / 7.0 * np.pi / 2), 0.0, None)
    caps_p = np.array([g.p_cap for g in grid.generators])
    caps_q = np.array([g.q_cap for g in grid.generators])
    avail = np.clip(sun[:, None] * (1 + 0.05 * rng.standard_normal((n_steps, grid.n_generators))), 0, 1)
    avail = np.maximum(avail, 0.15)  # wind keeps some output in the evening
    return LoadProfile(p_load, q_load, avail * caps_p, np.tile(caps_q, (n_steps, 1)))


@dataclass(frozen=True)
class LognormalLoadSampler:
    """Multiplicative lognormal noise with one shared factor across nodes.

    Each draw scales the expected load at every node by
    ``exp(shared * z0 + node * z_l)``, renormalised to mean one.
    """

    shared: float = 0.15
    node: float = 0.25

    def sample(self, rng, profile, step, size):
        n = profile.p_load.shape[1]
        z0 = rng.standard_normal((size, 1))
        zl = rng.standard_normal((size, n))
        var = self.shared ** 2 + self.node ** 2
        factor = np.exp(self.shared * z0 + self.node * zl - 0.5 * var)
        return profile.p_load[step] * factor, profile.q_load[step] * factor


@dataclass(frozen=True)
class ExactLoadSampler:
    """No uncertainty: every draw equals the expected load."""

    def sample(self, rng, profile, step, size):
        return (np.tile(profile.p_load[step], (size, 1)), np.tile(profile.q_load[step], (size, 1)))


@dataclass(frozen=True, eq=False)
class EmpiricalLoadSampler:
    """Bootstraps rows of a fixed table of load scenarios (e.g. from CSV)."""

    p: np.ndarray
    q: np.ndarray

    def sample(self, rng, profile, step, size):
        idx = rng.integers(0, self.p.shape[0], size)
        return self.p[idx], self.q[idx]


def read_load_csv(fh, n_nodes):
    """Columns ``p_1..p_n,q_1..q_n``, one row per scenario."""
    reader = csv.DictReader(fh)
    cols_p = [f"p_{i}" for i in range(1, n_nodes + 1)]
    cols_q = [f"q_{i}" for i in range(1, n_nodes + 1)]
    missing = [c for c in cols_p + cols_q if c not in (reader.fieldnames or [])]
    if missing:
        raise GridModelError(f"load CSV lacks columns {missing[:3]}...")
    rows = list(reader)
    p = np.array([[float(r[c]) for c in cols_p] for r in rows])
    q = np.array([[float(r[c]) for c in cols_q] for r in rows])
    return p, q


def write_load_csv(fh, p, q):
    n = p.shape[1]
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow([f"p_{i}" for i in range(1, n + 1)] + [f"q_{i}" for i in range(1, n + 1)])
    for pr, qr in zip(p, q):
        writer.writerow([repr(float(v)) for v in np.concatenate([pr, qr])])


# ---------------------------------------------------------------------------
# simulation


@dataclass
class StepRecord:
    t: int
    label: str
    approach: str
    objective: float
    v_max_true: float
    v_min_true: float
    violated: bool
    k: int | None = None
    n_removed: int | None = None
    epsilon: float | None = None
    fresh_rate: float | None = None
    fresh_half_width: float | None = None
    dp: list | None = None
    dq: list | None = None
    error: str | None = None


@dataclass
class SimulationReport:
    records: list
    n_scenarios: int
    eps: float
    beta: float
    seed: int
    approaches: tuple
    errors: list = field(default_factory=list)

    def by_approach(self, name):
        return [r for r in self.records if r.approach == name and r.error is None]

    def summary(self):
        out = {"n_scenarios": self.n_scenarios, "eps": self.eps, "beta": self.beta,
               "seed": self.seed, "n_steps": len({r.t for r in self.records}),
               "errors": list(self.errors), "approaches": {}}
        base = {r.t: r.objective for r in self.by_approach("standard")}
        for name in self.approaches:
            recs = self.by_approach(name)
            if not recs:
                continue
            vmax = np.array([r.v_max_true for r in recs])
            vmin = np.array([r.v_min_true for r in recs])
            entry = {
                "v_max_mean": float(vmax.mean()), "v_max_std": float(vmax.std()),
                "v_min_mean": float(vmin.mean()), "v_min_std": float(vmin.std()),
                "violation_frequency": float(np.mean([r.violated for r in recs])),
                "mean_objective": float(np.mean([r.objective for r in recs])),
            }
            shares = [100.0 * r.objective / base[r.t] for r in recs if base.get(r.t, 0) > 0]
            if shares:
                entry["generation_pct_of_standard"] = float(np.mean(shares))
            out["approaches"][name] = entry
        return out

    def to_csv(self, fh=None):
        own = fh is None
        if own:
            fh = io.StringIO()
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["t", "approach", "objective", "v_max_true", "v_min_true", "violated"])
        for r in self.records:
            if r.error is not None:
                writer.writerow([r.t, r.approach, "nan", "nan", "nan", ""])
                continue
            writer.writerow([r.t, r.approach, f"{r.objective:.12g}", f"{r.v_max_true:.12g}",
                             f"{r.v_min_true:.12g}", int(r.violated)])
        return fh.getvalue() if own else None


@dataclass(frozen=True)
class SimulationConfig:
    eps: float = presets.OPF_EPS
    beta: float = presets.OPF_BETA
    seed: int = 0
    approaches: tuple = APPROACHES
    n_scenarios: int | None = None  # default: sized from the basic bound
    n_fresh: int = 10_000
    r_cap: int = 50


def _step_streams(seed, t):
    ss = np.random.SeedSequence([seed, t])
    return [np.random.Generator(np.random.Philox(s)) for s in ss.spawn(3)]


def _run_step(grid, profile, sampler, config, n_scen, t):
    rng_samples, rng_truth, rng_fresh = _step_streams(config.seed, t)
    label = step_labels(profile.n_steps)[t]
    box = dict(p_avail=profile.p_avail[t], q_avail=profile.q_avail[t])
    p, q = sampler.sample(rng_samples, profile, t, n_scen)
    V = voltage_from_loads(grid, p, q)
    pt, qt = sampler.sample(rng_truth, profile, t, 1)
    v_true = voltage_from_loads(grid, pt, qt)[0]
    fresh = None
    M = grid.sensitivity
    out = []
    for name in config.approaches:
        try:
            k = n_removed = eps_cert = rate = half = None
            if name == "optimum":
                decision, obj = solve_opf(grid, v_true, **box)
            elif name == "expectation":
                decision, obj = solve_opf(grid, V.mean(axis=0), **box)
            else:
                program = OpfProgram(grid, V, **box)
                trace = removal_loop(program, config.eps, config.beta, config.r_cap,
                                     fixed_removals=0 if name == "standard" else None)
                if trace.error is not None:
                    raise ScenarioSolveError(trace.error)
                decision, obj = trace.solution, trace.objective
                k, n_removed, eps_cert = trace.k, len(trace.removed), trace.epsilon
                if config.n_fresh:
                    if fresh is None:
                        fp, fq = sampler.sample(rng_fresh, profile, t, config.n_fresh)
                        fresh = voltage_from_loads(grid, fp, fq)
                    est = estimate_violation(program, decision, fresh)
                    rate, half = est.rate, est.half_width
            v_new = v_true + M @ decision.vector
            out.append(StepRecord(t, label, name, float(obj), float(v_new.max()), float(v_new.min()),
                                  bool(voltage_violated(grid, v_new)[0]), k, n_removed, eps_cert,
                                  rate, half, decision.dp.tolist(), decision.dq.tolist()))
        except ScenarioSolveError as exc:
            out.append(StepRecord(t, label, name, math.nan, math.nan, math.nan, False,
                                  error=str(exc)))
    return out


def _run_step_packed(args):
    return _run_step(*args)


def run_four_approach_simulation(grid, profile, sampler=None, config=None, jobs=1):
    """Solve every step with each approach and score it against the realised load.

    Per step, one set of sampled voltage profiles feeds the expectation,
    standard and new approaches; the "true" load is an independent draw
    from the same sampler. Solver failures are recorded and the run goes on.
    """
    sampler = LognormalLoadSampler() if sampler is None else sampler
    config = SimulationConfig() if config is None else config
    n_scen = config.n_scenarios or min_samples_basic(config.eps, config.beta, grid.n_decision)
    tasks = [(grid, profile, sampler, config, n_scen, t) for t in range(profile.n_steps)]
    if jobs and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_run_step_packed, tasks))
    else:
        chunks = [_run_step(*task) for task in tasks]
    records = [r for chunk in chunks for r in chunk]
    errors = [f"t={r.t} {r.approach}: {r.error}" for r in records if r.error]
    return SimulationReport(records, n_scen, config.eps, config.beta, config.seed,
                            tuple(config.approaches), errors)


def demo_feeder():
    """The bundled 8-node feeder."""
    from importlib import resources

    text = resources.files("scenopt").joinpath("data/demo_feeder.json").read_text()
    return GridModel.from_json(text)


def demo_profile(grid, n_steps=presets.OPF_STEPS):
    return synthetic_profile(grid, n_steps=n_steps, seed=presets.OPF_DEMO_PROFILE_SEED,
                             load_scale=presets.OPF_DEMO_LOAD_SCALE)


def demo_sampler():
    return LognormalLoadSampler(presets.OPF_DEMO_NOISE_SHARED, presets.OPF_DEMO_NOISE_NODE)
