"""Preset parameter sets, kept in one place.

Sample sizes below are the preset ones and are used verbatim when
reproducing the sphere table; ``risk_bounds.min_samples_basic`` and
``min_samples_discard`` give the exact inversions, which differ.
"""

TABLE_ONE_EPS = 0.05
TABLE_ONE_BETA = 1e-3

# approach -> (N drawn, r removed)
TABLE_ONE = {
    "a": {"d": 30, "basic": (923, 0), "discard": (1535, 5), "new": (923, 5)},
    "b": {"d": 100, "basic": (2230, 0), "discard": (4920, 17), "new": (2230, 17)},
}

# printed table entries: dist -> (exact, basic, discard, new)
TABLE_ONE_PRINTED = {
    "a": {"normal": (1.35, -0.21, 0.31, 0.49), "uniform": (0.05, 0.001, 0.004, 0.007)},
    "b": {"normal": (1.35, -0.46, 0.31, 0.58), "uniform": (0.05, 0.0004, 0.004, 0.008)},
}

FIGURE_ONE = {"N": 1000, "d": 30, "beta": 1e-3, "r_max": 50}

OPF_EPS = 0.05
OPF_BETA = 1e-3
OPF_V_MIN = 0.95
OPF_V_MAX = 1.05
# 10:00 to 20:00 every 15 minutes
OPF_START_MINUTE = 10 * 60
OPF_STEP_MINUTES = 15
OPF_STEPS = 41

# bundled demo feeder (data/demo_feeder.json) and its synthetic day
OPF_DEMO_LINES = [(0, 1, 0.01, 0.008), (1, 2, 0.012, 0.01), (2, 3, 0.015, 0.01), (3, 4, 0.02, 0.012),
                  (2, 5, 0.015, 0.012), (5, 6, 0.02, 0.015), (1, 7, 0.018, 0.012)]
OPF_DEMO_PROFILE_SEED = 1
OPF_DEMO_LOAD_SCALE = 0.05
OPF_DEMO_NOISE_SHARED = 0.15
OPF_DEMO_NOISE_NODE = 0.25
