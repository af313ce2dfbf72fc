"""Synthetic tables shaped like the runner's documented CSV schemas."""

import math

SNAPSHOT_COLUMNS = ["t", "x", "re", "im", "density"]

MASS_COLUMNS = ["mass", "sigma_measured", "sigma_analytic", "peak_density"]

FRINGE_COLUMNS = ["x", "density_linear", "density_nonlinear"]

RESIDUAL_COLUMNS = ["b", "x0", "residual_left", "residual_right", "residual_sum", "ratio"]
RESIDUAL_ROWS = [
    [0.5, 8.0, 8.1e-10, 8.1e-10, 0.306, 3.78e8],
    [0.0, 8.0, 3.1e-9, 3.1e-9, 3.1e-9, 1.0],
]


def snapshot_rows(n_times=3, n_points=8):
    """Long-format field dump: a drifting Gaussian bump."""
    rows = []
    for i in range(n_times):
        t = 0.1 * i
        for j in range(n_points):
            x = -2.0 + 0.5 * j
            re = math.exp(-((x - 0.2 * i) ** 2) / 2)
            rows.append([t, x, re, 0.0, re * re])
    return rows


def mass_rows(wobble=0.0):
    """Width-vs-mass table; wobble != 0 bends it away from a pure power law."""
    offsets = [0.013, -0.021, 0.008, 0.017, -0.011, 0.004, -0.016, 0.009]
    rows = []
    for i, off in enumerate(offsets):
        m = 2.0**i
        sigma = 0.7071067811865476 * m**-0.5 * (1.0 + wobble * off)
        rows.append([m, sigma, 0.7071067811865476 * m**-0.5, 1.0])
    return rows


def fringe_rows(n=64):
    rows = []
    for j in range(n):
        x = 8.0 * j / n
        rows.append([x, 1.0 + 0.30 * math.cos(2 * x), 1.0 + 0.45 * math.cos(2 * x)])
    return rows
