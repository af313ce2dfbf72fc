"""Figure rendering for the CSV files the lognls runner writes.

Each figure kind maps one documented CSV schema onto one image:

    heatmap         snapshots.csv (t, x, density)        space-time density map
    loglog-fit      mass_sweep results.csv               width vs mass with fitted slope
    fringe-overlay  knife_edge results.csv               linear and nonlinear density
    residual-bars   superposition results.csv            per-state residual magnitudes

Only the named columns are consumed, so the figures can be produced on a
machine that holds nothing but the run outputs. Rendering is deterministic:
the same CSVs yield byte-identical images (no timestamps are embedded).
"""

import csv
from dataclasses import dataclass
from pathlib import Path

import matplotlib
import numpy as np
from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

KINDS = ("heatmap", "loglog-fit", "fringe-overlay", "residual-bars")

REQUIRED_COLUMNS = {
    "heatmap": ("t", "x", "density"),
    "loglog-fit": ("mass", "sigma_measured"),
    "fringe-overlay": ("x", "density_linear", "density_nonlinear"),
    "residual-bars": ("residual_left", "residual_right", "residual_sum"),
}

IMAGE_SUFFIXES = (".png", ".svg")

# title, xlabel, ylabel used when the spec leaves them unset
_DEFAULT_LABELS = {
    "heatmap": ("density evolution", "x", "t"),
    "loglog-fit": ("soliton width vs mass", "mass", "sigma"),
    "fringe-overlay": ("fringe overlay, linear vs nonlinear", "x", "density"),
    "residual-bars": ("equation residuals", "run", "residual (normalized max)"),
}

# pins the ids matplotlib generates inside SVG output
_SVG_SALT = "lognls-plots"


class SchemaError(ValueError):
    """A figure spec or its CSV inputs do not fit the requested kind."""


@dataclass
class FigureSpec:
    """One figure: a kind, its input CSVs, and where the image goes.

    Labels left as None fall back to per-kind defaults. Output format is
    chosen by the file extension (.png or .svg; formats that would embed
    a creation time are refused to keep rendering deterministic).
    """

    kind: str
    inputs: tuple[str, ...]
    out: str
    title: str | None = None
    xlabel: str | None = None
    ylabel: str | None = None
    dpi: int = 110

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SchemaError(
                f"unknown figure kind {self.kind!r} (choose from {', '.join(KINDS)})"
            )
        self.inputs = tuple(str(p) for p in self.inputs)
        if len(self.inputs) != 1:
            raise SchemaError(
                f"{self.kind} takes exactly one input csv, got {len(self.inputs)}"
            )
        suffix = Path(self.out).suffix.lower()
        if suffix not in IMAGE_SUFFIXES:
            raise SchemaError(
                f"unsupported image format {suffix!r} (use one of {', '.join(IMAGE_SUFFIXES)})"
            )
        if self.dpi < 10:
            raise SchemaError(f"dpi must be >= 10, got {self.dpi}")


def read_table(path) -> dict[str, np.ndarray]:
    """Load a CSV into named float columns.

    Raises SchemaError on an unreadable or empty file, a header with no data
    rows, or a cell that does not parse as a number.
    """
    try:
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header is None:
                raise SchemaError(f"{path} is empty")
            rows = list(reader)
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}")
    if not rows:
        raise SchemaError(f"{path} has a header but no data rows")
    table = {}
    for j, name in enumerate(header):
        try:
            table[name] = np.array([float(row[j]) for row in rows])
        except (ValueError, IndexError):
            raise SchemaError(
                f"column '{name}' of {path} has a missing or non-numeric entry"
            )
    return table


def _require(table, kind, path):
    missing = [c for c in REQUIRED_COLUMNS[kind] if c not in table]
    if missing:
        raise SchemaError(
            f"{path} lacks columns: {', '.join(missing)} (required by {kind})"
        )


def render(spec: FigureSpec) -> dict:
    """Draw the figure described by spec and write it to spec.out.

    Returns the values annotated onto the figure (fit coefficients, peak
    heights, grid shape), so callers can check what the image claims.
    """
    path = spec.inputs[0]
    table = read_table(path)
    _require(table, spec.kind, path)

    fig = Figure(figsize=(6.4, 4.8))
    FigureCanvasAgg(fig)
    ax = fig.subplots()
    notes = _DRAWERS[spec.kind](fig, ax, table, path)

    title, xlabel, ylabel = _DEFAULT_LABELS[spec.kind]
    ax.set_title(spec.title if spec.title is not None else title)
    ax.set_xlabel(spec.xlabel if spec.xlabel is not None else xlabel)
    ax.set_ylabel(spec.ylabel if spec.ylabel is not None else ylabel)

    out = Path(spec.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    with matplotlib.rc_context({"svg.hashsalt": _SVG_SALT}):
        if out.suffix.lower() == ".svg":
            fig.savefig(out, metadata={"Date": None})
        else:
            fig.savefig(out, dpi=spec.dpi)
    return notes


def fit_powerlaw(x, y) -> tuple[float, float, float]:
    """Least-squares slope and intercept of ln(y) against ln(x), plus r^2."""
    if x.size < 2:
        raise SchemaError(f"a log-log fit needs at least 2 rows, got {x.size}")
    if np.any(x <= 0) or np.any(y <= 0):
        raise SchemaError("log-log fit needs strictly positive values")
    lx, ly = np.log(x), np.log(y)
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = ly - (slope * lx + intercept)
    total = ly - ly.mean()
    ss_tot = float(total @ total)
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - float(resid @ resid) / ss_tot
    return float(slope), float(intercept), r2


def _draw_heatmap(fig, ax, table, path):
    t, x, density = table["t"], table["x"], table["density"]
    times = np.unique(t)
    xs = np.unique(x)
    if times.size < 2:
        raise SchemaError(f"{path} holds a single time, a heatmap needs at least 2")
    complete = t.size == times.size * xs.size
    grid = np.full((times.size, xs.size), np.nan)
    grid[np.searchsorted(times, t), np.searchsorted(xs, x)] = density
    if not complete or np.isnan(grid).any():
        raise SchemaError(
            f"{path} rows do not form a full time-by-position grid"
        )
    im = ax.imshow(
        grid,
        extent=[xs[0], xs[-1], times[0], times[-1]],
        origin="lower",
        aspect="auto",
    )
    fig.colorbar(im, ax=ax, label="density")
    return {"n_times": int(times.size), "n_points": int(xs.size)}


def _draw_loglog_fit(fig, ax, table, path):
    mass = table["mass"]
    sigma = table["sigma_measured"]
    slope, intercept, r2 = fit_powerlaw(mass, sigma)
    ax.loglog(mass, sigma, "o", label="measured")
    ax.loglog(
        mass,
        np.exp(intercept) * mass**slope,
        "-",
        label=f"fit: slope = {slope:.4f}",
    )
    # reference power law anchored on the first point
    ax.loglog(
        mass,
        sigma[0] * (mass / mass[0]) ** -0.5,
        "--",
        label="reference: slope = -1/2",
    )
    ax.legend()
    return {"slope": slope, "intercept": intercept, "r2": r2}


def _draw_fringe_overlay(fig, ax, table, path):
    x = table["x"]
    linear = table["density_linear"]
    nonlinear = table["density_nonlinear"]
    ax.plot(x, linear, label="linear (b = 0)")
    ax.plot(x, nonlinear, label="nonlinear")
    ax.legend()
    return {
        "peak_linear": float(linear.max()),
        "peak_nonlinear": float(nonlinear.max()),
    }


def _draw_residual_bars(fig, ax, table, path):
    left = table["residual_left"]
    right = table["residual_right"]
    total = table["residual_sum"]
    idx = np.arange(left.size)
    width = 0.25
    ax.bar(idx - width, left, width, label="left state")
    ax.bar(idx, right, width, label="right state")
    ax.bar(idx + width, total, width, label="summed state")
    ax.set_yscale("log")
    if "b" in table and "x0" in table:
        labels = [f"b={b:g}\nx0={x0:g}" for b, x0 in zip(table["b"], table["x0"])]
    else:
        labels = [str(i) for i in idx]
    ax.set_xticks(idx, labels)
    ax.legend()
    notes = {"n_rows": int(left.size)}
    if "ratio" in table:
        notes["max_ratio"] = float(table["ratio"].max())
    return notes


_DRAWERS = {
    "heatmap": _draw_heatmap,
    "loglog-fit": _draw_loglog_fit,
    "fringe-overlay": _draw_fringe_overlay,
    "residual-bars": _draw_residual_bars,
}
