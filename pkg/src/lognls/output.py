"""On-disk result formats: results.csv, snapshots.csv, manifest.txt.

Numbers are written in shortest round-trip scientific notation, so reading
them back with a standard float parser reproduces the in-memory values bit
for bit, and reruns of a deterministic scenario produce byte-identical
files.
"""

import csv
from pathlib import Path

import numpy as np

from ._version import __version__
from .config import config_items
from .scenarios import ScenarioReport

SNAPSHOT_COLUMNS = ("t", "x", "re", "im", "density")


def format_number(value) -> str:
    """Shortest scientific form that parses back to the same float."""
    return np.format_float_scientific(float(value), unique=True)


def _write_csv(path: Path, header, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_number(v) for v in row])


def write_outputs(report: ScenarioReport, out_dir) -> dict[str, Path]:
    """Write the report's files into out_dir; returns {kind: path}.

    results.csv holds the scenario's result table; snapshots.csv (written
    only when the scenario recorded a trajectory) holds the long-format
    field history; manifest.txt echoes the resolved config, the recorded
    metrics, and one `criterion,measured,tolerance,pass` line per verdict.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths: dict[str, Path] = {}

    results = out / "results.csv"
    _write_csv(results, report.columns, report.rows)
    paths["results"] = results

    if report.snapshots:
        snap_path = out / "snapshots.csv"
        with open(snap_path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(SNAPSHOT_COLUMNS)
            for snap in report.snapshots:
                t_str = format_number(snap.time)
                dens = np.abs(snap.values) ** 2
                for x, v, d in zip(snap.grid.x, snap.values, dens):
                    writer.writerow((
                        t_str,
                        format_number(x),
                        format_number(v.real),
                        format_number(v.imag),
                        format_number(d),
                    ))
        paths["snapshots"] = snap_path

    manifest = out / "manifest.txt"
    lines = [f"version = {__version__}"]
    for section, key, value in config_items(report.config):
        lines.append(f"{section}.{key} = {value}")
    for key, value in report.metrics.items():
        lines.append(f"metric.{key} = {format_number(value)}")
    lines.append("criterion,measured,tolerance,pass")
    for v in report.verdicts:
        passed = "true" if v.passed else "false"
        lines.append(f"{v.criterion},{format_number(v.measured)},{v.tolerance},{passed}")
    manifest.write_text("\n".join(lines) + "\n")
    paths["manifest"] = manifest
    return paths
