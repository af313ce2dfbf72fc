"""Command-line interface.

Commands:
    run --scenario <name> --config <path> [--out <dir>]   run one scenario
    list-scenarios                                        print the names
    residual --config <path>                              residual of stored snapshots
    version                                               print the version

Exit codes: 0 all verdicts passed, 1 a verdict failed or the computation
broke down, 2 configuration or IO problems. Results and the manifest are
written before the exit code is decided, so a failing run still leaves its
evidence on disk.
"""

import argparse
import csv
import sys
from pathlib import Path

from ._version import __version__
from .config import SCENARIO_NAMES, parse_config
from .core import WaveField, make_grid
from .errors import ConfigError, LognlsError
from .evolve import pde_residual
from .output import SNAPSHOT_COLUMNS, write_outputs
from .scenarios import run_scenario


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lognls",
        description="Logarithmic Schrodinger equation scenario runner",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run a scenario and write its outputs")
    run_p.add_argument("--scenario", help="scenario name (may also come from the config)")
    run_p.add_argument("--config", required=True, help="path to a config file")
    run_p.add_argument("--out", help="output directory (overrides [output] dir)")

    sub.add_parser("list-scenarios", help="print the available scenario names")

    res_p = sub.add_parser(
        "residual", help="evaluate the equation residual on stored snapshots"
    )
    res_p.add_argument("--config", required=True, help="config with a [residual] section")

    sub.add_parser("version", help="print the package version")
    return parser


def _read_config(path: str, scenario: str | None = None):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}")
    return parse_config(text, scenario=scenario)


def _cmd_run(args) -> int:
    cfg = _read_config(args.config, scenario=args.scenario)
    if cfg.scenario is None:
        raise ConfigError("no scenario given (use --scenario or a [scenario] section)")
    report = run_scenario(cfg)
    out_dir = args.out if args.out is not None else cfg.output.dir
    paths = write_outputs(report, out_dir)
    status = "PASS" if report.passed else "FAIL"
    print(f"scenario {report.name}: {status}")
    for v in report.verdicts:
        mark = "pass" if v.passed else "FAIL"
        print(f"  {v.criterion} = {v.measured:.6g}  ({v.tolerance})  {mark}")
    print("wrote " + ", ".join(str(p) for p in paths.values()))
    return 0 if report.passed else 1


def _load_snapshots(path: str):
    """Read a snapshots.csv back into WaveFields (grouped by time)."""
    try:
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header is None:
                raise ConfigError(f"snapshots file {path!r} is empty")
            missing = [c for c in SNAPSHOT_COLUMNS[:4] if c not in header]
            if missing:
                raise ConfigError(
                    f"snapshots file {path!r} lacks columns: {', '.join(missing)}"
                )
            col = {name: header.index(name) for name in header}
            blocks: list[tuple[float, list, list]] = []
            for row in reader:
                t = float(row[col["t"]])
                if not blocks or blocks[-1][0] != t:
                    blocks.append((t, [], []))
                blocks[-1][1].append(float(row[col["x"]]))
                blocks[-1][2].append(
                    complex(float(row[col["re"]]), float(row[col["im"]]))
                )
    except OSError as exc:
        raise ConfigError(f"cannot read snapshots {path!r}: {exc}")
    except ValueError as exc:
        raise ConfigError(f"bad number in snapshots {path!r}: {exc}")
    if len(blocks) < 3:
        raise ConfigError(
            f"need at least 3 recorded times for a residual, found {len(blocks)}"
        )
    xs = blocks[0][1]
    n = len(xs)
    dx = xs[1] - xs[0]
    grid = make_grid(xs[0], xs[0] + n * dx, n)
    fields = [
        WaveField(grid=grid, values=values, time=t) for t, _, values in blocks
    ]
    return fields


def _cmd_residual(args) -> int:
    cfg = _read_config(args.config)
    if cfg.residual is None:
        raise ConfigError("residual command needs a [residual] section")
    fields = _load_snapshots(cfg.residual.snapshots)
    times = [f.time for f in fields]
    if cfg.residual.t_center is None:
        center = len(fields) // 2
        center = min(max(center, 1), len(fields) - 2)
    else:
        target = cfg.residual.t_center
        center = min(
            range(1, len(fields) - 1), key=lambda i: abs(times[i] - target)
        )
    params = cfg.physical_params(fields[center].grid)
    value = pde_residual(
        fields[center - 1], fields[center], fields[center + 1], params,
        log_clamp=cfg.evolve.log_clamp,
    )
    print(f"pde_residual = {value:.6e} at t = {times[center]:g}")
    if cfg.residual.threshold is not None and value > cfg.residual.threshold:
        print(
            f"residual exceeds threshold {cfg.residual.threshold:g}",
            file=sys.stderr,
        )
        return 1
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "list-scenarios":
            for name in SCENARIO_NAMES:
                print(name)
            return 0
        if args.command == "residual":
            return _cmd_residual(args)
        print(__version__)
        return 0
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 2
    except LognlsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry():
    raise SystemExit(main())
