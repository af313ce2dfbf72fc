"""Config parsing, rendering, output files, and the CLI contract."""

import csv
import math

import numpy as np
import pytest

from lognls import (
    ConfigError,
    SCENARIO_NAMES,
    __version__,
    format_number,
    make_grid,
    parse_config,
    render_config,
    run_scenario,
    sample_potential,
    write_outputs,
)
from lognls.cli import main
from lognls.config import config_items

FULL_CONFIG = """\
[physics]
hbar = 1.0
mass = 2.0
b = 0.75
potential = harmonic:0.5

[grid]
x_min = -30.0
x_max = 30.0
n_points = 512

[evolve]
dt = 0.002
scheme = crank-nicolson
record_every = 5
log_clamp = 1e-28
cn_tol = 1e-11
cn_max_iter = 40
n_steps = 20

[scenario]
name = free_gausson
k = 0.5
T = 3.0

[output]
dir = custom_out

[residual]
snapshots = some/snapshots.csv
t_center = 0.5
threshold = 1e-3
"""


class TestParsing:
    def test_minimal_defaults(self):
        cfg = parse_config("[scenario]\nname = superposition\n")
        assert cfg.physics.hbar == 1.0
        assert cfg.physics.mass == 1.0
        assert cfg.physics.b == 0.5
        assert cfg.physics.potential == "none"
        assert cfg.evolve.dt == 1e-3
        assert cfg.evolve.scheme == "split-step"
        assert cfg.evolve.n_steps is None
        assert cfg.grid is None
        assert cfg.output.dir == "out"
        assert cfg.scenario.options == {"x0": 8.0, "probe_dt": 1e-4, "shape_b": 0.5}

    def test_empty_text_has_no_scenario(self):
        cfg = parse_config("")
        assert cfg.scenario is None
        grid = cfg.resolve_grid()
        assert (grid.x_min, grid.x_max, grid.n_points) == (-62.83, 62.83, 1024)

    def test_full_config(self):
        cfg = parse_config(FULL_CONFIG)
        assert cfg.physics.mass == 2.0
        assert cfg.grid.n_points == 512
        assert cfg.evolve.scheme == "crank-nicolson"
        assert cfg.evolve.n_steps == 20
        assert cfg.scenario.name == "free_gausson"
        assert cfg.scenario.options["k"] == 0.5
        assert cfg.residual.snapshots == "some/snapshots.csv"
        assert cfg.residual.threshold == 1e-3

    def test_comments_and_blank_lines_ignored(self):
        cfg = parse_config("# top\n\n[physics]\n# inner\nb = 0.25\n")
        assert cfg.physics.b == 0.25

    def test_scenario_default_grids(self):
        for name, expected in (
            ("plane_wave", (0.0, 2 * math.pi, 64)),
            ("mass_sweep", (-20.0, 20.0, 1024)),
            ("knife_edge", (-64.0, 64.0, 2048)),
            ("free_gausson", (-62.83, 62.83, 1024)),
        ):
            grid = parse_config(f"[scenario]\nname = {name}\n").resolve_grid()
            assert (grid.x_min, grid.x_max, grid.n_points) == expected

    def test_explicit_grid_overrides_default(self):
        cfg = parse_config(
            "[grid]\nx_min = -5.0\nx_max = 5.0\nn_points = 32\n"
            "[scenario]\nname = mass_sweep\n"
        )
        assert cfg.resolve_grid().n_points == 32

    def test_n_steps_overrides_duration(self):
        cfg = parse_config("[evolve]\nn_steps = 50\n[scenario]\nname = free_gausson\nT = 2.0\n")
        assert cfg.evolve_config(cfg.option("T")).n_steps == 50

    def test_duration_sets_step_count(self):
        cfg = parse_config("[scenario]\nname = free_gausson\nT = 2.0\n")
        assert cfg.evolve_config(cfg.option("T")).n_steps == 2000


class TestParseErrors:
    @pytest.mark.parametrize(
        "text, line, fragment",
        [
            ("[physics]\nhbar = 1.0\nnu = 3\n", 3, "unknown key"),
            ("[warp]\nspeed = 9\n", 1, "unknown section"),
            ("[physics]\nb = 0.5\nb = 0.7\n", 3, "duplicate key"),
            ("[physics]\nb = 0.5\n[physics]\nb = 0.7\n", 3, "duplicate section"),
            ("[evolve]\ndt = fast\n", 2, "malformed number"),
            ("[evolve]\ndt = inf\n", 2, "finite"),
            ("[physics]\nb = -1.0\n", 2, "non-negative"),
            ("[physics]\nhbar = 0.0\n", 2, "positive"),
            ("[physics]\nmass = -2.0\n", 2, "positive"),
            ("[physics]\npotential = sho\n", 2, "potential"),
            ("[grid]\nx_min = 0.0\nx_max = 1.0\nn_points = 1000\n", 4, "power of two"),
            ("[grid]\nx_min = 10.0\nx_max = -10.0\nn_points = 64\n", 3, "exceed"),
            ("[grid]\nx_min = 0.0\nx_max = 1.0\n", 1, "missing key"),
            ("[evolve]\ndt = 0.0\n", 2, "positive"),
            ("[evolve]\nscheme = rk4\n", 2, "scheme"),
            ("[evolve]\nlog_clamp = 1e-3\n", 2, "log_clamp"),
            ("[evolve]\nrecord_every = -1\n", 2, ">= 0"),
            ("[evolve]\ncn_max_iter = 0\n", 2, ">= 1"),
            ("[evolve]\nn_steps = 0\n", 2, ">= 1"),
            ("[evolve]\nn_steps = 2.5\n", 2, "malformed number"),
            ("[scenario]\nname = warp_drive\n", 2, "unknown scenario"),
            ("[scenario]\nname = mass_sweep\nT = 1.0\n", 3, "unknown key"),
            ("[scenario]\nname = mass_sweep\nn_masses = 2\n", 3, ">= 3"),
            ("[scenario]\nname = mass_sweep\nmass_ratio = 1.0\n", 3, "mass_ratio"),
            ("[scenario]\nname = free_gausson\nT = -1.0\n", 3, "positive"),
            ("[scenario]\nk = 1.0\n", 1, "missing key 'name'"),
            ("[residual]\nt_center = 0.5\n", 1, "snapshots"),
            ("dt = 0.1\n", 1, "before any"),
            ("[physics]\nb 0.5\n", 2, "key = value"),
            ("[physics]\nb =\n", 2, "empty value"),
            ("[physics]\n= 0.5\n", 2, "empty key"),
        ],
    )
    def test_errors_carry_line_numbers(self, text, line, fragment):
        with pytest.raises(ConfigError) as exc:
            parse_config(text)
        assert exc.value.line == line
        assert f"line {line}:" in str(exc.value)
        assert fragment in str(exc.value)

    def test_scenario_argument_conflict(self):
        with pytest.raises(ConfigError):
            parse_config("[scenario]\nname = mass_sweep\n", scenario="plane_wave")

    def test_scenario_argument_agreement_ok(self):
        cfg = parse_config("[scenario]\nname = mass_sweep\n", scenario="mass_sweep")
        assert cfg.scenario.name == "mass_sweep"


class TestPotential:
    def test_none(self):
        grid = make_grid(0.0, 1.0, 16)
        assert sample_potential("none", grid) is None

    def test_harmonic(self):
        grid = make_grid(-2.0, 2.0, 16)
        v = sample_potential("harmonic:2.0", grid)
        assert np.allclose(v, grid.x**2)

    def test_bad_specs(self):
        grid = make_grid(0.0, 1.0, 16)
        with pytest.raises(ConfigError):
            sample_potential("coulomb", grid)
        with pytest.raises(ConfigError):
            sample_potential("harmonic:strong", grid)


class TestRoundTrip:
    @pytest.mark.parametrize(
        "text",
        [
            "[scenario]\nname = superposition\n",
            "[scenario]\nname = free_gausson\n",
            "",
            FULL_CONFIG,
            "[evolve]\nn_steps = 7\n[scenario]\nname = free_gausson\nT = 4.0\n",
        ],
    )
    def test_parse_render_parse_is_identity(self, text):
        cfg = parse_config(text)
        assert parse_config(render_config(cfg)) == cfg

    def test_every_key_rendered_once(self):
        cfg = parse_config(FULL_CONFIG)
        seen = [(s, k) for s, k, _ in config_items(cfg)]
        assert len(seen) == len(set(seen))

    def test_format_number_is_bit_exact(self):
        cases = [
            0.0, 1.0, -1.0, 1.0 / 3.0, math.pi, 1e-300, 1e300, 5e-324,
            0.1, -2.5e-8, 123456.789, 9.999999999999999e22,
        ]
        for x in cases:
            assert float(format_number(x)) == x
        neg_zero = float(format_number(-0.0))
        assert neg_zero == 0.0 and math.copysign(1.0, neg_zero) == -1.0
        assert math.isnan(float(format_number(float("nan"))))


@pytest.fixture(scope="module")
def report():
    return run_scenario(parse_config("[scenario]\nname = superposition\n"))


class TestOutputs:
    def test_results_csv_round_trips_exactly(self, report, tmp_path):
        paths = write_outputs(report, tmp_path)
        with open(paths["results"], newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader)
            rows = [[float(v) for v in row] for row in reader]
        assert header == report.columns
        assert len(rows) == len(report.rows)
        for parsed, original in zip(rows, report.rows):
            assert parsed == [float(v) for v in original]

    def test_snapshots_csv_schema(self, report, tmp_path):
        paths = write_outputs(report, tmp_path)
        with open(paths["snapshots"], newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader)
            first = next(reader)
        assert header == ["t", "x", "re", "im", "density"]
        t, x, re, im, density = map(float, first)
        assert t == 0.0
        assert density == pytest.approx(re**2 + im**2, rel=1e-12)

    def test_snapshots_not_written_without_trajectory(self, tmp_path):
        rep = run_scenario(parse_config("[scenario]\nname = mass_sweep\n"))
        paths = write_outputs(rep, tmp_path)
        assert "snapshots" not in paths
        assert not (tmp_path / "snapshots.csv").exists()

    def test_manifest_contents(self, report, tmp_path):
        paths = write_outputs(report, tmp_path)
        lines = paths["manifest"].read_text().splitlines()
        assert lines[0] == f"version = {__version__}"
        split = lines.index("criterion,measured,tolerance,pass")
        assigns = [ln.split(" = ")[0] for ln in lines[1:split]]
        assert len(assigns) == len(set(assigns))
        assert "physics.b" in assigns
        assert "scenario.name" in assigns
        assert "metric.residual_sum" in assigns
        verdict_lines = lines[split + 1:]
        assert len(verdict_lines) == len(report.verdicts)
        for ln in verdict_lines:
            name, measured, tolerance, flag = ln.split(",")
            assert flag in ("true", "false")
            float(measured)  # parses

    def test_manifest_config_echo_reparses(self, report, tmp_path):
        paths = write_outputs(report, tmp_path)
        lines = paths["manifest"].read_text().splitlines()
        split = lines.index("criterion,measured,tolerance,pass")
        body = []
        section = None
        for ln in lines[1:split]:
            key, _, value = ln.partition(" = ")
            if key.startswith("metric."):
                continue
            sec, _, name = key.partition(".")
            if sec != section:
                body.append(f"[{sec}]")
                section = sec
            body.append(f"{name} = {value}")
        assert parse_config("\n".join(body) + "\n") == report.config

    def test_nan_cells_survive_round_trip(self, tmp_path):
        rep = run_scenario(
            parse_config("[physics]\nb = 0.0\n[scenario]\nname = free_gausson\nT = 0.01\nk = 0.0\n")
        )
        paths = write_outputs(rep, tmp_path)
        with open(paths["results"], newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader)
            row = next(reader)
        assert math.isnan(float(row[header.index("l2_error")]))

    def test_reruns_are_byte_identical(self, tmp_path):
        text = "[scenario]\nname = superposition\n"
        p1 = write_outputs(run_scenario(parse_config(text)), tmp_path / "a")
        p2 = write_outputs(run_scenario(parse_config(text)), tmp_path / "b")
        assert p1["results"].read_bytes() == p2["results"].read_bytes()
        assert p1["snapshots"].read_bytes() == p2["snapshots"].read_bytes()
        assert p1["manifest"].read_bytes() == p2["manifest"].read_bytes()


class TestCli:
    def test_version(self, capsys):
        assert main(["version"]) == 0
        assert capsys.readouterr().out.strip() == __version__

    def test_list_scenarios(self, capsys):
        assert main(["list-scenarios"]) == 0
        assert capsys.readouterr().out.split() == list(SCENARIO_NAMES)

    def test_run_writes_outputs(self, tmp_path, capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("[scenario]\nname = superposition\n")
        out = tmp_path / "out"
        assert main(["run", "--config", str(cfg), "--out", str(out)]) == 0
        assert (out / "results.csv").exists()
        assert (out / "snapshots.csv").exists()
        assert (out / "manifest.txt").exists()
        assert "PASS" in capsys.readouterr().out

    def test_run_scenario_flag_without_section(self, tmp_path):
        cfg = tmp_path / "bare.cfg"
        cfg.write_text("[physics]\nb = 0.5\n")
        out = tmp_path / "out"
        assert main(["run", "--scenario", "mass_sweep", "--config", str(cfg),
                     "--out", str(out)]) == 0
        assert (out / "results.csv").exists()

    def test_run_without_any_scenario_is_usage_error(self, tmp_path, capsys):
        cfg = tmp_path / "bare.cfg"
        cfg.write_text("[physics]\nb = 0.5\n")
        assert main(["run", "--config", str(cfg)]) == 2
        assert "scenario" in capsys.readouterr().err

    def test_failed_verdict_exits_1_but_writes_files(self, tmp_path, capsys):
        cfg = tmp_path / "coarse.cfg"
        # one huge step cannot track the soliton: l2 verdict fails
        cfg.write_text(
            "[evolve]\ndt = 0.05\n[scenario]\nname = free_gausson\nT = 0.05\n"
        )
        out = tmp_path / "out"
        assert main(["run", "--config", str(cfg), "--out", str(out)]) == 1
        assert (out / "results.csv").exists()
        assert (out / "manifest.txt").exists()
        assert "FAIL" in capsys.readouterr().out

    def test_bad_config_exits_2(self, tmp_path, capsys):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("[grid]\nx_min = 10.0\nx_max = -10.0\nn_points = 64\n")
        assert main(["run", "--scenario", "mass_sweep", "--config", str(cfg)]) == 2
        assert "line 3" in capsys.readouterr().err

    def test_missing_config_exits_2(self, tmp_path, capsys):
        missing = tmp_path / "nope.cfg"
        assert main(["run", "--scenario", "mass_sweep", "--config", str(missing)]) == 2
        assert "cannot read" in capsys.readouterr().err

    def test_conflicting_scenario_names_exit_2(self, tmp_path):
        cfg = tmp_path / "conflict.cfg"
        cfg.write_text("[scenario]\nname = mass_sweep\n")
        assert main(["run", "--scenario", "plane_wave", "--config", str(cfg)]) == 2

    def test_unknown_subcommand_is_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            main(["warp"])
        assert exc.value.code == 2

    @pytest.fixture()
    def stored_snapshots(self, tmp_path):
        cfg = tmp_path / "wave.cfg"
        cfg.write_text("[scenario]\nname = plane_wave\nT = 0.1\n")
        out = tmp_path / "wave_out"
        assert main(["run", "--config", str(cfg), "--out", str(out)]) == 0
        return out / "snapshots.csv"

    def test_residual_reports_value(self, stored_snapshots, tmp_path, capsys):
        rcfg = tmp_path / "res.cfg"
        rcfg.write_text(f"[residual]\nsnapshots = {stored_snapshots}\n")
        capsys.readouterr()
        assert main(["residual", "--config", str(rcfg)]) == 0
        out = capsys.readouterr().out
        assert "pde_residual" in out

    def test_residual_threshold_exits_1(self, stored_snapshots, tmp_path, capsys):
        rcfg = tmp_path / "res.cfg"
        rcfg.write_text(
            f"[residual]\nsnapshots = {stored_snapshots}\nthreshold = 1e-12\n"
        )
        capsys.readouterr()
        assert main(["residual", "--config", str(rcfg)]) == 1
        assert "exceeds threshold" in capsys.readouterr().err

    def test_residual_without_section_exits_2(self, tmp_path, capsys):
        rcfg = tmp_path / "res.cfg"
        rcfg.write_text("[physics]\nb = 0.5\n")
        assert main(["residual", "--config", str(rcfg)]) == 2
        assert "[residual]" in capsys.readouterr().err

    def test_residual_rejects_malformed_snapshots(self, tmp_path, capsys):
        snaps = tmp_path / "bad.csv"
        snaps.write_text("t,x,density\n0.0,0.0,1.0\n")
        rcfg = tmp_path / "res.cfg"
        rcfg.write_text(f"[residual]\nsnapshots = {snaps}\n")
        assert main(["residual", "--config", str(rcfg)]) == 2
        assert "lacks columns" in capsys.readouterr().err

    def test_residual_needs_three_times(self, tmp_path, capsys):
        snaps = tmp_path / "short.csv"
        rows = ["t,x,re,im,density"]
        for t in ("0.e+00", "1.e-03"):
            for x in range(16):
                rows.append(f"{t},{float(x)!r},1.e+00,0.e+00,1.e+00")
        snaps.write_text("\n".join(rows) + "\n")
        rcfg = tmp_path / "res.cfg"
        rcfg.write_text(f"[residual]\nsnapshots = {snaps}\n")
        assert main(["residual", "--config", str(rcfg)]) == 2
        assert "at least 3" in capsys.readouterr().err
