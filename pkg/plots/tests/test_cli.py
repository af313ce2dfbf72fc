import pytest

from lognls_plots import __version__
from lognls_plots.cli import main

from tables import (
    FRINGE_COLUMNS,
    MASS_COLUMNS,
    RESIDUAL_COLUMNS,
    RESIDUAL_ROWS,
    SNAPSHOT_COLUMNS,
    fringe_rows,
    mass_rows,
    snapshot_rows,
)

CASES = [
    ("heatmap", SNAPSHOT_COLUMNS, snapshot_rows()),
    ("loglog-fit", MASS_COLUMNS, mass_rows()),
    ("fringe-overlay", FRINGE_COLUMNS, fringe_rows()),
    ("residual-bars", RESIDUAL_COLUMNS, RESIDUAL_ROWS),
]


@pytest.mark.parametrize("kind,columns,rows", CASES, ids=[c[0] for c in CASES])
def test_render_each_kind(kind, columns, rows, make_csv, tmp_path, capsys):
    path = make_csv(columns, rows)
    out = tmp_path / f"{kind}.png"
    code = main(["render", "--kind", kind, "--in", str(path), "--out", str(out)])
    captured = capsys.readouterr()
    assert code == 0
    assert out.exists() and out.stat().st_size > 1000
    assert f"wrote {out}" in captured.out


def test_loglog_prints_the_annotated_slope(make_csv, tmp_path, capsys):
    path = make_csv(MASS_COLUMNS, mass_rows())
    out = tmp_path / "fit.png"
    code = main(["render", "--kind", "loglog-fit", "--in", str(path), "--out", str(out)])
    captured = capsys.readouterr()
    assert code == 0
    assert "slope = -0.5" in captured.out


def test_missing_column_exits_2_and_names_it(make_csv, tmp_path, capsys):
    rows = [[r[0], r[1]] for r in fringe_rows()]
    path = make_csv(["x", "density_linear"], rows)
    code = main(["render", "--kind", "fringe-overlay", "--in", str(path), "--out", str(tmp_path / "f.png")])
    captured = capsys.readouterr()
    assert code == 2
    assert "density_nonlinear" in captured.err


def test_unreadable_input_exits_2(tmp_path, capsys):
    code = main(["render", "--kind", "heatmap", "--in", str(tmp_path / "nope.csv"), "--out", str(tmp_path / "f.png")])
    captured = capsys.readouterr()
    assert code == 2
    assert "cannot read" in captured.err


def test_bad_output_format_exits_2(make_csv, tmp_path, capsys):
    path = make_csv(MASS_COLUMNS, mass_rows())
    code = main(["render", "--kind", "loglog-fit", "--in", str(path), "--out", str(tmp_path / "f.pdf")])
    captured = capsys.readouterr()
    assert code == 2
    assert "unsupported image format" in captured.err


def test_unknown_kind_is_a_usage_error(tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["render", "--kind", "pie", "--in", "a.csv", "--out", str(tmp_path / "f.png")])
    assert exc.value.code == 2


def test_no_command_is_a_usage_error():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert __version__ in capsys.readouterr().out


def test_cli_renders_are_deterministic(make_csv, tmp_path):
    path = make_csv(SNAPSHOT_COLUMNS, snapshot_rows())
    out1 = tmp_path / "one.png"
    out2 = tmp_path / "two.png"
    assert main(["render", "--kind", "heatmap", "--in", str(path), "--out", str(out1)]) == 0
    assert main(["render", "--kind", "heatmap", "--in", str(path), "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_dpi_changes_the_raster(make_csv, tmp_path):
    path = make_csv(FRINGE_COLUMNS, fringe_rows())
    small = tmp_path / "small.png"
    large = tmp_path / "large.png"
    assert main(["render", "--kind", "fringe-overlay", "--in", str(path), "--out", str(small), "--dpi", "50"]) == 0
    assert main(["render", "--kind", "fringe-overlay", "--in", str(path), "--out", str(large), "--dpi", "200"]) == 0
    assert large.stat().st_size > small.stat().st_size


def test_label_overrides_are_accepted(make_csv, tmp_path):
    path = make_csv(MASS_COLUMNS, mass_rows())
    code = main([
        "render", "--kind", "loglog-fit",
        "--in", str(path),
        "--out", str(tmp_path / "f.png"),
        "--title", "widths",
        "--xlabel", "m",
        "--ylabel", "s",
    ])
    assert code == 0
