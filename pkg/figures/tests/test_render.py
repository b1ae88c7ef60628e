"""Figure pipeline tests over synthetic schema-conforming CSVs."""

import numpy as np
import pytest

from stokesfig import FigureSpec, render
from stokesfig.cli import main
from stokesfig.render import FIGURES, RenderError, read_csv_columns

UNITS = "# units: um, s, pN, Pa\n"


def write_csv(path, header, rows):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        fh.write(UNITS)
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(f"{v:.17g}" for v in row) + "\n")


@pytest.fixture
def sigma_dir(tmp_path):
    rows = [(10.0 ** k, 0.3 / k) for k in range(1, 9)]
    write_csv(tmp_path / "sigma.csv", ["R", "sigma_u"], rows)
    return tmp_path


@pytest.fixture
def method_runs_dir(tmp_path):
    t = np.linspace(0, 0.5, 20)
    for name, slope in (("none", 40.0), ("meanzero", -15.0), ("circle", -14.0)):
        write_csv(tmp_path / name / "trace.csv", ["t", "x_ymax"],
                  zip(t, 10 + slope * t))
    return tmp_path


@pytest.fixture
def motility_dir(tmp_path):
    rng = np.random.default_rng(0)
    nodes = rng.uniform(-2, 2, size=(20, 2))
    rows = []
    for t in (0.0, 1.0, 2.0):
        for i, (x, y) in enumerate(nodes + 0.01 * t):
            rows.append((t, i, x, y))
    write_csv(tmp_path / "positions_ecm.csv", ["t", "node", "x", "y"], rows)
    write_csv(tmp_path / "trace.csv", ["t", "displacement"],
              [(0.0, 0.0), (2.0, 0.4)])
    return tmp_path


@pytest.fixture
def sweep_dir(tmp_path):
    t = np.linspace(0, 2, 15)
    for name, scale in (("k10", 0.15), ("k25", 0.18), ("k50", 0.20),
                        ("rigid", 0.23)):
        write_csv(tmp_path / name / "trace.csv", ["t", "displacement"],
                  zip(t, scale * t))
    return tmp_path


@pytest.fixture
def pressure_dir(tmp_path):
    y = np.linspace(-15, 15, 40)
    for run, p0 in (("r990", 28.0), ("r985", 40.0)):
        for t in (0.0, 0.1, 1.0, 5.0):
            p = p0 * np.exp(-np.abs(y) / 10) * (1 - 0.05 * t)
            write_csv(tmp_path / run / f"pressure_{t:g}.csv", ["y", "p"],
                      zip(y, p))
    return tmp_path


class TestBuilders:
    def test_fig2_series_and_guides(self, sigma_dir):
        fig = FIGURES["fig2"](sigma_dir, {})
        ax = fig.axes[0]
        assert len(ax.lines) == 3  # data series plus two guide levels
        guides = sorted(line.get_ydata()[0] for line in ax.lines[1:])
        assert guides == [0.05, 0.10]

    def test_fig3b_three_labeled_series(self, method_runs_dir):
        fig = FIGURES["fig3b"](method_runs_dir, {})
        ax = fig.axes[0]
        labels = sorted(line.get_label() for line in ax.lines)
        assert labels == ["circle", "meanzero", "none"]

    def test_fig5_initial_markers_and_final_points(self, motility_dir):
        fig = FIGURES["fig5"](motility_dir, {})
        ax = fig.axes[0]
        assert len(ax.collections) == 2
        for coll in ax.collections:
            assert coll.get_offsets().shape == (20, 2)

    def test_fig6_stiffness_family(self, sweep_dir):
        fig = FIGURES["fig6"](sweep_dir, {})
        labels = sorted(line.get_label() for line in fig.axes[0].lines)
        assert labels == ["k10", "k25", "k50", "rigid"]

    def test_fig8_grid_two_by_four(self, pressure_dir):
        fig = FIGURES["fig8"](pressure_dir, {})
        assert len(fig.axes) == 8
        for ax in fig.axes:
            assert len(ax.lines) == 1


class TestRender:
    def test_writes_image(self, sigma_dir, tmp_path):
        out = render(FigureSpec("fig2", sigma_dir, tmp_path / "img"))
        assert out.exists() and out.suffix == ".png"
        assert out.stat().st_size > 1000

    def test_deterministic(self, sigma_dir, tmp_path):
        a = render(FigureSpec("fig2", sigma_dir, tmp_path / "a"))
        b = render(FigureSpec("fig2", sigma_dir, tmp_path / "b"))
        assert a.read_bytes() == b.read_bytes()

    def test_inputs_untouched(self, sigma_dir, tmp_path):
        before = (sigma_dir / "sigma.csv").read_bytes()
        render(FigureSpec("fig2", sigma_dir, tmp_path / "img"))
        assert (sigma_dir / "sigma.csv").read_bytes() == before

    def test_unknown_figure(self, sigma_dir, tmp_path):
        with pytest.raises(RenderError):
            render(FigureSpec("fig99", sigma_dir, tmp_path))

    def test_missing_column_named(self, tmp_path):
        write_csv(tmp_path / "sigma.csv", ["R", "wrong"], [(10.0, 0.1)])
        with pytest.raises(RenderError, match="sigma_u"):
            render(FigureSpec("fig2", tmp_path, tmp_path / "img"))

    def test_empty_series_rejected(self, tmp_path):
        (tmp_path / "sigma.csv").write_text(UNITS + "R,sigma_u\n")
        with pytest.raises(RenderError, match="no data rows"):
            render(FigureSpec("fig2", tmp_path, tmp_path / "img"))


class TestCsvReader:
    def test_skips_units_comment(self, sigma_dir):
        data = read_csv_columns(sigma_dir / "sigma.csv", ["R", "sigma_u"])
        assert len(data["R"]) == 8

    def test_missing_file(self, tmp_path):
        with pytest.raises(RenderError, match="missing input"):
            read_csv_columns(tmp_path / "nope.csv", ["a"])


class TestCli:
    def test_end_to_end(self, sigma_dir, tmp_path, capsys):
        code = main(["--spec", "fig2", "--in", str(sigma_dir),
                     "--out", str(tmp_path / "img")])
        assert code == 0
        assert (tmp_path / "img" / "fig2.png").exists()

    def test_bad_spec_is_usage_error(self, sigma_dir, tmp_path):
        assert main(["--spec", "fig9", "--in", str(sigma_dir),
                     "--out", str(tmp_path)]) == 2

    def test_render_error_exit_code(self, tmp_path, capsys):
        assert main(["--spec", "fig2", "--in", str(tmp_path),
                     "--out", str(tmp_path / "img")]) == 1
        assert "error" in capsys.readouterr().err
