"""Figure builders: one function per figure id, CSV in, matplotlib out.

Rendering is read-only over its inputs and deterministic: identical CSVs and
styling produce identical images.
"""

import csv
import pathlib
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


class RenderError(ValueError):
    pass


@dataclass(frozen=True)
class FigureSpec:
    figure: str                  # fig2 | fig3b | fig5 | fig6 | fig8
    in_dir: pathlib.Path
    out_dir: pathlib.Path
    style: dict = field(default_factory=dict)


def read_csv_columns(path, required):
    """Load a schema CSV as a dict of float arrays; names missing columns."""
    path = pathlib.Path(path)
    if not path.exists():
        raise RenderError(f"missing input: {path}")
    with open(path) as fh:
        rows = [r for r in csv.reader(fh) if r and not r[0].startswith("#")]
    if not rows:
        raise RenderError(f"empty CSV: {path}")
    header, body = rows[0], rows[1:]
    missing = [c for c in required if c not in header]
    if missing:
        raise RenderError(f"{path}: missing columns {missing}")
    if not body:
        raise RenderError(f"{path}: no data rows")
    data = np.array(body, dtype=float)
    return {c: data[:, header.index(c)] for c in header}


def _run_dirs(in_dir):
    subs = sorted(d for d in pathlib.Path(in_dir).iterdir()
                  if d.is_dir() and (d / "trace.csv").exists())
    if not subs:
        raise RenderError(f"no run subdirectories with trace.csv under {in_dir}")
    return subs


def build_fig2(in_dir, style):
    """Velocity variation vs circle radius, with 5% and 10% guide lines."""
    data = read_csv_columns(pathlib.Path(in_dir) / "sigma.csv", ["R", "sigma_u"])
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ax.semilogx(data["R"], data["sigma_u"], "o-", label="velocity variation")
    for level, ls in ((0.10, "--"), (0.05, ":")):
        ax.axhline(level, linestyle=ls, color="gray", label=f"{level:.0%}")
    ax.set_xlabel("circle radius R (um)")
    ax.set_ylabel("max relative variation")
    ax.legend()
    return fig


def build_fig3b(in_dir, style):
    """Tracked-point trajectory overlay, one series per method run."""
    fig, ax = plt.subplots(figsize=(5, 3.5))
    for sub in _run_dirs(in_dir):
        data = read_csv_columns(sub / "trace.csv", ["t", "x_ymax"])
        ax.plot(data["t"], data["x_ymax"], label=sub.name)
    ax.set_xlabel("t (s)")
    ax.set_ylabel("x of the topmost point (um)")
    ax.legend()
    return fig


def build_fig5(in_dir, style):
    """ECM nodes: initial lattice as x-markers, final positions as dots."""
    data = read_csv_columns(pathlib.Path(in_dir) / "positions_ecm.csv",
                            ["t", "node", "x", "y"])
    t0, t1 = data["t"].min(), data["t"].max()
    first = data["t"] == t0
    last = data["t"] == t1
    fig, ax = plt.subplots(figsize=(4.5, 4.5))
    ax.scatter(data["x"][first], data["y"][first], marker="x", color="black",
               label=f"t = {t0:g} s")
    ax.scatter(data["x"][last], data["y"][last], marker="o",
               facecolors="none", edgecolors="tab:red", label=f"t = {t1:g} s")
    ax.set_xlabel("x (um)")
    ax.set_ylabel("y (um)")
    ax.set_aspect("equal")
    ax.legend()
    return fig


def build_fig6(in_dir, style):
    """Nucleus displacement vs time, one series per stiffness run."""
    fig, ax = plt.subplots(figsize=(5, 3.5))
    for sub in _run_dirs(in_dir):
        data = read_csv_columns(sub / "trace.csv", ["t", "displacement"])
        ax.plot(data["t"], data["displacement"], label=sub.name)
    ax.set_xlabel("t (s)")
    ax.set_ylabel("nucleus displacement (um)")
    ax.legend()
    return fig


def build_fig8(in_dir, style):
    """Pressure profiles: rows are runs, columns are shared sample times."""
    runs = sorted(d for d in pathlib.Path(in_dir).iterdir() if d.is_dir())
    profiles = {}
    for run in runs:
        files = sorted(run.glob("pressure_*.csv"))
        times = {}
        for f in files:
            label = f.stem.split("_", 1)[1]
            times[float(label)] = f
        if times:
            profiles[run.name] = times
    if not profiles:
        raise RenderError(f"no pressure_<time>.csv files under {in_dir}")
    common = sorted(set.intersection(*(set(t) for t in profiles.values())))
    if not common:
        raise RenderError("runs share no sample times")
    n_rows, n_cols = len(profiles), len(common)
    fig, axes = plt.subplots(n_rows, n_cols, squeeze=False, sharey="row",
                             figsize=(2.5 * n_cols, 2.2 * n_rows))
    for i, (name, times) in enumerate(sorted(profiles.items())):
        for j, t in enumerate(common):
            data = read_csv_columns(times[t], ["y", "p"])
            ax = axes[i][j]
            ax.plot(data["y"], data["p"])
            ax.set_title(f"{name}, t = {t:g} s", fontsize=8)
            if j == 0:
                ax.set_ylabel("p (Pa)")
            if i == n_rows - 1:
                ax.set_xlabel("y (um)")
    fig.tight_layout()
    return fig


FIGURES = {"fig2": build_fig2, "fig3b": build_fig3b, "fig5": build_fig5,
           "fig6": build_fig6, "fig8": build_fig8}


def render(spec):
    """Build the requested figure and write <figure>.png; returns the path."""
    if spec.figure not in FIGURES:
        raise RenderError(f"unknown figure {spec.figure!r}; "
                          f"expected one of {sorted(FIGURES)}")
    fig = FIGURES[spec.figure](spec.in_dir, spec.style)
    out_dir = pathlib.Path(spec.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    out = out_dir / f"{spec.figure}.png"
    fig.savefig(out, dpi=spec.style.get("dpi", 150))
    plt.close(fig)
    return out
