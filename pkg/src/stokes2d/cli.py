"""Command-line front end for sweeps and scenario runs.

Subcommands:

    sigma-sweep      velocity variation on the large circle vs radius
    bounds           feasible large-circle radius interval
    tethered         tethered-points relaxation run
    motility         protrusion-cycle motility run
    blebbing         bleb expansion run
    compare-methods  one scenario under every paradox treatment

Every run writes CSV series plus a manifest.json sufficient to reproduce
it. Exit codes: 0 success, 1 runtime error, 2 usage error.
"""

import argparse
import math
import pathlib
import sys

import numpy as np

from . import __version__, output
from .blebbing import run_blebbing
from .config import ConfigError, config_echo, default_config, parse_config
from .constraints import (MU_WATER, Method, RadiusBoundsInput,
                          InfeasibleRadiusBounds, radius_bounds, sigma_u)
from .motility import run_motility
from .scenarios import NonFiniteStateError
from .tethered import run_tethered

UNITS = "units: um, s, pN, Pa"

_METHOD_NAMES = sorted(m.value for m in Method)


def _parse_radii(raw):
    """Radius grid: either 'A..B' (decade steps, inclusive) or 'a,b,c'."""
    if ".." in raw:
        lo, hi = (float(s) for s in raw.split("..", 1))
        if not (lo > 0 and hi >= lo):
            raise ValueError(f"bad radius range {raw!r}")
        k0 = round(math.log10(lo))
        k1 = round(math.log10(hi))
        return [10.0 ** k for k in range(k0, k1 + 1)]
    radii = [float(s) for s in raw.split(",") if s.strip()]
    if not radii:
        raise ValueError(f"no radii in {raw!r}")
    return radii


def _outdir(args):
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write(out, name, series, manifest):
    path = out / name
    output.write_timeseries(path, series, units_comment=UNITS)
    manifest.add_file(path, len(series))


def cmd_sigma_sweep(args):
    out = _outdir(args)
    series = output.TimeSeries(columns=["R", "sigma_u"])
    f0 = np.array([1.0, 0.0])
    for R in _parse_radii(args.radii):
        series.append(R, sigma_u(R, args.n_points, f0, MU_WATER))
    manifest = output.RunManifest(
        {"command": "sigma-sweep", "n_points": args.n_points,
         "radii": args.radii}, seed=None, code_version=__version__)
    _write(out, "sigma.csv", series, manifest)
    manifest.finalize(out / "manifest.json")
    return 0


def cmd_bounds(args):
    inp = RadiusBoundsInput(rho=args.rho, v=args.v, mu=args.mu,
                            re_max=args.re_max,
                            sigma_threshold=args.sigma_threshold)
    r_min, r_max = radius_bounds(inp, N=args.n_points)
    print(f"R_min = {r_min:g} um  (velocity variation <= "
          f"{inp.sigma_threshold:g} on the circle)")
    print(f"R_max = {r_max:g} um  (Reynolds number <= {inp.re_max:g} "
          f"for rho={inp.rho:g} kg/m^3, v={inp.v:g} m/s, mu={inp.mu:g} Pa-s)")
    return 0


def _load_config(args, scenario):
    if args.config is not None:
        cfg = parse_config(args.config, scenario=scenario)
    else:
        cfg = default_config(scenario)
    if args.method is not None:
        cfg.method = {m.value: m for m in Method}[args.method]
    if args.radius is not None:
        cfg.radius = args.radius
    if args.seed is not None:
        cfg.seed = args.seed
    if getattr(args, "rigid", False):
        cfg.motility.rigid = True
    if getattr(args, "rigid_mode", None) is not None:
        cfg.motility.rigid_mode = args.rigid_mode
    return cfg.validate()


def _run_tethered(cfg, out):
    result = run_tethered(cfg)
    manifest = output.RunManifest(config_echo(cfg), cfg.seed, __version__)
    _write(out, "trace.csv", result.trace, manifest)
    _write(out, "positions_points.csv", result.positions, manifest)
    manifest.finalize(out / "manifest.json")


def _run_motility(cfg, out):
    result = run_motility(cfg)
    manifest = output.RunManifest(config_echo(cfg), cfg.seed, __version__)
    _write(out, "trace.csv", result.trace, manifest)
    _write(out, "positions_cortex.csv", result.cortex_positions, manifest)
    _write(out, "positions_nucleus.csv", result.nucleus_positions, manifest)
    _write(out, "positions_ecm.csv", result.ecm_positions, manifest)
    events = output.TimeSeries(columns=["kind", "t", "node"])
    for ev in result.events:
        events.append(ev.kind, ev.t, ev.node)
    _write(out, "events.csv", events, manifest)
    manifest.finalize(out / "manifest.json")


def _run_blebbing(cfg, out):
    result = run_blebbing(cfg)
    manifest = output.RunManifest(config_echo(cfg), cfg.seed, __version__)
    _write(out, "trace.csv", result.trace, manifest)
    mem = output.positions_series()
    cor = output.positions_series()
    for t in sorted(result.shapes):
        m_nodes, c_nodes = result.shapes[t]
        output.record_positions(mem, t, m_nodes)
        output.record_positions(cor, t, c_nodes)
    _write(out, "positions_membrane.csv", mem, manifest)
    _write(out, "positions_cortex.csv", cor, manifest)
    for t in sorted(result.pressures):
        y, p = result.pressures[t]
        prof = output.TimeSeries(columns=["y", "p"])
        for yi, pi in zip(y, p):
            prof.append(yi, pi)
        _write(out, f"pressure_{t:g}.csv", prof, manifest)
    manifest.finalize(out / "manifest.json")


_RUNNERS = {"tethered": _run_tethered, "motility": _run_motility,
            "blebbing": _run_blebbing}


def cmd_scenario(args):
    cfg = _load_config(args, args.command)
    _RUNNERS[args.command](cfg, _outdir(args))
    return 0


def cmd_compare_methods(args):
    """Run the configured scenario once per method, one subdirectory each."""
    cfg = parse_config(args.config)
    out = _outdir(args)
    for method in Method:
        sub_cfg = parse_config(args.config)
        sub_cfg.method = method
        sub = out / method.value
        sub.mkdir(parents=True, exist_ok=True)
        _RUNNERS[cfg.scenario](sub_cfg.validate(), sub)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="stokes2d",
        description="2D regularized-Stokeslet simulations with net-force "
                    "paradox treatments")
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    sweep = subs.add_parser("sigma-sweep",
                            help="velocity variation on the circle vs radius")
    sweep.add_argument("--n-points", type=int, default=100,
                       help="circle sample count (default 100)")
    sweep.add_argument("--radii", default="1e1..1e8",
                       help="'A..B' decade range or comma list (default 1e1..1e8)")
    sweep.add_argument("--out", default=".", help="output directory")
    sweep.set_defaults(func=cmd_sigma_sweep)

    bounds = subs.add_parser("bounds",
                             help="feasible large-circle radius interval")
    bounds.add_argument("--rho", type=float, default=1000.0,
                        help="fluid density, kg/m^3 (default 1000)")
    bounds.add_argument("--v", type=float, default=1e-6,
                        help="characteristic speed, m/s (default 1e-6)")
    bounds.add_argument("--mu", type=float, default=MU_WATER,
                        help="viscosity, Pa-s (default water)")
    bounds.add_argument("--re-max", type=float, default=0.1,
                        help="Reynolds-number cap (default 0.1)")
    bounds.add_argument("--sigma-threshold", type=float, default=0.10,
                        help="velocity-variation cap (default 0.10)")
    bounds.add_argument("--n-points", type=int, default=100,
                        help="circle sample count (default 100)")
    bounds.set_defaults(func=cmd_bounds)

    for name in ("tethered", "motility", "blebbing"):
        run = subs.add_parser(name, help=f"run the {name} scenario")
        run.add_argument("--config", help="INI config file (defaults if omitted)")
        run.add_argument("--method", choices=_METHOD_NAMES,
                         help="paradox treatment override")
        run.add_argument("--radius", type=float,
                         help="large-circle radius override, um")
        run.add_argument("--seed", type=int, help="RNG seed override")
        run.add_argument("--out", required=True, help="output directory")
        if name == "motility":
            run.add_argument("--rigid", action="store_true",
                             help="treat the ECM as rigid")
            run.add_argument("--rigid-mode", choices=("frozen", "no-slip"),
                             help="rigid-ECM variant (default frozen)")
        run.set_defaults(func=cmd_scenario)

    cmp_ = subs.add_parser("compare-methods",
                           help="run one scenario under every method")
    cmp_.add_argument("--config", required=True, help="INI config file")
    cmp_.add_argument("--out", required=True, help="output directory")
    cmp_.set_defaults(func=cmd_compare_methods)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 0
    try:
        return args.func(args)
    except (ConfigError, InfeasibleRadiusBounds, NonFiniteStateError,
            ValueError, OSError) as exc:
        print(f"stokes2d: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
