"""End-to-end validation battery.

Each test covers one headline claim and emits one PASS/FAIL line (visible
with `pytest -v`; the printed lines also appear under `-s` or on failure).
The scenario fixtures are module-scoped because the underlying runs take
seconds to minutes; everything downstream of a fixture is pure inspection.
"""

import numpy as np
import pytest
from scipy.spatial.distance import cdist

import stokes2d as s2
from stokes2d import blebbing, kernels, linalg
from stokes2d.config import default_config
from stokes2d.constraints import (MU_WATER, CorrectionConfig, Method,
                                  circle_points)
from stokes2d.kernels import FluidParams, PointForceSet
from stokes2d.structures import ecm_force
from stokes2d.tethered import initial_points


def check(name, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'}: {name}"
    if detail:
        line += f"  [{detail}]"
    print(line)
    assert ok, line


# ---------------------------------------------------------------- diagnostics

def test_sigma_u_thresholds():
    f0 = np.array([1.0, 0.0])
    s3 = s2.sigma_u(1e3, 100, f0, MU_WATER)
    s5 = s2.sigma_u(1e5, 100, f0, MU_WATER)
    sweep = [s2.sigma_u(10.0 ** k, 100, f0, MU_WATER) for k in range(1, 9)]
    ok = s3 < 0.10 and s5 < 0.05 and sweep == sorted(sweep, reverse=True)
    check("velocity variation: sigma(1e3) < 10%, sigma(1e5) < 5%, monotone",
          ok, f"sigma(1e3)={s3:.4f}, sigma(1e5)={s5:.4f}")


def test_radius_bounds_reference_values():
    bounds = s2.radius_bounds(s2.RadiusBoundsInput(rho=1e3, v=1e-6, mu=1e-3))
    check("feasible circle radius interval is exactly (1e3, 1e5) um",
          bounds == (1e3, 1e5), f"got {bounds}")


def test_circle_average_quadrature_oracle():
    f0 = np.array([1.0, 0.5])
    worst = 0.0
    for R in (1e3, 1e5):
        pts = circle_points(R, 10_000)
        r2 = np.sum(pts * pts, axis=1)
        u = (-f0[None, :] * 0.5 * np.log(r2)[:, None]
             + (pts @ f0)[:, None] * pts / r2[:, None]) / (4 * np.pi)
        closed = s2.mean_circle_velocity(f0, 1.0, R)
        worst = max(worst, np.linalg.norm(u.mean(axis=0) - closed)
                    / np.linalg.norm(closed))
    check("quadrature mean over the circle matches closed form to 1e-6",
          worst < 1e-6, f"worst rel err {worst:.2e}")


def test_velocity_decomposition_at_initial_ring():
    cfg = default_config("tethered")
    pts, ar, al = initial_points(cfg.tethered)
    forces = s2.tether_force(pts, ar, al, cfg.tethered.k_teth)
    src = PointForceSet(pts, forces)
    params = FluidParams(1.0, cfg.eps)
    u_eps = kernels.superpose_velocity(np.zeros((1, 2)), src, params)[0, 0]
    u_r = s2.correction_velocity(src, 1.0, 1e3)[0]
    ok = 115 <= u_eps <= 135 and -330 <= u_r <= -320
    check("initial-ring velocity decomposition: u_eps in [115,135], "
          "u_R in [-330,-320]", ok, f"u_eps={u_eps:.1f}, u_R={u_r:.1f}")


# ------------------------------------------------------------ tethered points

def _tethered(method, radius):
    cfg = default_config("tethered")
    cfg.method = Method(method)
    cfg.radius = radius
    return s2.run_tethered(cfg)


@pytest.fixture(scope="module")
def tethered_runs():
    return {(m, R): _tethered(m, R)
            for m, R in [("none", 1e3), ("meansub", 1e3),
                         ("meanzero", 1e3), ("meanzero", 1e5),
                         ("circle", 1e3), ("circle", 1e5)]}


def test_tethered_uncorrected_drifts_positive(tethered_runs):
    trace = tethered_runs[("none", 1e3)].trace
    t = np.array(trace.column("t"))
    x = np.array(trace.column("x_ymax"))
    tail = x[t >= 0.1 * t[-1]]
    check("uncorrected tethered ring drifts monotonically in +x",
          np.all(np.diff(tail) > 0), f"x: {tail[0]:.1f} -> {tail[-1]:.1f}")


def test_tethered_meanzero_reaches_center(tethered_runs):
    worst = max(abs(np.mean(tethered_runs[("meanzero", R)].final_points[:, 0]))
                for R in (1e3, 1e5))
    check("corrected tethered ring relaxes to |x| < 0.5 um (R=1e3 and 1e5)",
          worst < 0.5, f"worst |center x| {worst:.3f} um")


def test_tethered_meansub_is_frozen(tethered_runs):
    x = tethered_runs[("meansub", 1e3)].trace.column("x_ymax")
    check("mean-force subtraction freezes the tethered ring",
          len(set(x)) == 1, f"x_ymax constant at {x[0]:.4f}")


def test_tethered_circle_tracks_meanzero(tethered_runs):
    r = default_config("tethered").tethered.radius
    gaps = {}
    for R, tol in ((1e3, 0.07), (1e5, 0.03)):
        xm = np.array(tethered_runs[("meanzero", R)].trace.column("x_ymax"))
        xc = np.array(tethered_runs[("circle", R)].trace.column("x_ymax"))
        n = min(len(xm), len(xc))
        gaps[R] = np.abs(xm[:n] - xc[:n]).max() / r
    ok = gaps[1e3] <= 0.07 and gaps[1e5] <= 0.03
    check("explicit-circle trajectory gap <= 7% of r at R=1e3, <= 3% at 1e5",
          ok, f"gaps {gaps[1e3]:.3f}, {gaps[1e5]:.3f}")


# ------------------------------------------------------------------- motility

def _motility(k_teth=None, rigid=False, method="meanzero", smoke=False):
    cfg = default_config("motility")
    cfg.method = Method(method)
    if smoke:
        cfg.motility.n_cortex = 40
        cfg.motility.n_nucleus = 20
    if rigid:
        cfg.motility.rigid = True
        cfg.motility.rigid_mode = "no-slip"
    else:
        cfg.motility.k_teth = k_teth
    return s2.run_motility(cfg)


@pytest.fixture(scope="module")
def motility_sweep():
    runs = {k: _motility(k_teth=k) for k in (10.0, 25.0, 50.0)}
    runs["rigid"] = _motility(rigid=True)
    return runs


@pytest.fixture(scope="module")
def motility_smoke_sweep():
    runs = {k: _motility(k_teth=k, smoke=True) for k in (10.0, 25.0, 50.0)}
    runs["rigid"] = _motility(rigid=True, smoke=True)
    return runs


def _final_displacements(runs):
    # all runs share t_end and each stops only once motion has settled after
    # its release, so the last recorded displacement is the value at the
    # common final time t_end
    return {key: r.trace.rows[-1][1] for key, r in runs.items()}


def test_motility_displacement_ordering(motility_sweep):
    d = _final_displacements(motility_sweep)
    seq = [d[10.0], d[25.0], d[50.0]]
    ok = seq == sorted(seq) and d["rigid"] >= max(seq)
    check("nucleus displacement non-decreasing in ECM stiffness, rigid max",
          ok, "disp " + ", ".join(f"{v:.4f}" for v in seq)
          + f", rigid {d['rigid']:.4f}")


def test_motility_rigid_cycle_time(motility_sweep):
    releases = [e.t for e in motility_sweep["rigid"].events
                if e.kind == "release"]
    ok = len(releases) == 1 and 1.36 * 0.85 <= releases[0] <= 1.36 * 1.15
    check("rigid-ECM protrusion cycle completes at 1.36 s +- 15%",
          ok, f"release at {releases[0]:.3f} s" if releases else "no release")


def test_motility_smoke_preserves_ordering(motility_smoke_sweep):
    d = _final_displacements(motility_smoke_sweep)
    seq = [d[10.0], d[25.0], d[50.0]]
    ok = seq == sorted(seq) and d["rigid"] >= max(seq)
    check("half-resolution smoke run preserves the stiffness ordering",
          ok, "disp " + ", ".join(f"{v:.4f}" for v in seq)
          + f", rigid {d['rigid']:.4f}")


# --------------------------------------------- artificial equilibrium (ECM)

@pytest.fixture(scope="module")
def ecm_fate_runs():
    return {"meansub": _motility(k_teth=50.0, method="meansub"),
            "meanzero": _motility(k_teth=50.0, method="meanzero")}


def test_meansub_common_displacement_magnitude(ecm_fate_runs):
    r = ecm_fate_runs["meansub"]
    disp = r.final_ecm - r.initial_ecm
    common = np.linalg.norm(disp.mean(axis=0))
    check("mean-force subtraction leaves a common ECM shift > 0.05 um",
          common > 0.05, f"common shift {common:.4f} um")


def test_meansub_displacement_uniformity(ecm_fate_runs):
    r = ecm_fate_runs["meansub"]
    disp = r.final_ecm - r.initial_ecm
    mean = disp.mean(axis=0)
    spread = np.linalg.norm(disp - mean, axis=1).max() / np.linalg.norm(mean)
    ok = np.linalg.norm(mean) > 0 and spread < 0.10
    check("mean-force subtraction shift is common to all nodes (10%)",
          ok, f"norm {np.linalg.norm(mean):.4f} um, spread {spread:.1%}")


def test_meanzero_nodes_return_home(ecm_fate_runs):
    r = ecm_fate_runs["meanzero"]
    worst = np.linalg.norm(r.final_ecm - r.initial_ecm, axis=1).max()
    check("mean-zero correction returns every ECM node within 0.1 um",
          worst < 0.1, f"worst node displacement {worst:.4f} um")


# ------------------------------------------------------------------- blebbing

def _blebbing(r_cortex, t_end):
    cfg = default_config("blebbing")
    cfg.blebbing.r_cortex = r_cortex
    cfg.t_end = t_end
    cfg.blebbing.sample_times = (0.0, 0.1, 1.0, 5.0, 10.0)
    return s2.run_blebbing(cfg)


@pytest.fixture(scope="module")
def bleb_tense():
    return _blebbing(9.90, 10.0)


@pytest.fixture(scope="module")
def bleb_slack():
    return _blebbing(9.85, 5.0)


def _pressure_at(result, t_target):
    t = np.array(result.trace.column("t"))
    p = np.array(result.trace.column("p_center"))
    return p[np.argmin(np.abs(t - t_target))]


def test_bleb_pressure_constant_when_cortex_tense(bleb_tense):
    p0 = _pressure_at(bleb_tense, 0.0)
    p10 = _pressure_at(bleb_tense, 10.0)
    rel = abs(p10 - p0) / abs(p0)
    check("cortex rest radius 9.90: center pressure constant to 5% over 10 s",
          rel < 0.05, f"p {p0:.2f} -> {p10:.2f} Pa ({rel:.1%})")


def test_bleb_pressure_drops_when_cortex_slack(bleb_slack):
    p0 = _pressure_at(bleb_slack, 0.0)
    p1 = _pressure_at(bleb_slack, 1.0)
    drop = (p0 - p1) / abs(p0)
    check("cortex rest radius 9.85: center pressure drops > 20% by 1 s",
          drop > 0.20, f"p {p0:.2f} -> {p1:.2f} Pa ({drop:.1%} drop)")


def test_bleb_shapes_agree_across_radii(bleb_tense, bleb_slack):
    worst = 0.0
    for t in (0.1, 1.0, 5.0):
        a = bleb_tense.shapes[t][0]
        b = bleb_slack.shapes[t][0]
        d = cdist(a, b)
        hausdorff = max(d.min(axis=0).max(), d.min(axis=1).max())
        worst = max(worst, hausdorff)
    check("bleb outlines of the two radii agree within 0.2 um Hausdorff",
          worst < 0.2, f"worst Hausdorff {worst:.3f} um")


# -------------------------------------------------------- structural battery

def test_structural_invariant_suite():
    rng = np.random.default_rng(42)
    failures = []

    fiber = s2.ClosedFiber.circle((0, 0), 1.0, 40, 4.0, gamma=1.0)
    fiber = fiber.with_nodes(fiber.nodes + rng.normal(scale=0.05, size=(40, 2)))
    f = s2.fiber_elastic_force(fiber)
    if np.abs(f.sum(axis=0)).max() > 1e-12 * np.abs(f).max():
        failures.append("fiber force sum")

    mem = s2.ClosedFiber.circle((0, 0), 10.0, 50, 80.0, gamma=40.0)
    cor = s2.ClosedFiber.circle((0, 0), 9.9, 50, 100.0, gamma=250.0)
    state = s2.AdhesionState.identity(50, 247.0)
    state.broken[rng.random(50) < 0.5] = True
    fm, fc = s2.adhesion_forces(mem, cor, state)
    if np.abs(fm + fc).max() > 1e-12:
        failures.append("adhesion action-reaction")

    nodes = rng.uniform(-2, 2, size=(20, 2))
    net = s2.SpringNetwork.from_initial(nodes, s2.delaunay_edges(nodes), 50.0)
    if np.abs(ecm_force(net)).max() > 1e-10:
        failures.append("ECM anchor equilibrium")

    cortex = s2.ClosedFiber.circle((0, 0), 0.5, 80, 1.0)
    fp = s2.protrusion_forces(cortex, 3, 500.0)
    if np.abs(fp.sum(axis=0)).max() > 1e-12 * 500.0:
        failures.append("protrusion force sum")

    src = PointForceSet(rng.normal(size=(9, 2)), rng.normal(size=(9, 2)))
    pts = circle_points(1e3, 5000)
    params = FluidParams(1.0, 0.1)
    cfg = CorrectionConfig(Method.MEAN_ZERO_CORRECTION, 1e3)
    u = s2.total_velocity(pts, src, params, cfg)
    u_raw = kernels.superpose_velocity(pts, src, params)
    if (np.linalg.norm(u.mean(axis=0))
            > 1e-6 * np.linalg.norm(u_raw.mean(axis=0))):
        failures.append("zero-mean certificate")

    evals = rng.normal(scale=3, size=(20, 2))
    p1 = kernels.superpose_pressure(evals, src, 0.1)
    p2 = kernels.superpose_pressure(evals, src, 0.1)
    if p1.tobytes() != p2.tobytes():
        failures.append("pressure correction independence")

    A = rng.normal(size=(80, 80)) + 8 * np.eye(80)
    b = rng.normal(size=80)
    x = linalg.solve(A, b)
    if np.linalg.norm(A @ x - b) / np.linalg.norm(b) > 1e-10:
        failures.append("LU residual")

    cfg_m = default_config("motility")
    cfg_m.t_end = 0.05
    r1, r2 = s2.run_motility(cfg_m), s2.run_motility(cfg_m)
    if r1.trace.rows != r2.trace.rows:
        failures.append("determinism")

    check("structural invariants (forces, certificates, LU, determinism)",
          not failures, "all eight hold" if not failures
          else "failed: " + ", ".join(failures))
