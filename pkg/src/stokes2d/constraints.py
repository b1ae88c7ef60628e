"""Treatments of Stokes' paradox for net-nonzero forcing.

Three methods are provided: adding the constant mean-zero-circle velocity,
explicitly enforcing u = 0 on a discretized large circle, and subtracting
the mean force. The velocity-variation diagnostic sigma_u and the derived
bounds on the circle radius R live here as well.
"""

import enum
from dataclasses import dataclass

import numpy as np

from . import kernels, linalg
from .kernels import FluidParams, PointForceSet


class Method(enum.Enum):
    MEAN_ZERO_CORRECTION = "meanzero"
    EXPLICIT_CIRCLE_BC = "circle"
    MEAN_FORCE_SUBTRACTION = "meansub"
    NONE = "none"


@dataclass(frozen=True)
class CorrectionConfig:
    method: Method = Method.MEAN_ZERO_CORRECTION
    R: float = 1e3          # large-circle radius, um
    circle_points: int = 100  # M, used only by EXPLICIT_CIRCLE_BC

    def __post_init__(self):
        if not self.R > 0:
            raise ValueError(f"R must be positive, got {self.R}")
        if self.method is Method.EXPLICIT_CIRCLE_BC and self.circle_points < 3:
            raise ValueError(f"need at least 3 circle points, got {self.circle_points}")


@dataclass(frozen=True)
class RadiusBoundsInput:
    rho: float              # fluid density, kg/m^3
    v: float                # characteristic velocity, m/s
    mu: float               # viscosity, Pa-s
    re_max: float = 0.1     # Reynolds threshold
    sigma_threshold: float = 0.10

    def __post_init__(self):
        for name in ("rho", "v", "mu", "re_max", "sigma_threshold"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if not self.re_max < 1:
            raise ValueError(f"re_max must be < 1, got {self.re_max}")


def mean_circle_velocity(f0, mu, R):
    """Average free-space Stokeslet velocity over the radius-R circle."""
    if not (R > 0 and mu > 0):
        raise ValueError("R and mu must be positive")
    f0 = np.asarray(f0, dtype=float)
    return f0 / (4 * np.pi * mu) * (0.5 - np.log(R))


def correction_velocity(sources, mu, R):
    """Constant velocity that zeroes the mean velocity on the radius-R circle."""
    if not R > 0:
        raise ValueError(f"R must be positive, got {R}")
    kernels._add_evals(len(sources))
    return -sources.net_force / (4 * np.pi * mu) * (0.5 - np.log(R))


def total_velocity(evals, sources, params, config):
    """Velocity at each eval point under the configured paradox treatment."""
    evals = np.atleast_2d(np.asarray(evals, dtype=float))
    if len(sources) == 0 or not np.any(sources.forces):
        return np.zeros((evals.shape[0], 2))
    m = config.method
    if m is Method.NONE:
        return kernels.superpose_velocity(evals, sources, params)
    if m is Method.MEAN_ZERO_CORRECTION:
        u = kernels.superpose_velocity(evals, sources, params)
        return u + correction_velocity(sources, params.mu, config.R)
    if m is Method.MEAN_FORCE_SUBTRACTION:
        shifted = PointForceSet(sources.positions, sources.forces - sources.forces.mean(axis=0))
        return kernels.superpose_velocity(evals, shifted, params)
    if m is Method.EXPLICIT_CIRCLE_BC:
        return circle_bc_velocity(evals, sources, params, config.R, config.circle_points)
    raise ValueError(f"unknown method {m!r}")


def circle_points(R, M):
    theta = 2 * np.pi * np.arange(M) / M
    return R * np.stack([np.cos(theta), np.sin(theta)], axis=1)


def circle_bc_velocity(evals, sources, params, R, M):
    """Velocity with u = 0 enforced at M points on the radius-R circle.

    Solves the dense 2M x 2M mobility system for the circle forces by LU
    with partial pivoting, then superposes source and circle contributions
    at the eval points. The circle Stokeslets use eps equal to the circle
    point spacing 2*pi*R/M, which keeps the system well conditioned.
    """
    evals = np.atleast_2d(np.asarray(evals, dtype=float))
    pts = circle_points(R, M)
    eps_c = 2 * np.pi * R / M
    circ_params = FluidParams(params.mu, eps_c)

    # overlap would make the no-slip rows inconsistent with the source blobs
    if len(sources):
        d = pts[:, None, :] - sources.positions[None, :, :]
        if np.min(np.sum(d * d, axis=-1)) < (1e-9 * R) ** 2:
            raise ValueError("a source point coincides with a circle point")

    if len(sources) == 0 or not np.any(sources.forces):
        return np.zeros((evals.shape[0], 2))

    u_free = kernels.superpose_velocity(pts, sources, params)  # M x N_src evals
    mob = mobility_matrix(pts, pts, circ_params)               # M^2 evals
    try:
        factors = linalg.lu_factor(mob)
    except linalg.SingularMatrixError as exc:
        cond = np.inf
        raise linalg.SingularMatrixError(
            f"circle mobility matrix is singular (cond~{cond}): {exc}"
        ) from exc
    f_circ = linalg.lu_solve(factors, -u_free.ravel()).reshape(M, 2)
    circ_sources = PointForceSet(pts, f_circ)

    u = kernels.superpose_velocity(evals, sources, params)
    u += kernels.superpose_velocity(evals, circ_sources, circ_params)
    return u


def circle_bc_residual(sources, params, R, M):
    """Max post-solve speed at the circle points, relative to the free-space one."""
    pts = circle_points(R, M)
    eps_c = 2 * np.pi * R / M
    circ_params = FluidParams(params.mu, eps_c)
    u_free = kernels.superpose_velocity(pts, sources, params)
    mob = mobility_matrix(pts, pts, circ_params)
    f_circ = linalg.lu_solve(linalg.lu_factor(mob), -u_free.ravel()).reshape(M, 2)
    u_after = u_free + kernels.superpose_velocity(pts, PointForceSet(pts, f_circ), circ_params)
    return np.abs(u_after).max() / np.abs(u_free).max()


def mobility_matrix(targets, src_positions, params):
    """Dense map from forces at src_positions to velocities at targets.

    Returns a (2*n_t, 2*n_s) matrix with interleaved (x, y) components.
    """
    targets = np.atleast_2d(np.asarray(targets, dtype=float))
    src_positions = np.atleast_2d(np.asarray(src_positions, dtype=float))
    n_t, n_s = targets.shape[0], src_positions.shape[0]
    kernels._add_evals(n_t * n_s)
    mu, eps = params.mu, params.eps
    d = targets[:, None, :] - src_positions[None, :, :]
    r2 = np.sum(d * d, axis=-1)
    s = np.sqrt(r2 + eps * eps)
    a = -(np.log(s + eps) - eps * (s + 2 * eps) / ((s + eps) * s))
    b = (s + 2 * eps) / ((s + eps) ** 2 * s)
    M = np.zeros((n_t, 2, n_s, 2))
    M[:, 0, :, 0] = a + b * d[:, :, 0] ** 2
    M[:, 1, :, 1] = a + b * d[:, :, 1] ** 2
    M[:, 0, :, 1] = b * d[:, :, 0] * d[:, :, 1]
    M[:, 1, :, 0] = M[:, 0, :, 1]
    return M.reshape(2 * n_t, 2 * n_s) / (4 * np.pi * mu)


def sigma_u(R, N, f0, mu):
    """Max relative variation of the force-aligned velocity on the R-circle.

    A point force f0 sits at the origin; the singular Stokeslet velocity is
    sampled at N uniform points on the circle. The frame is rotated so f0
    is x-aligned before taking components.
    """
    if N < 2:
        raise ValueError(f"need at least 2 circle points, got {N}")
    f0 = np.asarray(f0, dtype=float)
    fmag = np.hypot(f0[0], f0[1])
    if fmag == 0.0:
        raise ValueError("f0 must be nonzero")
    # rotate so the force is x-aligned; sigma_u is frame-independent
    theta = 2 * np.pi * np.arange(N) / N
    pts = R * np.stack([np.cos(theta), np.sin(theta)], axis=1)
    f = np.array([fmag, 0.0])
    # vectorized singular Stokeslet, x-component only
    r2 = R * R
    ux = (-f[0] * 0.5 * np.log(r2) + f[0] * pts[:, 0] ** 2 / r2) / (4 * np.pi * mu)
    ubar = ux.mean()
    if abs(ubar) < 1e-300:
        raise ZeroDivisionError("mean force-aligned velocity is zero; sigma_u undefined")
    return np.max(np.abs((ux - ubar) / ubar))


# Decade grid used for the lower-bound sweep; finer resolution is not meaningful
# for a diagnostic with decade-scale thresholds.
SWEEP_RADII = tuple(10.0**k for k in range(1, 9))
MU_WATER = 1e-3  # Pa-s


class InfeasibleRadiusBounds(ValueError):
    pass


def radius_bounds(inp, N=100):
    """(R_min, R_max) in um for the large-circle radius.

    R_max comes from the Reynolds-number cap; R_min is the smallest decade
    radius whose velocity variation sigma_u is within threshold.
    """
    r_max_m = inp.re_max * inp.mu / (inp.rho * inp.v)
    r_max = r_max_m * 1e6  # m -> um
    r_min = None
    for R in SWEEP_RADII:
        if sigma_u(R, N, np.array([1.0, 0.0]), MU_WATER) <= inp.sigma_threshold:
            r_min = R
            break
    if r_min is None or r_min > r_max:
        raise InfeasibleRadiusBounds(
            f"no feasible radius: R_min={r_min}, R_max={r_max:.3g} um"
        )
    return r_min, r_max
