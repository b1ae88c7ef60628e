"""2D Stokeslet kernels: singular and regularized velocity/pressure.

Units throughout: lengths in um, forces in pN/um (force per unit length
out of plane), viscosity in Pa-s (= pN-s/um^2), velocities in um/s,
pressure in Pa.
"""

from dataclasses import dataclass

import numpy as np

# Running count of pairwise kernel evaluations and per-source force
# operations, used by the cost-contract tests. Reset with reset_eval_count().
_eval_count = 0


def reset_eval_count():
    global _eval_count
    _eval_count = 0


def eval_count():
    return _eval_count


def _add_evals(n):
    global _eval_count
    _eval_count += int(n)


@dataclass(frozen=True)
class FluidParams:
    """Fluid viscosity mu (Pa-s) and regularization radius eps (um)."""

    mu: float
    eps: float

    def __post_init__(self):
        if not (self.mu > 0):
            raise ValueError(f"mu must be positive, got {self.mu}")
        if not (self.eps > 0):
            raise ValueError(f"eps must be positive, got {self.eps}")


class PointForceSet:
    """Parallel arrays of source positions (N,2) and forces (N,2)."""

    def __init__(self, positions, forces):
        self.positions = np.atleast_2d(np.asarray(positions, dtype=float))
        self.forces = np.atleast_2d(np.asarray(forces, dtype=float))
        if self.positions.size == 0:
            self.positions = np.zeros((0, 2))
        if self.forces.size == 0:
            self.forces = np.zeros((0, 2))
        if self.positions.shape != self.forces.shape or self.positions.shape[1:] != (2,):
            raise ValueError(
                f"positions {self.positions.shape} and forces {self.forces.shape} "
                "must both have shape (N, 2)"
            )

    def __len__(self):
        return self.positions.shape[0]

    @property
    def net_force(self):
        return self.forces.sum(axis=0)


def blob_phi(r, eps):
    """Radially symmetric cutoff function, integrates to 1 over the plane."""
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
    r = np.asarray(r, dtype=float)
    r2 = np.sum(r * r, axis=-1)
    return 3.0 * eps**3 / (2.0 * np.pi * (r2 + eps**2) ** 2.5)


def singular_velocity(x, x0, f0, mu):
    """Free-space 2D Stokeslet velocity at x due to a point force f0 at x0."""
    x = np.asarray(x, dtype=float)
    x0 = np.asarray(x0, dtype=float)
    f0 = np.asarray(f0, dtype=float)
    d = x - x0
    r2 = d @ d
    if r2 == 0.0:
        raise ZeroDivisionError("singular Stokeslet evaluated at the source point")
    return -f0 / (4 * np.pi * mu) * 0.5 * np.log(r2) + (f0 @ d) * d / (4 * np.pi * mu * r2)


def singular_pressure(x, x0, f0):
    """Free-space 2D Stokeslet pressure at x due to a point force f0 at x0."""
    x = np.asarray(x, dtype=float)
    x0 = np.asarray(x0, dtype=float)
    f0 = np.asarray(f0, dtype=float)
    d = x - x0
    r2 = d @ d
    if r2 == 0.0:
        raise ZeroDivisionError("singular pressure evaluated at the source point")
    return (f0 @ d) / (2 * np.pi * r2)


def reg_velocity(x, x0, f0, params):
    """Regularized Stokeslet velocity; finite everywhere, including x == x0."""
    x = np.asarray(x, dtype=float)
    x0 = np.asarray(x0, dtype=float)
    f0 = np.asarray(f0, dtype=float)
    mu, eps = params.mu, params.eps
    d = x - x0
    r2 = d @ d
    s = np.sqrt(r2 + eps * eps)
    t1 = -f0 / (4 * np.pi * mu) * (np.log(s + eps) - eps * (s + 2 * eps) / ((s + eps) * s))
    t2 = (f0 @ d) * d / (4 * np.pi * mu) * (s + 2 * eps) / ((s + eps) ** 2 * s)
    return t1 + t2


def reg_pressure(x, x0, f0, eps):
    """Regularized Stokeslet pressure; finite everywhere."""
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
    x = np.asarray(x, dtype=float)
    x0 = np.asarray(x0, dtype=float)
    f0 = np.asarray(f0, dtype=float)
    d = x - x0
    r2 = d @ d
    s = np.sqrt(r2 + eps * eps)
    return (f0 @ d) / (2 * np.pi) * (r2 + 2 * eps**2 + eps * s) / ((s + eps) * s**3)


def superpose_velocity(evals, sources, params):
    """Sum of regularized velocities from all sources at each eval point.

    Pairwise sums run over sources in ascending index order, so results are
    bitwise reproducible. Cost is exactly len(evals)*len(sources) kernel
    evaluations.
    """
    evals = np.atleast_2d(np.asarray(evals, dtype=float))
    n_eval = evals.shape[0]
    n_src = len(sources)
    _add_evals(n_eval * n_src)
    if n_eval == 0 or n_src == 0:
        return np.zeros((n_eval, 2))
    mu, eps = params.mu, params.eps
    # (n_eval, n_src, 2) displacement tensor; sums stay in source order.
    d = evals[:, None, :] - sources.positions[None, :, :]
    r2 = np.sum(d * d, axis=-1)
    s = np.sqrt(r2 + eps * eps)
    f = sources.forces
    log_term = np.log(s + eps) - eps * (s + 2 * eps) / ((s + eps) * s)
    t1 = -log_term[:, :, None] * f[None, :, :]
    fdotd = np.einsum("esk,sk->es", d, f)
    coef = (s + 2 * eps) / ((s + eps) ** 2 * s)
    t2 = (fdotd * coef)[:, :, None] * d
    return (t1 + t2).sum(axis=1) / (4 * np.pi * mu)


def superpose_pressure(evals, sources, eps):
    """Sum of regularized pressures from all sources at each eval point."""
    if not eps > 0:
        raise ValueError(f"eps must be positive, got {eps}")
    evals = np.atleast_2d(np.asarray(evals, dtype=float))
    n_eval = evals.shape[0]
    n_src = len(sources)
    _add_evals(n_eval * n_src)
    if n_eval == 0 or n_src == 0:
        return np.zeros(n_eval)
    d = evals[:, None, :] - sources.positions[None, :, :]
    r2 = np.sum(d * d, axis=-1)
    s = np.sqrt(r2 + eps * eps)
    fdotd = np.einsum("esk,sk->es", d, sources.forces)
    term = fdotd * (r2 + 2 * eps**2 + eps * s) / ((s + eps) * s**3)
    return term.sum(axis=1) / (2 * np.pi)
