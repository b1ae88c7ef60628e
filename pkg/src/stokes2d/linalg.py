"""Small dense LU factorization with partial pivoting.

Matrices here are a few hundred rows at most (the circle mobility systems),
so a plain packed row-major factorization is enough.
"""

from dataclasses import dataclass

import numpy as np


class SingularMatrixError(ValueError):
    def __init__(self, message, column=None):
        super().__init__(message)
        self.column = column


@dataclass(frozen=True)
class LUFactors:
    lu: np.ndarray    # packed L (strict lower, unit diagonal implied) and U
    perm: np.ndarray  # row permutation: row i of PA is row perm[i] of A


def lu_factor(A):
    """PA = LU with partial pivoting; raises on an exactly zero pivot."""
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"matrix must be square, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix entries must be finite")
    n = A.shape[0]
    lu = A.copy()
    perm = np.arange(n)
    for k in range(n):
        p = k + np.argmax(np.abs(lu[k:, k]))
        if lu[p, k] == 0.0:
            raise SingularMatrixError(f"zero pivot in column {k}", column=k)
        if p != k:
            lu[[k, p]] = lu[[p, k]]
            perm[[k, p]] = perm[[p, k]]
        lu[k + 1:, k] /= lu[k, k]
        lu[k + 1:, k + 1:] -= np.outer(lu[k + 1:, k], lu[k, k + 1:])
    return LUFactors(lu=lu, perm=perm)


def lu_solve(factors, b):
    """Solve A x = b given LUFactors of A."""
    lu, perm = factors.lu, factors.perm
    n = lu.shape[0]
    b = np.asarray(b, dtype=float)
    if b.shape[0] != n:
        raise ValueError(f"dimension mismatch: matrix is {n}x{n}, b has length {b.shape[0]}")
    x = b[perm].astype(float, copy=True)
    for k in range(1, n):        # forward: L y = Pb
        x[k] -= lu[k, :k] @ x[:k]
    for k in range(n - 1, -1, -1):  # backward: U x = y
        x[k] = (x[k] - lu[k, k + 1:] @ x[k + 1:]) / lu[k, k]
    return x


def solve(A, b):
    return lu_solve(lu_factor(A), b)


def condition_estimate(A):
    """1-norm condition number estimate via Hager's method."""
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    norm_a = np.abs(A).sum(axis=0).max()
    factors = lu_factor(A)

    # estimate ||A^-1||_1 by maximizing ||A^-1 x||_1 over the unit 1-ball
    factors_t = lu_factor(A.T)
    x = np.full(n, 1.0 / n)
    est = 0.0
    for _ in range(5):
        y = lu_solve(factors, x)
        est = np.abs(y).sum()
        xi = np.sign(y)
        xi[xi == 0] = 1.0
        z = lu_solve(factors_t, xi)
        j = np.argmax(np.abs(z))
        if np.abs(z[j]) <= z @ x:
            break
        x = np.zeros(n)
        x[j] = 1.0
    return norm_a * est
