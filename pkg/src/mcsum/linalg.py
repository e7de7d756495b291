"""Dense LU factorization, solves, inversion and a condition estimate.

Everything downstream (generalized inverses, passage-time formulas) runs on
this kernel.  Matrices are plain float64 ``numpy.ndarray`` values; the kernel
is deliberately self-contained so that the oracle solvers, which call into
LAPACK through ``numpy.linalg``, share no code path with it.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, SingularMatrix

#: Relative pivot threshold: a pivot below RELATIVE_PIVOT_TOL * max|a_ij|
#: marks the matrix as numerically singular.
RELATIVE_PIVOT_TOL = 1e-13

#: Condition estimates at or above this trigger warnings in reports.
CONDITION_WARN_THRESHOLD = 1e8

#: Surrogate "infinite" condition value when estimation itself fails.
CONDITION_FAILURE = 1e308


@dataclass(frozen=True)
class LuFactors:
    """Packed LU factorization with partial (row) pivoting.

    ``lu`` stores U on and above the diagonal and the unit-lower-triangular
    multipliers strictly below it.  ``perm[i]`` is the original row index
    that ended up in position i, so ``A[perm] == L @ U``.  ``sign`` is the
    permutation parity.
    """

    lu: np.ndarray
    perm: np.ndarray
    sign: int

    @property
    def n(self) -> int:
        return self.lu.shape[0]


def _as_square(a: np.ndarray) -> np.ndarray:
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.isfinite(a).all():
        raise ValueError("matrix entries must be finite")
    return a


def lu_factor(a: np.ndarray) -> LuFactors:
    """Factor a square matrix as P*A = L*U with partial pivoting.

    The pivot in each column is the largest absolute value on or below the
    diagonal; ties go to the lowest row index, so the factorization is
    deterministic for identical input bits.

    Raises
    ------
    SingularMatrix
        If any pivot falls below ``RELATIVE_PIVOT_TOL`` times the largest
        absolute entry of the input.
    """
    a = _as_square(a)
    n = a.shape[0]
    scale = np.abs(a).max()
    threshold = RELATIVE_PIVOT_TOL * scale
    if scale == 0.0:
        raise SingularMatrix("matrix is identically zero")

    lu = a.copy()
    perm = np.arange(n)
    sign = 1
    for k in range(n):
        # argmax returns the first maximum, i.e. the lowest row index on ties
        p = k + int(np.argmax(np.abs(lu[k:, k])))
        if abs(lu[p, k]) < threshold:
            raise SingularMatrix(
                f"pivot {lu[p, k]:.3e} in column {k} below threshold "
                f"{threshold:.3e}; matrix is numerically singular"
            )
        if p != k:
            lu[[k, p]] = lu[[p, k]]
            perm[[k, p]] = perm[[p, k]]
            sign = -sign
        if k + 1 < n:
            lu[k + 1:, k] /= lu[k, k]
            lu[k + 1:, k + 1:] -= np.outer(lu[k + 1:, k], lu[k, k + 1:])
    return LuFactors(lu=lu, perm=perm, sign=sign)


def solve(f: LuFactors, b: np.ndarray) -> np.ndarray:
    """Solve A @ X = B given factors of A.  B may be a vector or a matrix."""
    b = np.asarray(b, dtype=np.float64)
    vector = b.ndim == 1
    if vector:
        b = b[:, None]
    if b.ndim != 2 or b.shape[0] != f.n:
        raise DimensionMismatch(
            f"right-hand side has {b.shape[0] if b.ndim else 0} rows, expected {f.n}"
        )
    n = f.n
    lu = f.lu
    x = b[f.perm].copy()
    for k in range(n):  # forward: L y = P b  (unit diagonal)
        x[k + 1:] -= lu[k + 1:, k, None] * x[k]
    for k in range(n - 1, -1, -1):  # backward: U x = y
        x[k] /= lu[k, k]
        if k:
            x[:k] -= lu[:k, k, None] * x[k]
    return x[:, 0] if vector else x


def invert(a: np.ndarray) -> np.ndarray:
    """Inverse of a square nonsingular matrix via its LU factors."""
    a = _as_square(a)
    return solve(lu_factor(a), np.eye(a.shape[0]))


def condition_estimate(f: LuFactors, a: np.ndarray) -> float:
    """1-norm condition number computed from the factors.

    Exact up to the accuracy of the solve (well within the factor-of-10
    contract).  Used only to flag ill-conditioned inputs in reports, never
    for control flow in formulas.  Returns a huge surrogate value instead
    of raising when the internal solve breaks down.
    """
    a = np.asarray(a, dtype=np.float64)
    try:
        inv = solve(f, np.eye(f.n))
    except (SingularMatrix, DimensionMismatch):
        return CONDITION_FAILURE
    if not np.isfinite(inv).all():
        return CONDITION_FAILURE
    norm_a = np.abs(a).sum(axis=0).max()
    norm_inv = np.abs(inv).sum(axis=0).max()
    return float(norm_a * norm_inv)
