"""The column-sum generalized inverse H, the fundamental matrix Z, and the
group inverse, plus the conversions and structural identities tying them
together.

H = (I - P + e c^T)^{-1} where c is the column-sum vector of P; its rows sum
to 1/m and c^T H recovers the stationary vector.  Z = (I - P + e pi^T)^{-1}
is the classical fundamental matrix, and Z - e pi^T is the group inverse of
I - P.  Each matrix determines the others through rank-one corrections.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .chain import TransitionMatrix, column_sums


@dataclass(frozen=True)
class ColsumInverse:
    """H together with the column-sum vector it was built from."""

    h: np.ndarray
    c: np.ndarray

    @property
    def n(self) -> int:
        return self.h.shape[0]


@dataclass(frozen=True)
class FundamentalMatrix:
    """Z together with the stationary vector it was built from."""

    z: np.ndarray
    pi: np.ndarray

    @property
    def n(self) -> int:
        return self.z.shape[0]


def colsum_system(tm: TransitionMatrix) -> np.ndarray:
    """The nonsingular matrix I - P + e c^T whose inverse is H."""
    c = column_sums(tm)
    return np.eye(tm.n) - tm.p + np.tile(c, (tm.n, 1))


def compute_h(tm: TransitionMatrix) -> ColsumInverse:
    """Invert I - P + e c^T.

    Irreducibility guarantees nonsingularity, so SingularMatrix escaping
    from here indicates an input that slipped past validation.
    """
    c = column_sums(tm)
    h = linalg.invert(colsum_system(tm))
    return ColsumInverse(h=h, c=c)


def compute_z(tm: TransitionMatrix, pi: np.ndarray) -> FundamentalMatrix:
    """Invert I - P + e pi^T for a stationary vector from an independent solver."""
    pi = np.asarray(pi, dtype=np.float64)
    z = linalg.invert(np.eye(tm.n) - tm.p + np.tile(pi, (tm.n, 1)))
    return FundamentalMatrix(z=z, pi=pi)


def group_inverse(zf: FundamentalMatrix) -> np.ndarray:
    """The group inverse of I - P: Z minus the rank-one stationary projector."""
    return zf.z - np.tile(zf.pi, (zf.n, 1))


def z_from_h(hc: ColsumInverse, pi: np.ndarray) -> FundamentalMatrix:
    """Convert H to Z:  Z = H + Pi - Pi H  with Pi = e pi^T."""
    pi = np.asarray(pi, dtype=np.float64)
    correction = pi - pi @ hc.h  # one row, broadcast down the column space
    return FundamentalMatrix(z=hc.h + np.tile(correction, (hc.n, 1)), pi=pi)


def h_from_z(zf: FundamentalMatrix, c: np.ndarray) -> ColsumInverse:
    """Convert Z to H:  H = Z + (1/m) Pi - (1/m) e c^T Z."""
    c = np.asarray(c, dtype=np.float64)
    m = zf.n
    correction = (zf.pi - c @ zf.z) / m
    return ColsumInverse(h=zf.z + np.tile(correction, (m, 1)), c=c)


def theorem2_residuals(
    tm: TransitionMatrix,
    hc: ColsumInverse,
    pi: np.ndarray,
    zf: FundamentalMatrix | None = None,
) -> dict[str, float]:
    """Max-abs residuals of the structural identities of H (and its link to Z).

    Row, column and element statements of the same matrix identity coincide
    as floating-point computations, so each distinct identity is reported
    once; the elementwise stationary-combination identity is additionally
    evaluated with explicit sums as a transcription check.
    """
    p, h, c = tm.p, hc.h, hc.c
    m = tm.n
    pi = np.asarray(pi, dtype=np.float64)
    if zf is None:
        zf = compute_z(tm, pi)
    z = zf.z
    eye = np.eye(m)
    pi_row = np.tile(pi, (m, 1))
    c_row = np.tile(c, (m, 1))

    resid = {
        # (I - P) H = I - e pi^T: the row/column/element "stationary" forms
        "H - PH = I - e pi^T": float(np.abs(h - p @ h - eye + pi_row).max()),
        # H (I - P) = I - e c^T / m: the row/column/element "column sum" forms
        "H - HP = I - e c^T/m": float(np.abs(h - h @ p - eye + c_row / m).max()),
        "He = e/m": float(np.abs(h.sum(axis=1) - 1.0 / m).max()),
        "e^T H = e^T - (m-1) pi^T": float(np.abs(h.sum(axis=0) - 1.0 + (m - 1) * pi).max()),
        "(1+m) Pi = m Pi H + e c^T Z": float(
            np.abs((1 + m) * pi_row - m * (pi_row @ h) - np.tile(c @ z, (m, 1))).max()
        ),
        "(1+m) pi^T = m pi^T H + c^T Z": float(
            np.abs((1 + m) * pi - m * (pi @ h) - c @ z).max()
        ),
        "(1+m) pi_j = m sum_k pi_k h_kj + sum_k c_k z_kj": float(
            np.abs(
                (1 + m) * pi
                - m * np.einsum("k,kj->j", pi, h)
                - np.einsum("k,kj->j", c, z)
            ).max()
        ),
    }
    return resid
