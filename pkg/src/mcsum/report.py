"""Full single-chain analysis assembled into one serializable report."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .analysis import (
    BoundsReport,
    DoublyStochasticReport,
    bounds_check,
    doubly_stochastic_report,
    identity_residuals,
    kemeny_from_h,
    kemeny_from_z,
    kemeny_general,
    solve_chain,
)
from .chain import TransitionMatrix, reorder_by_column_sums
from .ginv import colsum_system, theorem2_residuals
from .scan import OrderingRecord, ordering_from_solution


@dataclass(frozen=True)
class ChainReport:
    """Everything the package computes for one chain.

    The canonical ``kemeny`` value is the trace of the fundamental matrix;
    all three variants and their spread are kept alongside it.  When the
    chain was reordered, ``permutation[k]`` is the original index of state k
    and the labels travel with their states.
    """

    labels: tuple[str, ...]
    m: int
    permutation: tuple[int, ...] | None
    p: np.ndarray
    column_sums: np.ndarray
    stationary: np.ndarray
    kemeny: float
    kemeny_variants: dict[str, float]
    kemeny_spread: float
    mfpt: np.ndarray
    h_matrix: np.ndarray
    z_matrix: np.ndarray
    theorem2_residuals: dict[str, float]
    identity_residuals: dict[str, float]
    bounds: BoundsReport
    doubly_stochastic: DoublyStochasticReport
    ordering: OrderingRecord
    condition_estimate: float
    condition_warning: bool


def analyze(tm: TransitionMatrix, reorder: bool = False) -> ChainReport:
    """Compute the full report for a validated chain.

    With `reorder` the states are first permuted into descending column-sum
    order and the applied permutation is recorded.
    """
    permutation: tuple[int, ...] | None = None
    if reorder:
        tm, perm = reorder_by_column_sums(tm)
        permutation = tuple(int(i) for i in perm)

    sol = solve_chain(tm)
    variants = {
        "colsum_inverse": kemeny_from_h(sol.hc),
        "fundamental": kemeny_from_z(sol.zf),
        "group_inverse": kemeny_general(sol.group_inv, sol.pi),
    }
    values = list(variants.values())
    spread = max(values) - min(values)

    system = colsum_system(tm)
    cond = linalg.condition_estimate(linalg.lu_factor(system), system)

    return ChainReport(
        labels=tm.labels,
        m=tm.n,
        permutation=permutation,
        p=tm.p,
        column_sums=sol.c,
        stationary=sol.pi,
        kemeny=variants["fundamental"],
        kemeny_variants=variants,
        kemeny_spread=spread,
        mfpt=sol.mfpt,
        h_matrix=sol.hc.h,
        z_matrix=sol.zf.z,
        theorem2_residuals=theorem2_residuals(tm, sol.hc, sol.pi, sol.zf),
        identity_residuals=identity_residuals(
            tm, sol.hc, sol.zf, sol.pi, sol.mfpt, sol.c
        ),
        bounds=bounds_check(sol.hc, sol.pi, sol.mfpt),
        doubly_stochastic=doubly_stochastic_report(tm),
        ordering=ordering_from_solution(sol),
        condition_estimate=cond,
        condition_warning=cond >= linalg.CONDITION_WARN_THRESHOLD,
    )


def _vec(v: np.ndarray) -> list[float]:
    return [float(x) for x in v]


def _mat(a: np.ndarray) -> list[list[float]]:
    return [[float(x) for x in row] for row in a]


def bounds_to_dict(b: BoundsReport) -> dict:
    return {
        "kemeny": b.kemeny,
        "kemeny_lower": b.kemeny_lower,
        "kemeny_margin": b.kemeny_margin,
        "trace_h": b.trace_h,
        "trace_h_lower": b.trace_h_lower,
        "trace_h_margin": b.trace_h_margin,
        "trace_h_weak_lower": b.trace_h_weak_lower,
        "trace_h_weak_margin": b.trace_h_weak_margin,
        "pi_upper_margins": _vec(b.pi_upper_margins),
        "pi_lower_offdiag_margins": _vec(b.pi_lower_offdiag_margins),
        "pi_lower_colsum_margins": _vec(b.pi_lower_colsum_margins),
    }


def doubly_stochastic_to_dict(d: DoublyStochasticReport) -> dict:
    out: dict = {"applicable": d.applicable, "colsum_deviation": d.colsum_deviation}
    if d.applicable:
        out.update(
            {
                "pi_uniform_residual": d.pi_uniform_residual,
                "h_shift_residual": d.h_shift_residual,
                "col_total_vs_h_residual": d.col_total_vs_h_residual,
                "col_total_vs_z_residual": d.col_total_vs_z_residual,
                "row_total_vs_kemeny_residual": d.row_total_vs_kemeny_residual,
                "grand_total_vs_kemeny_residual": d.grand_total_vs_kemeny_residual,
                "row_total_margins": _vec(d.row_total_margins),
            }
        )
    return out


def ordering_to_dict(o: OrderingRecord) -> dict:
    return {
        "digest": o.digest,
        "m": o.m,
        "signs": {k: [[int(s) for s in row] for row in v] for k, v in o.signs.items()},
        "violations": {k: [list(p) for p in v] for k, v in o.violations.items()},
    }


def report_to_dict(r: ChainReport) -> dict:
    """Report as a JSON-ready dict with fixed key order."""
    out: dict = {
        "labels": list(r.labels),
        "m": r.m,
    }
    if r.permutation is not None:
        out["permutation"] = list(r.permutation)
    out.update(
        {
            "p": _mat(r.p),
            "column_sums": _vec(r.column_sums),
            "stationary": _vec(r.stationary),
            "kemeny": r.kemeny,
            "kemeny_variants": dict(r.kemeny_variants),
            "kemeny_spread": r.kemeny_spread,
            "mfpt": _mat(r.mfpt),
            "h_matrix": _mat(r.h_matrix),
            "z_matrix": _mat(r.z_matrix),
            "theorem2_residuals": dict(r.theorem2_residuals),
            "identity_residuals": dict(r.identity_residuals),
            "bounds": bounds_to_dict(r.bounds),
            "doubly_stochastic": doubly_stochastic_to_dict(r.doubly_stochastic),
            "ordering": ordering_to_dict(r.ordering),
            "condition_estimate": r.condition_estimate,
            "condition_warning": r.condition_warning,
        }
    )
    return out
