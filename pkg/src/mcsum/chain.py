"""Transition-matrix construction and validation.

A chain is accepted when its matrix is row-stochastic (within a small row
tolerance, after which rows are renormalized) and its positive-entry graph
is strongly connected.  Periodicity is allowed; every downstream formula
holds for irreducible periodic chains.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NotIrreducible, NotStochastic

DEFAULT_ROW_TOL = 1e-9


@dataclass(frozen=True)
class TransitionMatrix:
    """Validated row-stochastic matrix with state labels."""

    p: np.ndarray
    labels: tuple[str, ...] = ()

    @property
    def n(self) -> int:
        """Number of states."""
        return self.p.shape[0]


def _reachable(adj: np.ndarray, start: int) -> np.ndarray:
    """Boolean reachability vector from `start` (breadth-first)."""
    n = adj.shape[0]
    seen = np.zeros(n, dtype=bool)
    seen[start] = True
    frontier = [start]
    while frontier:
        nxt = adj[frontier].any(axis=0) & ~seen
        seen |= nxt
        frontier = np.flatnonzero(nxt).tolist()
    return seen


def is_irreducible(p: np.ndarray) -> bool:
    """True iff the graph on positive entries is strongly connected.

    Forward and reverse reachability from state 0 suffice: both cover all
    states exactly when there is a single strongly connected component.
    """
    p = np.asarray(p)
    adj = p > 0.0
    return bool(_reachable(adj, 0).all() and _reachable(adj.T, 0).all())


def _strongly_connected_components(adj: np.ndarray) -> list[list[int]]:
    """Kosaraju SCC decomposition; only used to build error messages."""
    n = adj.shape[0]
    order: list[int] = []
    seen = np.zeros(n, dtype=bool)
    for s in range(n):
        if seen[s]:
            continue
        stack = [s]
        seen[s] = True
        while stack:
            v = stack[-1]
            nxt = np.flatnonzero(adj[v] & ~seen)
            if nxt.size:
                w = int(nxt[0])
                seen[w] = True
                stack.append(w)
            else:
                order.append(v)
                stack.pop()
    comps: list[list[int]] = []
    seen[:] = False
    radj = adj.T
    for s in reversed(order):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        frontier = [s]
        while frontier:
            nxt = np.flatnonzero(radj[frontier].any(axis=0) & ~seen)
            seen[nxt] = True
            comp.extend(int(v) for v in nxt)
            frontier = nxt.tolist()
        comps.append(sorted(comp))
    return comps


def validate(
    raw: np.ndarray,
    labels: list[str] | tuple[str, ...] | None = None,
    row_tol: float = DEFAULT_ROW_TOL,
) -> TransitionMatrix:
    """Check stochasticity and irreducibility; return an immutable chain.

    Parameters
    ----------
    raw : array_like, shape (m, m)
        Candidate transition matrix.
    labels : sequence of str, optional
        State names; defaults to "1".."m".
    row_tol : float
        Rows whose sum deviates from 1 by less than this are renormalized;
        larger deviations are rejected.

    Raises
    ------
    NotStochastic
        On a negative entry or a row sum off by at least `row_tol`.
    NotIrreducible
        When the positive-entry graph is not strongly connected; the message
        names the communicating classes.
    """
    p = np.asarray(raw, dtype=np.float64)
    if p.ndim != 2 or p.shape[0] != p.shape[1]:
        raise ValueError(f"transition matrix must be square, got shape {p.shape}")
    if p.shape[0] < 1:
        raise ValueError("transition matrix must have at least one state")
    if not np.isfinite(p).all():
        raise NotStochastic("transition matrix has non-finite entries")

    neg = np.argwhere(p < 0.0)
    if neg.size:
        i, j = neg[0]
        raise NotStochastic(f"negative entry p[{i + 1},{j + 1}] = {p[i, j]!r}")

    sums = p.sum(axis=1)
    bad = np.flatnonzero(np.abs(sums - 1.0) >= row_tol)
    if bad.size:
        i = int(bad[0])
        raise NotStochastic(f"row {i + 1} sums to {sums[i]!r}, expected 1")
    p = p / sums[:, None]

    if labels is None:
        labels = tuple(str(i + 1) for i in range(p.shape[0]))
    else:
        labels = tuple(str(x) for x in labels)
        if len(labels) != p.shape[0]:
            raise ValueError(f"{len(labels)} labels for {p.shape[0]} states")

    if not is_irreducible(p):
        comps = _strongly_connected_components(p > 0.0)
        names = ", ".join(
            "{" + ", ".join(labels[i] for i in comp) + "}" for comp in comps
        )
        raise NotIrreducible(f"chain is not irreducible; communicating classes: {names}")

    p.flags.writeable = False
    return TransitionMatrix(p=p, labels=labels)


def column_sums(tm: TransitionMatrix) -> np.ndarray:
    """Column-sum vector; its entries total the state count."""
    return tm.p.sum(axis=0)


def reorder_by_column_sums(tm: TransitionMatrix) -> tuple[TransitionMatrix, np.ndarray]:
    """Permute states into descending column-sum order.

    Returns the reordered chain and the permutation, where ``perm[k]`` is
    the original index of new state k.  Ties keep original order.
    """
    c = column_sums(tm)
    perm = np.argsort(-c, kind="stable")
    p = tm.p[np.ix_(perm, perm)].copy()
    p.flags.writeable = False
    labels = tuple(tm.labels[i] for i in perm)
    return TransitionMatrix(p=p, labels=labels), perm


def period(tm: TransitionMatrix) -> int:
    """Period of an irreducible chain (1 means aperiodic).

    The gcd of ``level[u] + 1 - level[v]`` over all edges (u, v), with levels
    from a breadth-first search, equals the period on a strongly connected
    graph.
    """
    adj = tm.p > 0.0
    n = tm.n
    level = np.full(n, -1)
    level[0] = 0
    frontier = [0]
    while frontier:
        nxt = []
        for u in frontier:
            for v in np.flatnonzero(adj[u]):
                if level[v] < 0:
                    level[v] = level[u] + 1
                    nxt.append(int(v))
        frontier = nxt
    g = 0
    for u, v in np.argwhere(adj):
        g = math.gcd(g, int(level[u] + 1 - level[v]))
    return abs(g) if g else 1
