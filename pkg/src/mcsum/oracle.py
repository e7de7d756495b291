"""Independent ground-truth solvers and small-chain closed forms.

Nothing here touches the column-sum inverse machinery: stationary vectors
come from a direct linear solve (LAPACK via ``numpy.linalg``), passage times
from per-target elimination systems, and a Monte Carlo estimator provides a
statistical sanity check.  The 2- and 3-state closed forms are evaluated
from explicit parameter formulas.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import rng
from .chain import TransitionMatrix, period
from .errors import Degenerate, NoConvergence, NotIrreducible, SingularMatrix


def stationary_direct(tm: TransitionMatrix) -> np.ndarray:
    """Stationary vector from the linear system (I - P)^T pi = 0.

    The last (redundant) balance equation is replaced by the normalization
    row, giving a nonsingular system that is exact for periodic chains.
    """
    n = tm.n
    a = (np.eye(n) - tm.p).T
    a[-1, :] = 1.0
    b = np.zeros(n)
    b[-1] = 1.0
    try:
        pi = np.linalg.solve(a, b)
    except np.linalg.LinAlgError as exc:
        raise SingularMatrix(f"stationary system is singular: {exc}") from None
    return pi


def stationary_power(
    tm: TransitionMatrix, tol: float = 1e-12, max_iters: int = 200_000
) -> np.ndarray:
    """Damped power iteration pi <- pi (P + I)/2 from the uniform vector.

    The lazy-chain damping removes periodicity without changing the
    stationary vector, so periodic chains converge too.
    """
    q = 0.5 * (tm.p + np.eye(tm.n))
    x = np.full(tm.n, 1.0 / tm.n)
    for _ in range(max_iters):
        y = x @ q
        y /= y.sum()
        if np.abs(y - x).max() < tol:
            return y
        x = y
    raise NoConvergence(f"power iteration did not reach {tol} in {max_iters} iterations")


def mfpt_direct(tm: TransitionMatrix, pi: np.ndarray) -> np.ndarray:
    """Mean first passage times by per-target elimination.

    For each target j the off-target system m_ij = 1 + sum_{k != j} p_ik m_kj
    is solved directly; the diagonal stores the mean recurrence time 1/pi_j.
    """
    n = tm.n
    m = np.empty((n, n))
    idx_all = np.arange(n)
    for j in range(n):
        idx = idx_all[idx_all != j]
        a = np.eye(n - 1) - tm.p[np.ix_(idx, idx)]
        try:
            sol = np.linalg.solve(a, np.ones(n - 1))
        except np.linalg.LinAlgError as exc:
            raise SingularMatrix(f"passage system for target {j + 1} is singular: {exc}") from None
        m[idx, j] = sol
        m[j, j] = 1.0 / pi[j]
    return m


@dataclass(frozen=True)
class McEstimate:
    """Monte Carlo first-passage estimates with their standard errors."""

    mfpt: np.ndarray
    mfpt_se: np.ndarray
    stationary: np.ndarray
    stationary_unreliable: bool
    walks_per_pair: int
    seed: int


def mc_estimate(tm: TransitionMatrix, seed: int, walks_per_pair: int) -> McEstimate:
    """Estimate the passage-time matrix by simulated walks.

    Each (start, target, walk) triple owns its own splitmix64 stream, so the
    result is bit-reproducible for a given seed regardless of batching.  The
    stationary estimate is the normalized reciprocal of the estimated
    recurrence times; it is flagged unreliable for periodic chains.
    """
    if walks_per_pair < 1:
        raise ValueError("walks_per_pair must be at least 1")
    n = tm.n
    cum = np.cumsum(tm.p, axis=1)
    cum[:, -1] = 1.0  # guard against rounding: u < 1 always lands in a bin
    mfpt = np.empty((n, n))
    se = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            base = (i * n + j) * walks_per_pair
            states = rng.seed_streams(seed, base, walks_per_pair)
            lengths = _walk_lengths(cum, i, j, states)
            mfpt[i, j] = lengths.mean()
            se[i, j] = lengths.std(ddof=1) / math.sqrt(walks_per_pair) if walks_per_pair > 1 else 0.0
    recip = 1.0 / mfpt.diagonal()
    return McEstimate(
        mfpt=mfpt,
        mfpt_se=se,
        stationary=recip / recip.sum(),
        stationary_unreliable=period(tm) > 1,
        walks_per_pair=walks_per_pair,
        seed=seed,
    )


def _walk_lengths(cum: np.ndarray, start: int, target: int, streams: np.ndarray) -> np.ndarray:
    """First-passage step counts for a batch of walks, one stream each."""
    k = streams.shape[0]
    lengths = np.zeros(k, dtype=np.int64)
    alive = np.arange(k)
    state = np.full(k, start, dtype=np.intp)
    steps = np.zeros(k, dtype=np.int64)
    while alive.size:
        streams[alive], u = rng.advance(streams[alive])
        nxt = (u[:, None] < cum[state[alive]]).argmax(axis=1)
        steps[alive] += 1
        state[alive] = nxt
        done = nxt == target
        if done.any():
            hit = alive[done]
            lengths[hit] = steps[hit]
            alive = alive[~done]
    return lengths.astype(np.float64)


@dataclass(frozen=True)
class TwoStateClosedForm:
    """Closed-form quantities of the chain [[1-a, a], [b, 1-b]]."""

    a: float
    b: float
    d: float
    pi: np.ndarray
    h: np.ndarray
    z: np.ndarray
    mfpt: np.ndarray
    kemeny: float


def two_state_closed_form(a: float, b: float) -> TwoStateClosedForm:
    """Evaluate the two-state parameter formulas.

    Requires 0 <= a, b <= 1; a + b = 0 leaves two isolated states and is
    rejected as degenerate.
    """
    if not (0.0 <= a <= 1.0 and 0.0 <= b <= 1.0):
        raise ValueError(f"parameters must lie in [0, 1], got a={a!r}, b={b!r}")
    s = a + b
    if s == 0.0:
        raise Degenerate("a + b = 0 gives a reducible two-state chain")
    pi = np.array([b / s, a / s])
    h = np.array([[1.0 + a, -(1.0 - b)], [-(1.0 - a), 1.0 + b]]) / (2.0 * s)
    z = np.array([[b + a / s, a - a / s], [b - b / s, a + b / s]]) / s
    with np.errstate(divide="ignore"):
        mfpt = np.array([[s / b, 1.0 / a], [1.0 / b, s / a]])
    return TwoStateClosedForm(
        a=a, b=b, d=1.0 - s, pi=pi, h=h, z=z, mfpt=mfpt, kemeny=1.0 + 1.0 / s
    )


@dataclass(frozen=True)
class ThreeStateClosedForm:
    """Closed-form quantities of the six-parameter three-state chain.

    Rows of the transition matrix are (1-p2-p3, p2, p3), (q1, 1-q1-q3, q3)
    and (r1, r2, 1-r1-r2).  The subdeterminants delta_i are proportional to
    the stationary probabilities; the tau_ij are the passage-time numerators.
    """

    p2: float
    p3: float
    q1: float
    q3: float
    r1: float
    r2: float
    delta1: float
    delta2: float
    delta3: float
    delta: float
    tau12: float
    tau13: float
    tau21: float
    tau23: float
    tau31: float
    tau32: float
    tau: float
    p: np.ndarray
    pi: np.ndarray
    h: np.ndarray
    z: np.ndarray
    mfpt: np.ndarray
    kemeny: float


def three_state_closed_form(
    p2: float, p3: float, q1: float, q3: float, r1: float, r2: float
) -> ThreeStateClosedForm:
    """Evaluate the three-state parameter formulas.

    The chain is irreducible exactly when all three subdeterminants are
    positive; otherwise NotIrreducible is raised.  H and Z are assembled
    from the rank-structured component matrices of the one-condition
    inverse family G(e, u), whose weighted combination annihilates u.
    """
    params = dict(p2=p2, p3=p3, q1=q1, q3=q3, r1=r1, r2=r2)
    for name, v in params.items():
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"parameter {name}={v!r} outside [0, 1]")
    for pair, total in (("p2+p3", p2 + p3), ("q1+q3", q1 + q3), ("r1+r2", r1 + r2)):
        if total > 1.0:
            raise ValueError(f"parameter sum {pair} = {total!r} exceeds 1")

    d1 = q3 * r1 + q1 * r2 + q1 * r1
    d2 = r1 * p2 + r2 * p3 + r2 * p2
    d3 = p2 * q3 + p3 * q1 + p3 * q3
    if min(d1, d2, d3) <= 0.0:
        raise NotIrreducible(
            f"subdeterminants must all be positive, got ({d1!r}, {d2!r}, {d3!r})"
        )
    delta = d1 + d2 + d3

    t12 = p3 + r1 + r2
    t13 = p2 + q1 + q3
    t21 = q3 + r1 + r2
    t23 = q1 + p2 + p3
    t31 = r2 + q1 + q3
    t32 = r1 + p2 + p3
    tau = p2 + p3 + q1 + q3 + r1 + r2

    p = np.array(
        [
            [1.0 - p2 - p3, p2, p3],
            [q1, 1.0 - q1 - q3, q3],
            [r1, r2, 1.0 - r1 - r2],
        ]
    )
    pi = np.array([d1, d2, d3]) / delta
    mfpt = np.array(
        [
            [delta / d1, t12 / d2, t13 / d3],
            [t21 / d1, delta / d2, t23 / d3],
            [t31 / d1, t32 / d2, delta / d3],
        ]
    )

    big_pi = np.tile(pi, (3, 1))
    a1 = np.array([[0.0, 0.0, 0.0], [-t21, t12, t21 - t12], [-t31, t31 - t13, t13]]) / delta
    a2 = np.array([[t21, -t12, t12 - t21], [0.0, 0.0, 0.0], [t32 - t23, -t32, t23]]) / delta
    a3 = np.array([[t31, t13 - t31, -t13], [t23 - t32, t32, -t23], [0.0, 0.0, 0.0]]) / delta

    c = p.sum(axis=0)
    h = (big_pi + c[0] * a1 + c[1] * a2 + c[2] * a3) / 3.0
    z = big_pi + pi[0] * a1 + pi[1] * a2 + pi[2] * a3
    for u in (c, pi):
        combo = u[0] * a1 + u[1] * a2 + u[2] * a3
        assert np.abs(u @ combo).max() < 1e-12, "component matrices failed to annihilate u"

    return ThreeStateClosedForm(
        p2=p2, p3=p3, q1=q1, q3=q3, r1=r1, r2=r2,
        delta1=d1, delta2=d2, delta3=d3, delta=delta,
        tau12=t12, tau13=t13, tau21=t21, tau23=t23, tau31=t31, tau32=t32, tau=tau,
        p=p, pi=pi, h=h, z=z, mfpt=mfpt, kemeny=1.0 + tau / delta,
    )
