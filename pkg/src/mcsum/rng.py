"""Seedable, platform-independent pseudo-random streams (splitmix64).

Every stochastic component of the package (random chain generation, Monte
Carlo walks) draws from splitmix64 streams derived here, so identical seeds
produce identical output bits on any platform.  The generator advances its
64-bit state by a fixed odd constant and finalizes with an avalanche mix;
stream k of a master seed starts from ``mix64(master + (k+1)*GOLDEN)``.
"""
from __future__ import annotations

import numpy as np

_MASK = 0xFFFFFFFFFFFFFFFF
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

_GOLDEN_U64 = np.uint64(_GOLDEN)
_MIX1_U64 = np.uint64(_MIX1)
_MIX2_U64 = np.uint64(_MIX2)
_INV_2_53 = 2.0 ** -53


def mix64(z: int) -> int:
    """Scalar splitmix64 finalizer (reference implementation)."""
    z &= _MASK
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK
    return z ^ (z >> 31)


def derive_stream(master: int, *indices: int) -> int:
    """Fold integer indices into a master seed, one mix per index.

    Used to give each (chain, trial, walk, ...) coordinate its own
    decorrelated stream seed.
    """
    s = master & _MASK
    for ix in indices:
        s = mix64((s + ((ix + 1) * _GOLDEN)) & _MASK)
    return s


def _mix_vec(z: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore"):
        z = (z ^ (z >> np.uint64(30))) * _MIX1_U64
        z = (z ^ (z >> np.uint64(27))) * _MIX2_U64
        return z ^ (z >> np.uint64(31))


def uniform_block(stream_seed: int, count: int) -> np.ndarray:
    """First `count` uniforms in [0, 1) of the stream, as one vector."""
    with np.errstate(over="ignore"):
        ctr = np.arange(1, count + 1, dtype=np.uint64) * _GOLDEN_U64
        z = _mix_vec(np.uint64(stream_seed & _MASK) + ctr)
    return (z >> np.uint64(11)).astype(np.float64) * _INV_2_53


def seed_streams(master: int, first_index: int, count: int) -> np.ndarray:
    """Stream seeds for indices [first_index, first_index+count), vectorized.

    Matches ``derive_stream(master, k)`` for each k.
    """
    with np.errstate(over="ignore"):
        k = np.arange(first_index + 1, first_index + count + 1, dtype=np.uint64)
        return _mix_vec(np.uint64(master & _MASK) + k * _GOLDEN_U64)


def advance(states: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Advance an array of stream states one step; return (states, uniforms)."""
    with np.errstate(over="ignore"):
        states = states + _GOLDEN_U64
        z = _mix_vec(states)
    return states, (z >> np.uint64(11)).astype(np.float64) * _INV_2_53


class SplitMix64:
    """Scalar sequential generator over one stream (pure Python, reference)."""

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_uint64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK
        return mix64(self._state)

    def next_float(self) -> float:
        return (self.next_uint64() >> 11) * _INV_2_53
