"""Majorization preorder and the lattice operations on probability vectors.

Vectors of unequal length are compared after zero-padding to a common
length. All comparisons use one absolute tolerance; ties count as satisfied.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .exceptions import InvalidDistribution

DEFAULT_TOL = 1e-9


def as_prob_vector(p, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Validate ``p`` as a finite probability distribution and return a float copy."""
    arr = np.array(p, dtype=float).reshape(-1)
    if arr.size == 0:
        raise InvalidDistribution("distribution must have at least one entry")
    if not np.all(np.isfinite(arr)):
        raise InvalidDistribution("distribution entries must be finite")
    if arr.min() < -tol or arr.max() > 1 + tol:
        raise InvalidDistribution("entries must lie in [0, 1]")
    total = arr.sum()
    if abs(total - 1.0) > tol:
        raise InvalidDistribution(f"entries must sum to 1 (got {total!r})")
    return arr


def pad(p: np.ndarray, dim: int) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.size >= dim:
        return p
    return np.concatenate([p, np.zeros(dim - p.size)])


def sort_desc(p) -> np.ndarray:
    return np.sort(np.asarray(p, dtype=float))[::-1]


def curve(p, dim: int | None = None) -> np.ndarray:
    """Cumulative sums of the descending rearrangement of ``p`` (the Lorenz curve)."""
    p = sort_desc(p)
    if dim is not None:
        p = pad(p, dim)
    return np.cumsum(p)


def increments(c: np.ndarray) -> np.ndarray:
    """Inverse of :func:`curve`: first differences with an implicit leading zero."""
    return np.diff(np.asarray(c, dtype=float), prepend=0.0)


def majorizes(q, p, tol: float = DEFAULT_TOL) -> bool:
    """Return True iff ``p`` is majorized by ``q``."""
    dim = max(len(q), len(p))
    return bool(np.all(curve(q, dim) >= curve(p, dim) - tol))


def _snap_tail(c: np.ndarray) -> np.ndarray:
    """Pin curve values within a few ulps of the total to the total, so saturated tails increment by exactly zero."""
    c = np.array(c, dtype=float)
    total = c[-1]
    c[np.abs(c - total) <= 16 * np.finfo(float).eps * max(1.0, abs(total))] = total
    return c


def _curves(S: Iterable[Sequence[float]]) -> np.ndarray:
    vectors = [np.asarray(s, dtype=float).reshape(-1) for s in S]
    if not vectors:
        raise InvalidDistribution("set of distributions must be nonempty")
    dim = max(v.size for v in vectors)
    return np.vstack([curve(v, dim) for v in vectors])


def meet(S: Iterable[Sequence[float]]) -> np.ndarray:
    """Greatest lower bound of ``S``.

    The pointwise minimum of concave curves is concave, so its increments are
    already a sorted distribution.
    """
    return increments(_snap_tail(_curves(S).min(axis=0)))


def flatten_once(a) -> np.ndarray:
    """One step of the averaging lemma for non-monotone increment vectors.

    With ``j`` the first (0-based) position where ``a[j] > a[j-1]`` and ``i``
    the largest position below ``j`` whose left neighbour is at least the
    mean of ``a[i..j]`` (a virtual ``a[-1] = +inf`` makes ``i = 0``
    admissible), entries ``i..j`` are replaced by that mean. A nonincreasing
    input is a fixed point and is returned unchanged.
    """
    a = np.array(a, dtype=float)
    rises = np.nonzero(a[1:] > a[:-1])[0]
    if rises.size == 0:
        return a
    j = int(rises[0]) + 1
    total = a[j]
    for i in range(j - 1, -1, -1):
        total += a[i]
        mean = total / (j - i + 1)
        if i == 0 or a[i - 1] >= mean:
            a[i:j + 1] = mean
            return a
    raise AssertionError("unreachable: i = 0 always qualifies")


def join(S: Iterable[Sequence[float]]) -> np.ndarray:
    """Least upper bound of ``S``.

    Builds the increment vector of the pointwise-maximum curve and flattens it
    until nonincreasing. Each pass fixes the prefix up to its ``j``, so at
    most ``dim - 1`` passes are needed.
    """
    c = _snap_tail(_curves(S).max(axis=0))
    a = increments(c)
    for _ in range(a.size):
        nxt = flatten_once(a)
        if np.array_equal(nxt, a):
            return a
        a = nxt
    raise AssertionError("flattening did not reach a fixed point within dim passes")
