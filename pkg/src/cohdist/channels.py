"""Strictly incoherent channels: validation, application, composition and synthesis.

A strictly incoherent Kraus operator has at most one nonzero entry in every
row and every column. Kraus operators may be rectangular (``d_out x d_in``).

Pure-to-pure synthesis works in two stages. A staircase of two-level
transfers carries the dephased source to the dephased target; the transfers
multiply into a doubly stochastic matrix ``D`` with ``source = D @ target``.
A Birkhoff decomposition ``D = sum_k t_k Q_k`` then gives one Kraus operator
per permutation, ``K_k = sqrt(t_k) diag(phi) Q_k^T diag(1/psi)``, so every
branch maps ``psi`` to ``sqrt(t_k) phi`` exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from . import majorization
from .exceptions import DimensionMismatch, InvalidChannel, NotMajorized, NotTransformable
from .matrixcore import DEFAULT_TOL, validate

COMPLETENESS_TOL = 1e-9


def is_strictly_incoherent(K, tol: float = DEFAULT_TOL) -> bool:
    nz = np.abs(np.asarray(K)) > tol
    return bool(nz.sum(axis=0).max(initial=0) <= 1 and nz.sum(axis=1).max(initial=0) <= 1)


@dataclass(frozen=True)
class SIOChannel:
    kraus: tuple[np.ndarray, ...]

    def __post_init__(self):
        if not self.kraus:
            raise InvalidChannel("channel needs at least one Kraus operator")
        shape = self.kraus[0].shape
        if any(K.shape != shape for K in self.kraus):
            raise DimensionMismatch("Kraus operators must share one shape")

    @property
    def d_in(self) -> int:
        return self.kraus[0].shape[1]

    @property
    def d_out(self) -> int:
        return self.kraus[0].shape[0]

    def completeness_error(self) -> float:
        total = sum(K.conj().T @ K for K in self.kraus)
        return float(np.max(np.abs(total - np.eye(self.d_in))))

    def check(self, tol: float = DEFAULT_TOL, completeness_tol: float = COMPLETENESS_TOL) -> "SIOChannel":
        """Raise :class:`InvalidChannel` unless the channel is strictly incoherent and complete."""
        for n, K in enumerate(self.kraus):
            if not is_strictly_incoherent(K, tol):
                raise InvalidChannel(f"Kraus operator {n} is not strictly incoherent")
        err = self.completeness_error()
        if err > completeness_tol:
            raise InvalidChannel(f"completeness violated by {err:.3e}")
        return self

    def __call__(self, rho) -> np.ndarray:
        return apply(self, rho)


def make_channel(kraus: Sequence, tol: float = DEFAULT_TOL) -> SIOChannel:
    """Build a validated channel, dropping operators whose entries are all below ``tol``."""
    ops = [np.asarray(K, dtype=complex) for K in kraus]
    kept = [K for K in ops if np.abs(K).max(initial=0.0) > tol]
    return SIOChannel(tuple(kept or ops[:1])).check(tol)


def apply(channel: SIOChannel, rho, tol: float = DEFAULT_TOL) -> np.ndarray:
    """``sum_n K_n rho K_n^dagger``, validated as a density matrix.

    Raises
    ------
    DimensionMismatch
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (channel.d_in, channel.d_in):
        raise DimensionMismatch(f"channel input dimension {channel.d_in} does not match state {rho.shape}")
    out = sum(K @ rho @ K.conj().T for K in channel.kraus)
    return validate(out, tol=tol, normalize=False)


def compose(outer: SIOChannel, inner: SIOChannel) -> SIOChannel:
    """Channel ``outer o inner``: Kraus operators are all products ``K_outer @ K_inner``."""
    if outer.d_in != inner.d_out:
        raise DimensionMismatch(f"cannot compose {outer.d_in}-input after {inner.d_out}-output")
    return SIOChannel(tuple(A @ B for A in outer.kraus for B in inner.kraus))


def dephasing_channel(d: int) -> SIOChannel:
    return SIOChannel(tuple(np.diag(np.eye(d)[i]).astype(complex) for i in range(d)))


def identity_channel(d: int) -> SIOChannel:
    return SIOChannel((np.eye(d, dtype=complex),))


# -- synthesis ---------------------------------------------------------------


def staircase(x, y, rtol: float = 1e-13) -> list[tuple[int, int, float]]:
    """Two-level transfers carrying sorted ``x`` to sorted ``y`` when ``x`` is majorized by ``y``.

    Each step ``(j, k, delta)`` with ``j < k`` moves ``delta`` from position
    ``k`` to position ``j``; after every step one more position agrees with
    ``y``. The chain has at most ``len(x) - 1`` steps.
    """
    z = np.array(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n = z.size
    eps = rtol * max(1.0, float(np.abs(y).max(initial=0.0)))
    steps = []
    for _ in range(n * n):
        below = np.nonzero(z < y - eps)[0]
        if below.size == 0:
            return steps
        j = int(below[-1])
        above = np.nonzero(z[j + 1:] > y[j + 1:] + eps)[0]
        if above.size == 0:
            # residual rounding only; y dominates everywhere within eps
            return steps
        k = j + 1 + int(above[0])
        delta = min(y[j] - z[j], z[k] - y[k])
        steps.append((j, k, float(delta)))
        if y[j] - z[j] <= z[k] - y[k]:
            z[k] -= delta
            z[j] = y[j]
        else:
            z[j] += delta
            z[k] = y[k]
    raise AssertionError("staircase did not terminate")


def staircase_matrix(x, y, steps) -> np.ndarray:
    """Doubly stochastic ``D`` with ``x = D @ y`` assembled from the inverse transfers.

    Undoing a transfer on ``(j, k)`` is a T-transform
    ``lam * I + (1 - lam) * swap(j, k)``; ``D`` is their product in chain order.
    """
    n = len(x)
    D = np.eye(n)
    z = np.array(x, dtype=float)
    for j, k, delta in steps:
        new_j, new_k = z[j] + delta, z[k] - delta
        spread = new_j - new_k
        lam = 1.0 if spread <= 0 else (z[j] - new_k) / spread
        lam = min(max(lam, 0.0), 1.0)
        T = np.eye(n)
        T[[j, k], [j, k]] = lam
        T[j, k] = T[k, j] = 1.0 - lam
        D = D @ T
        z[j], z[k] = new_j, new_k
    return D


def birkhoff(D, tol: float = 1e-13) -> list[tuple[float, np.ndarray]]:
    """Greedy Birkhoff decomposition ``D = sum_k t_k Q_k``.

    Each permutation is returned as its column index per row, so ``Q_k[r, perm[r]] = 1``.
    """
    R = np.array(D, dtype=float)
    n = R.shape[0]
    terms = []
    big = n + 1.0
    for _ in range(n * n + 1):
        if R.sum() <= n * tol:
            break
        cost = np.where(R > tol, -R, big)
        rows, cols = linear_sum_assignment(cost)
        if np.any(R[rows, cols] <= tol):
            break
        t = float(R[rows, cols].min())
        perm = np.empty(n, dtype=int)
        perm[rows] = cols
        terms.append((t, perm))
        R[rows, cols] -= t
        R[R < tol] = 0.0
    if abs(sum(t for t, _ in terms) - 1.0) > 1e-9:
        raise AssertionError("Birkhoff decomposition lost mass")
    return terms


def _fill_columns(kraus: list[np.ndarray], columns, d_out: int) -> None:
    """Give each column in ``columns`` unit weight at a free row of some Kraus operator.

    These columns carry no amplitude of the source state, so they only need
    to satisfy completeness. The diagonal position is preferred.
    """
    for c in columns:
        placed = False
        for K in kraus:
            free = np.nonzero(~(np.abs(K) > 0).any(axis=1))[0]
            if free.size == 0:
                continue
            row = c if (c < d_out and c in free) else int(free[0])
            K[row, c] = 1.0
            placed = True
            break
        if not placed:
            K = np.zeros((d_out, kraus[0].shape[1]), dtype=complex)
            K[0, c] = 1.0
            kraus.append(K)


def _polish(kraus: list[np.ndarray], columns) -> None:
    """Rescale columns so completeness holds to rounding on ``columns``."""
    cols = list(columns)
    weight = sum((np.abs(K[:, cols]) ** 2).sum(axis=0) for K in kraus)
    scale = 1.0 / np.sqrt(weight)
    for K in kraus:
        K[:, cols] *= scale


def _normalize_phase(K: np.ndarray, psi: np.ndarray) -> np.ndarray:
    out = K @ psi
    nz = np.nonzero(np.abs(out) > 1e-12)[0]
    if nz.size == 0:
        return K
    c = out[nz[0]]
    return K * (abs(c) / c)


def _pure_kraus(psi, phi, tol: float) -> list[np.ndarray]:
    """Kraus operators (``len(phi) x len(psi)``) taking ``psi`` to ``phi`` on every branch."""
    psi = np.asarray(psi, dtype=complex)
    phi = np.asarray(phi, dtype=complex)
    d_in, d_out = psi.size, phi.size
    x_full = np.abs(psi) ** 2
    y_full = np.abs(phi) ** 2
    if not majorization.majorizes(y_full, x_full, tol):
        raise NotMajorized("dephased source is not majorized by dephased target")

    S = np.nonzero(x_full > tol ** 2)[0]
    R = np.nonzero(y_full > tol ** 2)[0]
    k = S.size
    if R.size > k:
        raise NotMajorized("target support exceeds source support")
    x = x_full[S] / x_full[S].sum()
    y = np.zeros(k)
    y[: R.size] = y_full[R] / y_full[R].sum()

    ox = np.argsort(-x, kind="stable")
    oy = np.argsort(-y, kind="stable")
    xs, ys = x[ox], y[oy]
    D_sorted = staircase_matrix(xs, ys, staircase(xs, ys))
    D = np.empty_like(D_sorted)
    D[np.ix_(ox, oy)] = D_sorted

    kraus = []
    for t, perm in birkhoff(D):
        # Q[c, perm[c]] = 1 maps source slot c to target slot perm[c]
        K = np.zeros((d_out, d_in), dtype=complex)
        for c in range(k):
            r = perm[c]
            if r < R.size:
                K[R[r], S[c]] = np.sqrt(t) * phi[R[r]] / psi[S[c]]
        kraus.append(K)
    kraus = [K for K in kraus if np.abs(K).max(initial=0.0) > tol]
    _polish(kraus, S)
    rest = [c for c in range(d_in) if c not in set(S.tolist())]
    _fill_columns(kraus, rest, d_out)
    return [_normalize_phase(K, psi) for K in kraus]


def synthesize_pure_to_pure(psi, phi, tol: float = DEFAULT_TOL) -> SIOChannel:
    """Strictly incoherent channel with every branch mapping ``psi`` onto ``phi``.

    Raises
    ------
    NotMajorized
        The dephased ``psi`` is not majorized by the dephased ``phi``.
    """
    return make_channel(_pure_kraus(psi, phi, tol), tol)


def assemble_distillation_channel(rho, phi, tol: float = DEFAULT_TOL) -> SIOChannel:
    """Direct sum over the class projectors of per-class pure-to-pure channels.

    Raises
    ------
    NotTransformable
        ``rho`` cannot be converted to ``phi`` with certainty.
    """
    from .distillation import can_transform_to, candidates

    rho = np.asarray(rho, dtype=complex)
    phi = np.asarray(phi, dtype=complex)
    if not can_transform_to(rho, phi, tol).feasible:
        raise NotTransformable("no strictly incoherent operation reaches the target")
    d_in, d_out = rho.shape[0], phi.size
    kraus = []
    covered: set[int] = set()
    for cand in candidates(rho, tol).entries:
        idx = list(cand.indices)
        for K_local in _pure_kraus(cand.state[idx], phi, tol):
            K = np.zeros((d_out, d_in), dtype=complex)
            K[:, idx] = K_local
            kraus.append(K)
        covered.update(idx)
    _fill_columns(kraus, [c for c in range(d_in) if c not in covered], d_out)
    return make_channel(kraus, tol)
