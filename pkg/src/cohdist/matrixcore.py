"""Dense density-matrix substrate: validation, dephasing, tensor products, permutations.

States are plain complex ``numpy`` arrays in the incoherent reference basis.
A permutation is stored as its image array ``P`` with ``P[i]`` the new
position of basis index ``i``.
"""

from __future__ import annotations

from functools import reduce
from typing import Sequence

import numpy as np

from .exceptions import (
    DimensionMismatch,
    InvalidPermutation,
    NotHermitian,
    NotNormalized,
    NotPSD,
    TraceNotOne,
)

DEFAULT_TOL = 1e-9
PSD_TOL = 1e-7
RENORMALIZE_WINDOW = 1e-6


def validate(rho, tol: float = DEFAULT_TOL, normalize: bool = True) -> np.ndarray:
    """Check every density-matrix invariant and return a complex copy.

    A trace within ``1e-6`` of one is rescaled to exactly one when
    ``normalize`` is set; outside ``tol`` otherwise it is an error.

    Raises
    ------
    NotHermitian, NotPSD, TraceNotOne, DimensionMismatch
    """
    rho = np.array(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] == 0:
        raise DimensionMismatch(f"density matrix must be square and nonempty, got shape {rho.shape}")
    if not np.all(np.isfinite(rho)):
        raise NotHermitian("density matrix has non-finite entries")
    if np.max(np.abs(rho - rho.conj().T)) > tol:
        raise NotHermitian("density matrix is not Hermitian")
    rho = (rho + rho.conj().T) / 2

    trace = np.trace(rho).real
    if abs(trace - 1.0) > tol:
        if normalize and abs(trace - 1.0) <= RENORMALIZE_WINDOW:
            rho = rho / trace
        else:
            raise TraceNotOne(f"trace is {trace!r}, not 1")

    if np.linalg.eigvalsh(rho).min() < -PSD_TOL:
        raise NotPSD("density matrix has a negative eigenvalue")
    diag = rho.diagonal().real
    if diag.min() < -tol:
        raise NotPSD("density matrix has a negative diagonal entry")
    # zero diagonal forces a zero row; sqrt(tol) is the Cauchy-Schwarz slack
    empty = diag <= tol
    if empty.any():
        offdiag = np.abs(rho[empty]).copy()
        offdiag[np.arange(offdiag.shape[0]), np.nonzero(empty)[0]] = 0.0
        if offdiag.max() > np.sqrt(tol):
            raise NotPSD("row with zero diagonal has nonzero off-diagonal entries")
    return rho


def pure_state(amplitudes, tol: float = DEFAULT_TOL) -> np.ndarray:
    psi = np.array(amplitudes, dtype=complex).reshape(-1)
    if psi.size == 0:
        raise DimensionMismatch("pure state must have at least one amplitude")
    norm = np.vdot(psi, psi).real
    if abs(norm - 1.0) > tol:
        raise NotNormalized(f"squared norm is {norm!r}, not 1")
    return psi


def density(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    return np.outer(psi, psi.conj())


def maximally_coherent(d: int) -> np.ndarray:
    return np.full(d, 1 / np.sqrt(d), dtype=complex)


def dephase(rho) -> np.ndarray:
    """Diagonal of ``rho`` as a real probability vector."""
    return np.asarray(rho).diagonal().real.copy()


def tensor(*states: np.ndarray) -> np.ndarray:
    """Kronecker product; index ``(i1, i2)`` maps to ``i1 * d2 + i2``."""
    if not states:
        raise DimensionMismatch("tensor needs at least one factor")
    return reduce(np.kron, states)


def as_permutation(image: Sequence[int], dim: int | None = None) -> np.ndarray:
    image = np.asarray(image, dtype=int).reshape(-1)
    n = image.size
    if dim is not None and n != dim:
        raise DimensionMismatch(f"permutation has length {n}, expected {dim}")
    if not np.array_equal(np.sort(image), np.arange(n)):
        raise InvalidPermutation(f"{image.tolist()} is not a bijection on 0..{n - 1}")
    return image


def inverse_permutation(image) -> np.ndarray:
    image = as_permutation(image)
    inv = np.empty_like(image)
    inv[image] = np.arange(image.size)
    return inv


def permutation_matrix(image) -> np.ndarray:
    """Matrix ``P`` with ``P @ e_i = e_{image[i]}``."""
    image = as_permutation(image)
    P = np.zeros((image.size, image.size))
    P[image, np.arange(image.size)] = 1.0
    return P


def permute(rho, image) -> np.ndarray:
    """Conjugate by a permutation: ``out[P[i], P[j]] = rho[i, j]``."""
    rho = np.asarray(rho)
    image = as_permutation(image, rho.shape[0])
    out = np.empty_like(rho)
    out[np.ix_(image, image)] = rho
    return out
