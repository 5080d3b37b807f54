"""Comparison matrix, saturated index classes and pure-state extraction.

The comparison matrix holds ``|rho_ij| / sqrt(rho_ii rho_jj)`` on the support
of the diagonal. An entry equal to one means the 2x2 principal submatrix on
``{i, j}`` has rank one; for positive semidefinite input that relation is
transitive, so its classes are the maximal all-ones principal submatrices.
"""

from __future__ import annotations

import numpy as np

from .decomposition import components
from .exceptions import CliqueVerificationFailed, NotPure, ZeroWeight
from .matrixcore import DEFAULT_TOL

PURITY_TOL = 1e-9


def comparison_matrix(rho, tol: float = DEFAULT_TOL) -> np.ndarray:
    rho = np.asarray(rho)
    diag = rho.diagonal().real
    on = diag > tol
    scale = np.zeros_like(diag)
    scale[on] = 1.0 / np.sqrt(diag[on])
    A = scale[:, None] * np.abs(rho) * scale[None, :]
    A[np.diag_indices_from(A)] = on.astype(float)
    return A


def ones_classes(A, tol: float = DEFAULT_TOL) -> list[tuple[int, ...]]:
    """Maximal index sets on which every entry of ``A`` is 1 within ``tol``.

    Classes partition the support (indices with a unit diagonal), are
    disjoint, and come back ordered by smallest member.

    Raises
    ------
    CliqueVerificationFailed
        A connected component of the saturation graph is not complete.
    """
    A = np.asarray(A, dtype=float)
    sup = np.nonzero(A.diagonal() > 0.5)[0]
    saturated = A[np.ix_(sup, sup)] >= 1.0 - tol
    classes = []
    for comp in components(saturated):
        if not saturated[np.ix_(comp, comp)].all():
            raise CliqueVerificationFailed(
                f"indices {sup[comp].tolist()} are connected by saturated pairs "
                "but do not form an all-ones submatrix"
            )
        classes.append(tuple(int(i) for i in sup[comp]))
    return classes


def extract_pure(rho, indices, tol: float = DEFAULT_TOL) -> tuple[np.ndarray, float]:
    """Pure state obtained by projecting ``rho`` onto ``indices`` and renormalizing.

    Returns the amplitude vector (full dimension, zero off ``indices``) and the
    projection weight. The global phase makes the amplitude at the reference
    index real and positive; the reference is the first index of largest
    diagonal weight.

    Raises
    ------
    ZeroWeight
        The projection has trace at most ``tol``.
    NotPure
        The normalized projection has purity below ``1 - max(1e-9, tol)``.
    """
    rho = np.asarray(rho)
    idx = np.array(sorted(indices), dtype=int)
    block = rho[np.ix_(idx, idx)]
    weight = float(np.trace(block).real)
    if weight <= tol:
        raise ZeroWeight(f"projection onto {idx.tolist()} has weight {weight!r}")
    sigma = block / weight
    purity = float(np.vdot(sigma, sigma).real)
    if purity < 1.0 - max(PURITY_TOL, tol):
        raise NotPure(f"projection onto {idx.tolist()} has purity {purity!r}")
    diag = sigma.diagonal().real
    ref = int(np.argmax(diag))
    amps = sigma[:, ref] / np.sqrt(diag[ref])
    amps[ref] = np.sqrt(diag[ref])
    psi = np.zeros(rho.shape[0], dtype=complex)
    psi[idx] = amps
    return psi, weight


def has_rank_one_submatrix(rho, tol: float = DEFAULT_TOL) -> bool:
    """True iff some off-diagonal pair saturates the comparison matrix."""
    A = comparison_matrix(rho, tol)
    np.fill_diagonal(A, 0.0)
    return bool((A >= 1.0 - tol).any())


def summarize(A, classes, weights=None, tol: float = DEFAULT_TOL) -> dict:
    """Report fragment: smallest off-diagonal entry on the support and saturated pairs."""
    A = np.asarray(A, dtype=float)
    sup = np.nonzero(A.diagonal() > 0.5)[0]
    sub = A[np.ix_(sup, sup)]
    iu = np.triu_indices(sup.size, k=1)
    off = sub[iu]
    saturated = int(np.count_nonzero(off >= 1.0 - tol))
    out = {
        "min_offdiag": float(off.min()) if off.size else None,
        "saturated_pairs": saturated,
        "classes": [list(c) for c in classes],
    }
    if weights is not None:
        out["class_weights"] = [float(w) for w in weights]
    return out
