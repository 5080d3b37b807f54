"""Deterministic conversion of a mixed state to pure targets under strictly incoherent operations.

Pipeline: permute the state into irreducible blocks, split every block into
maximal classes whose projection is pure, join the dephased class states on
the majorization lattice, and compare that join with the target.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from . import majorization
from .decomposition import BlockDecomposition, block_decompose, support
from .exceptions import DimensionOverflow, NotDistillable
from .matrixcore import DEFAULT_TOL, tensor
from .purity import comparison_matrix, extract_pure, has_rank_one_submatrix, ones_classes

DEFAULT_DIM_CAP = 2 ** 13
FLOOR_GUARD = 1e-9


@dataclass(frozen=True)
class Candidate:
    indices: tuple[int, ...]
    state: np.ndarray = field(repr=False)
    weight: float
    block: int

    @property
    def dephased(self) -> np.ndarray:
        """Dephased pure state restricted to its own indices."""
        return np.abs(self.state[list(self.indices)]) ** 2

    @property
    def coherent(self) -> bool:
        return len(self.indices) >= 2

    def to_dict(self) -> dict:
        amps = self.state[list(self.indices)]
        return {
            "indices": list(self.indices),
            "weight": self.weight,
            "block": self.block,
            "dephased": self.dephased.tolist(),
            "amplitudes": [[float(c.real), float(c.imag)] for c in amps],
        }


@dataclass(frozen=True)
class CandidateSet:
    entries: tuple[Candidate, ...]
    decomposition: BlockDecomposition

    @property
    def projectors(self) -> list[tuple[int, ...]]:
        return [c.indices for c in self.entries]

    @property
    def all_coherent(self) -> bool:
        return all(c.coherent for c in self.entries)

    def join(self) -> np.ndarray:
        return majorization.join([c.dephased for c in self.entries])


def candidates(rho, tol: float = DEFAULT_TOL) -> CandidateSet:
    """Projector partition with pure projections, built block by block.

    Raises
    ------
    NotPure, CliqueVerificationFailed
        Propagated when the tolerance is inconsistent with the input.
    """
    rho = np.asarray(rho, dtype=complex)
    decomposition = block_decompose(rho, tol)
    entries = []
    for b, block in enumerate(decomposition.blocks):
        idx = np.array(block.indices)
        for cls in ones_classes(comparison_matrix(block.state, tol), tol):
            members = tuple(int(i) for i in idx[list(cls)])
            psi, weight = extract_pure(rho, members, tol)
            entries.append(Candidate(members, psi, weight, b))
    return CandidateSet(tuple(entries), decomposition)


def can_distill_some_pure(rho, tol: float = DEFAULT_TOL) -> bool:
    """True iff every projected class state is coherent."""
    return candidates(rho, tol).all_coherent


def join_target(rho, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Least upper bound of the dephased class states.

    Raises
    ------
    NotDistillable
        Some class is a single index, so its state is incoherent.
    """
    cset = candidates(rho, tol)
    if not cset.all_coherent:
        raise NotDistillable("a projected class state is incoherent")
    return cset.join()


class Feasibility(NamedTuple):
    feasible: bool
    witness: tuple[tuple[int, ...], ...]


def _coherent_count(phi, tol: float) -> int:
    return int(np.count_nonzero(np.abs(np.asarray(phi)) > tol))


def can_transform_to(rho, phi, tol: float = DEFAULT_TOL) -> Feasibility:
    """Decide whether ``rho`` converts to the pure state ``phi`` with certainty.

    The witness is the projector partition when feasible, empty otherwise.
    Incoherent targets are always reachable.
    """
    cset = candidates(rho, tol)
    witness = tuple(cset.projectors)
    if _coherent_count(phi, tol) <= 1:
        return Feasibility(True, witness)
    if not cset.all_coherent:
        return Feasibility(False, ())
    target = np.abs(np.asarray(phi)) ** 2
    if majorization.majorizes(target, cset.join(), tol):
        return Feasibility(True, witness)
    return Feasibility(False, ())


def numerical_rank(rho, tol: float = DEFAULT_TOL) -> int:
    """Rank of ``rho`` summed over its irreducible blocks; pure blocks skip the eigensolver."""
    rank = 0
    for block in block_decompose(rho, tol).blocks:
        sigma = block.state
        if np.vdot(sigma, sigma).real >= 1.0 - 1e-12:
            rank += 1
        else:
            rank += int(np.count_nonzero(np.linalg.eigvalsh(block.weight * sigma) > tol))
    return rank


@dataclass(frozen=True)
class RankBound:
    support_size: int
    target_size: int
    rank: int

    @property
    def satisfied(self) -> bool:
        return self.rank <= self.support_size // self.target_size

    def to_dict(self) -> dict:
        return {
            "m": self.support_size,
            "n": self.target_size,
            "rank": self.rank,
            "satisfied": self.satisfied,
        }


def rank_bound(rho, target_size: int, tol: float = DEFAULT_TOL) -> RankBound:
    return RankBound(int(support(rho, tol).size), int(target_size), numerical_rank(rho, tol))


def rank_bound_check(rho, phi, tol: float = DEFAULT_TOL) -> bool:
    """Necessary condition for convertibility: ``rank(rho) <= floor(m / n)``."""
    return rank_bound(rho, max(_coherent_count(phi, tol), 1), tol).satisfied


def floor_log2_inverse(x: float) -> int:
    """``floor(log2(1/x))`` with a guard so exact powers of two are not rounded down."""
    return int(math.floor(-math.log2(x) + FLOOR_GUARD))


@dataclass(frozen=True)
class DistillationReport:
    candidates: CandidateSet
    join_target: np.ndarray | None
    inf_norm: float | None
    n_max: int
    distillable_to_pure: bool
    bound_state: bool
    diagnostics: RankBound
    dim: int

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "decomposition": self.candidates.decomposition.to_dict(),
            "candidates": [c.to_dict() for c in self.candidates.entries],
            "join_target": None if self.join_target is None else self.join_target.tolist(),
            "inf_norm": self.inf_norm,
            "n_max": self.n_max,
            "distillable_to_pure": self.distillable_to_pure,
            "bound_state": self.bound_state,
            "diagnostics": self.diagnostics.to_dict(),
        }


def n_max(
    states: Sequence[np.ndarray],
    tol: float = DEFAULT_TOL,
    dim_cap: int = DEFAULT_DIM_CAP,
) -> DistillationReport:
    """Maximum number of two-level maximally coherent states extractable with certainty.

    ``states`` are density matrices; their tensor product is analysed.

    Raises
    ------
    DimensionOverflow
        The product dimension exceeds ``dim_cap``.
    """
    states = [np.asarray(s, dtype=complex) for s in states]
    if not states:
        raise ValueError("at least one state is required")
    dim = math.prod(s.shape[0] for s in states)
    if dim > dim_cap:
        raise DimensionOverflow(f"product dimension {dim} exceeds cap {dim_cap}")
    rho = tensor(*states)
    cset = candidates(rho, tol)
    bound = not has_rank_one_submatrix(rho, tol)
    if not cset.all_coherent:
        return DistillationReport(cset, None, None, 0, False, bound, rank_bound(rho, 1, tol), dim)
    target = cset.join()
    inf_norm = float(target.max())
    count = floor_log2_inverse(inf_norm)
    return DistillationReport(
        cset, target, inf_norm, count, True, bound, rank_bound(rho, 2 ** count, tol), dim
    )
