"""Permutation of a density matrix into irreducible diagonal blocks."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .matrixcore import DEFAULT_TOL, inverse_permutation, permute


@dataclass(frozen=True)
class Block:
    indices: tuple[int, ...]
    weight: float
    state: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.indices)


@dataclass(frozen=True)
class BlockDecomposition:
    """``permute(rho, permutation)`` equals the direct sum of weighted blocks, then zeros."""

    permutation: np.ndarray
    blocks: tuple[Block, ...]
    null_indices: tuple[int, ...]

    @property
    def dim(self) -> int:
        return self.permutation.size

    @property
    def null_dim(self) -> int:
        return len(self.null_indices)

    def block_diagonal(self) -> np.ndarray:
        """The permuted matrix rebuilt from the blocks."""
        out = np.zeros((self.dim, self.dim), dtype=complex)
        start = 0
        for block in self.blocks:
            stop = start + block.dim
            out[start:stop, start:stop] = block.weight * block.state
            start = stop
        return out

    def reassemble(self) -> np.ndarray:
        return permute(self.block_diagonal(), inverse_permutation(self.permutation))

    def to_dict(self) -> dict:
        return {
            "permutation": self.permutation.tolist(),
            "blocks": [
                {"indices": list(b.indices), "weight": b.weight, "dim": b.dim}
                for b in self.blocks
            ],
            "null_indices": list(self.null_indices),
        }


def support(rho, tol: float = DEFAULT_TOL) -> np.ndarray:
    return np.nonzero(np.asarray(rho).diagonal().real > tol)[0]


def support_graph(rho, tol: float = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Vertices (support indices) and edge list ``(i, j)``, ``i < j``, of ``|rho_ij| > tol``."""
    rho = np.asarray(rho)
    vertices = support(rho, tol)
    sub = np.abs(rho[np.ix_(vertices, vertices)]) > tol
    rows, cols = np.nonzero(np.triu(sub, k=1))
    edges = np.column_stack([vertices[rows], vertices[cols]])
    return vertices, edges


def components(adjacency: np.ndarray) -> list[np.ndarray]:
    """Connected components of a dense boolean adjacency, ordered by smallest member."""
    n = adjacency.shape[0]
    if n == 0:
        return []
    _, labels = connected_components(csr_matrix(adjacency), directed=False)
    groups: dict[int, list[int]] = {}
    for idx, lab in enumerate(labels):
        groups.setdefault(int(lab), []).append(idx)
    return sorted((np.array(g) for g in groups.values()), key=lambda g: g[0])


def block_decompose(rho, tol: float = DEFAULT_TOL) -> BlockDecomposition:
    """Split ``rho`` into the connected components of its support graph.

    Blocks are ordered by smallest original index and keep the original index
    order inside; zero-diagonal indices go last as the null space.
    """
    rho = np.asarray(rho, dtype=complex)
    d = rho.shape[0]
    vertices = support(rho, tol)
    adjacency = np.abs(rho[np.ix_(vertices, vertices)]) > tol
    blocks = []
    order: list[int] = []
    for comp in components(adjacency):
        idx = vertices[comp]
        sub = rho[np.ix_(idx, idx)]
        weight = float(np.trace(sub).real)
        blocks.append(Block(tuple(int(i) for i in idx), weight, sub / weight))
        order.extend(int(i) for i in idx)
    seen = set(order)
    null = [i for i in range(d) if i not in seen]
    order.extend(null)
    # order lists original indices by new position; the permutation is its inverse
    permutation = inverse_permutation(order)
    return BlockDecomposition(permutation, tuple(blocks), tuple(null))
