"""Random instances for tests and experiments. Every function takes a ``numpy`` Generator."""

from __future__ import annotations

import numpy as np

from .matrixcore import density, permute


def rand_prob(rng: np.random.Generator, dim: int, sparsity: float = 0.0) -> np.ndarray:
    """Random distribution; each entry is zeroed with probability ``sparsity`` (one always survives)."""
    p = rng.dirichlet(np.ones(dim) * rng.uniform(0.2, 2.0))
    if sparsity > 0:
        mask = rng.random(dim) < sparsity
        mask[rng.integers(dim)] = False
        p[mask] = 0.0
        p /= p.sum()
    return p


def rand_pure(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Haar-random pure state; all amplitudes are nonzero almost surely."""
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def pure_with_dephased(rng: np.random.Generator, probs) -> np.ndarray:
    """Pure state with the given dephased distribution and random phases."""
    probs = np.asarray(probs, dtype=float)
    return np.sqrt(probs) * np.exp(2j * np.pi * rng.random(probs.size))


def rand_density(rng: np.random.Generator, dim: int, rank: int | None = None) -> np.ndarray:
    rank = dim if rank is None else rank
    G = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = G @ G.conj().T
    return rho / np.trace(rho).real


def rand_permutation(rng: np.random.Generator, dim: int) -> np.ndarray:
    return rng.permutation(dim)


def block_state(blocks, weights) -> np.ndarray:
    """Direct sum of ``weights[mu] * blocks[mu]`` in order."""
    dim = sum(b.shape[0] for b in blocks)
    rho = np.zeros((dim, dim), dtype=complex)
    start = 0
    for w, b in zip(weights, blocks):
        stop = start + b.shape[0]
        rho[start:stop, start:stop] = w * b
        start = stop
    return rho


def rand_pure_block_state(
    rng: np.random.Generator,
    block_dims,
    null_dim: int = 0,
    scramble: bool = True,
) -> tuple[np.ndarray, list[np.ndarray], np.ndarray]:
    """Direct sum of random pure blocks with random weights, optionally permuted.

    Returns ``(rho, block_states, permutation)``; ``permute(block_sum, permutation)`` is ``rho``.
    """
    states = [rand_pure(rng, d) for d in block_dims]
    weights = rng.dirichlet(np.ones(len(block_dims)))
    blocks = [density(s) for s in states]
    if null_dim:
        blocks.append(np.zeros((null_dim, null_dim)))
        weights = np.append(weights, 0.0)
    rho = block_state(blocks, weights)
    perm = rand_permutation(rng, rho.shape[0]) if scramble else np.arange(rho.shape[0])
    return permute(rho, perm), states, perm
