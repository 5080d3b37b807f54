import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cohdist.channels import (
    SIOChannel,
    apply,
    assemble_distillation_channel,
    birkhoff,
    compose,
    dephasing_channel,
    identity_channel,
    is_strictly_incoherent,
    staircase,
    staircase_matrix,
    synthesize_pure_to_pure,
)
from cohdist.exceptions import DimensionMismatch, InvalidChannel, NotMajorized, NotTransformable
from cohdist.majorization import majorizes
from cohdist.matrixcore import density, maximally_coherent, permutation_matrix, tensor
from cohdist.random import block_state, pure_with_dephased, rand_density, rand_prob, rand_pure

from instances import concentrate, random_pair

PLUS_VEC = maximally_coherent(2)
PLUS = density(PLUS_VEC)


def branch_residual(K, psi, phi):
    out = K @ psi
    w = np.vdot(out, out).real
    if w < 1e-24:
        return 0.0
    overlap = np.vdot(phi, out)
    phase = overlap / abs(overlap)
    return float(np.linalg.norm(out - np.sqrt(w) * phase * phi))


def test_is_strictly_incoherent_examples(rng):
    assert is_strictly_incoherent(np.diag([0.3, 0.7j]))
    assert not is_strictly_incoherent([[1, 1], [0, 0]])
    assert not is_strictly_incoherent([[1, 0], [1, 0]])
    assert is_strictly_incoherent(permutation_matrix(rng.permutation(5)))
    assert is_strictly_incoherent(np.zeros((2, 3)))


def test_apply_examples(rng):
    rho = rand_density(rng, 3)
    np.testing.assert_allclose(apply(identity_channel(3), rho), rho, atol=1e-15)
    np.testing.assert_allclose(apply(dephasing_channel(3), rho), np.diag(np.diag(rho)), atol=1e-15)
    two = SIOChannel((np.diag([1.0, 0.0]).astype(complex), np.array([[0, 1], [0, 0]], dtype=complex)))
    np.testing.assert_allclose(apply(two, PLUS), [[1, 0], [0, 0]], atol=1e-15)
    with pytest.raises(DimensionMismatch):
        apply(two, rho)


def test_channel_check_rejects_bad_channels():
    with pytest.raises(InvalidChannel):
        SIOChannel((np.eye(2, dtype=complex) * 0.5,)).check()
    with pytest.raises(InvalidChannel):
        SIOChannel((np.array([[1, 1], [0, 0]], dtype=complex) / np.sqrt(2),)).check()


def test_synthesize_identity():
    psi = np.sqrt([0.5, 0.3, 0.2]).astype(complex)
    ch = synthesize_pure_to_pure(psi, psi)
    assert len(ch.kraus) == 1
    np.testing.assert_allclose(ch.kraus[0], np.eye(3), atol=1e-12)


def test_synthesize_plus_to_zero():
    ch = synthesize_pure_to_pure(PLUS_VEC, np.array([1, 0], dtype=complex))
    got = sorted((K.real.round(12).tolist() for K in ch.kraus))
    assert got == sorted([[[1, 0], [0, 0]], [[0, 1], [0, 0]]])
    assert ch.completeness_error() < 1e-12


def test_synthesize_three_level_example():
    psi = np.sqrt([0.5, 0.3, 0.2]).astype(complex)
    phi = np.sqrt([0.6, 0.4, 0.0]).astype(complex)
    ch = synthesize_pure_to_pure(psi, phi)
    np.testing.assert_allclose(apply(ch, density(psi)), density(phi), atol=1e-9)


def test_synthesize_changes_dimension():
    psi = maximally_coherent(4)
    phi = PLUS_VEC
    ch = synthesize_pure_to_pure(psi, phi)
    assert (ch.d_out, ch.d_in) == (2, 4)
    np.testing.assert_allclose(apply(ch, density(psi)), PLUS, atol=1e-12)
    ch = synthesize_pure_to_pure(np.array([1.0 + 0j]), np.array([0, 1, 0], dtype=complex))
    np.testing.assert_allclose(apply(ch, np.ones((1, 1))), np.diag([0, 1.0, 0]), atol=1e-15)


def test_synthesize_rejects_unmajorized():
    with pytest.raises(NotMajorized):
        synthesize_pure_to_pure(np.array([1, 0], dtype=complex), PLUS_VEC)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 7), st.integers(0, 2 ** 32 - 1))
def test_staircase_reaches_target(dim, seed):
    rng = np.random.default_rng(seed)
    x = np.sort(rand_prob(rng, dim))[::-1]
    y = np.sort(concentrate(rng, x))[::-1]
    y = np.pad(y, (0, dim - y.size))
    steps = staircase(x, y)
    assert len(steps) <= max(dim - 1, 0)
    z = x.copy()
    for j, k, delta in steps:
        assert j < k and delta >= 0
        z[j] += delta
        z[k] -= delta
        assert majorizes(z, x) and majorizes(y, z)
    np.testing.assert_allclose(z, y, atol=1e-12)
    D = staircase_matrix(x, y, steps)
    assert D.min() >= 0
    np.testing.assert_allclose(D.sum(axis=0), 1, atol=1e-12)
    np.testing.assert_allclose(D.sum(axis=1), 1, atol=1e-12)
    np.testing.assert_allclose(D @ y, x, atol=1e-12)


def test_birkhoff_reconstructs(rng):
    for _ in range(30):
        n = int(rng.integers(1, 7))
        w = rng.dirichlet(np.ones(4))
        D = sum(wi * permutation_matrix(rng.permutation(n)) for wi in w)
        terms = birkhoff(D)
        R = np.zeros((n, n))
        for t, perm in terms:
            R[np.arange(n), perm] += t
        np.testing.assert_allclose(R, D, atol=1e-12)
        assert len(terms) <= (n - 1) ** 2 + 1


def test_synthesized_channels_are_exact(rng):
    for _ in range(200):
        psi, phi = random_pair(rng, int(rng.integers(1, 7)))
        ch = synthesize_pure_to_pure(psi, phi)
        assert ch.completeness_error() <= 1e-9
        assert all(is_strictly_incoherent(K) for K in ch.kraus)
        for K in ch.kraus:
            assert branch_residual(K, psi, phi) <= 1e-8
        np.testing.assert_allclose(apply(ch, density(psi)), density(phi), atol=1e-9)


def test_apply_preserves_trace_and_incoherence(rng):
    for _ in range(50):
        d = int(rng.integers(2, 6))
        psi, phi = random_pair(rng, d)
        ch = synthesize_pure_to_pure(psi, phi)
        out = apply(ch, rand_density(rng, d))
        assert abs(np.trace(out) - 1) < 1e-10
        diag_out = apply(ch, np.diag(rand_prob(rng, d)))
        assert np.abs(diag_out - np.diag(np.diag(diag_out))).max() < 1e-10


def test_composition_closure(rng):
    for _ in range(30):
        d = int(rng.integers(2, 5))
        psi, mid = random_pair(rng, d)
        ch1 = synthesize_pure_to_pure(psi, mid)
        ch2 = synthesize_pure_to_pure(mid, pure_with_dephased(rng, concentrate(rng, np.abs(mid) ** 2)))
        both = compose(ch2, ch1)
        assert all(is_strictly_incoherent(K) for K in both.kraus)
        assert both.completeness_error() < 1e-8
    with pytest.raises(DimensionMismatch):
        compose(identity_channel(2), identity_channel(3))


def test_assemble_examples(rng):
    psi = rand_pure(rng, 3)
    ch = assemble_distillation_channel(density(psi), psi)
    assert len(ch.kraus) == 1
    np.testing.assert_allclose(apply(ch, density(psi)), density(psi), atol=1e-12)

    rho = block_state([density(np.sqrt([0.8, 0.2])), density(np.sqrt([0.7, 0.3]))], [0.5, 0.5])
    phi = np.sqrt([0.85, 0.15]).astype(complex)
    ch = assemble_distillation_channel(rho, phi)
    ch.check()
    np.testing.assert_allclose(apply(ch, rho), density(phi), atol=1e-9)

    rho = tensor(PLUS, PLUS)
    ch = assemble_distillation_channel(rho, PLUS_VEC)
    ch.check()
    np.testing.assert_allclose(apply(ch, rho), PLUS, atol=1e-9)

    with pytest.raises(NotTransformable):
        assemble_distillation_channel(np.eye(2) / 2, PLUS_VEC)


def test_assemble_covers_null_space_and_incoherent_targets():
    rho = block_state([PLUS, np.zeros((2, 2)), np.ones((1, 1))], [0.5, 0.0, 0.5])
    ch = assemble_distillation_channel(rho, np.array([0, 1], dtype=complex))
    ch.check()
    np.testing.assert_allclose(apply(ch, rho), np.diag([0, 1.0]), atol=1e-12)
