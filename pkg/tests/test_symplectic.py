import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from symplectic_helpers import random_hermitian, random_symmetric
from symplectiq import symplectic as S
from symplectiq.errors import MixedGeneratorUnsupported, NonHermitianInput, NonSymmetricInput


def test_omega_small_sizes():
    assert np.array_equal(S.build_omega(1), [[0, 1], [-1, 0]])
    om = S.build_omega(2)
    expected = np.zeros((4, 4))
    expected[0, 2] = expected[1, 3] = 1
    expected[2, 0] = expected[3, 1] = -1
    assert np.array_equal(om, expected)


@pytest.mark.parametrize("M", [1, 2, 3, 8])
def test_omega_squares_to_minus_identity(M):
    om = S.build_omega(M)
    assert np.array_equal(om @ om, -np.eye(2 * M))
    assert np.array_equal(om.T, -om)


def test_build_omega_rejects_zero_modes():
    with pytest.raises(ValueError):
        S.build_omega(0)


def test_particle_preserving_identity_h():
    gen = S.k_from_particle_preserving(np.eye(1))
    assert np.array_equal(gen.K, np.eye(2))
    assert gen.kind is S.GeneratorKind.PARTICLE_PRESERVING


def test_imaginary_offdiagonal_h_gives_beamsplitter_coupling():
    h = np.zeros((2, 2), dtype=complex)
    h[0, 1], h[1, 0] = 1j, -1j
    K = S.k_from_particle_preserving(h).K
    # only q1 p2 and p1 q2 couplings, with opposite signs
    expected = np.zeros((4, 4))
    expected[0, 3] = expected[3, 0] = 1
    expected[1, 2] = expected[2, 1] = -1
    assert np.array_equal(K, expected)
    assert np.array_equal(S.beamsplitter_generator(1, 2, 2).K, 2 * expected)


def test_zero_inputs_give_zero_generators():
    assert not S.k_from_particle_preserving(np.zeros((3, 3))).K.any()
    assert not S.k_from_non_particle_preserving(np.zeros((3, 3))).K.any()


def test_non_hermitian_rejected():
    with pytest.raises(NonHermitianInput):
        S.k_from_particle_preserving([[0, 1], [2, 0]])


def test_non_symmetric_delta_rejected():
    with pytest.raises(NonSymmetricInput):
        S.k_from_non_particle_preserving([[0, 1], [2, 0]])


def test_real_delta_gives_z_shaped_k():
    K = S.k_from_non_particle_preserving(np.eye(1)).K
    assert np.array_equal(K, 2 * np.diag([1.0, -1.0]))


def test_imaginary_delta_gives_squeeze_k():
    K = S.k_from_non_particle_preserving(1j * np.eye(1)).K
    assert np.array_equal(K, 2 * np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert np.array_equal(K, S.squeeze_generator(1, 1).K)


def test_classification_examples():
    assert S.classify_generator(S.phase_generator(1, 2)) is S.GeneratorKind.PARTICLE_PRESERVING
    assert S.classify_generator(S.squeeze_generator(1, 2)) is S.GeneratorKind.NON_PARTICLE_PRESERVING
    mixed = S.phase_generator(1, 2) + S.squeeze_generator(1, 2)
    assert mixed.kind is S.GeneratorKind.MIXED


def test_propagator_at_zero_is_identity():
    assert np.allclose(S.propagator(S.phase_generator(2, 4), 0.0), np.eye(8), atol=0)


def test_phase_propagator_quarter_turn():
    Q = S.propagator(S.phase_generator(1, 1), math.pi / 4)
    assert np.allclose(Q, [[0, 1], [-1, 0]], atol=1e-15)
    assert np.allclose(S.evolve_mean([1, 0], S.phase_generator(1, 1), math.pi / 4), [0, -1], atol=1e-15)


@pytest.mark.parametrize("t", [-0.4, 0.1, 0.7])
def test_squeeze_propagator_is_diagonal(t):
    Q = S.propagator(S.squeeze_generator(1, 1, +1), t)
    assert np.allclose(Q, np.diag([math.exp(2 * t), math.exp(-2 * t)]), rtol=1e-13, atol=0)


def test_beamsplitter_transfers_position():
    # rotation angle 2t = pi/2 moves q1 entirely into mode 2
    out = S.evolve_mean([1, 0, 0, 0], S.beamsplitter_generator(1, 2, 2), math.pi / 4)
    assert np.allclose(out, [0, 1, 0, 0], atol=1e-15)


def test_evolve_mean_identity_at_zero(rng):
    z = rng.normal(size=8)
    assert np.allclose(S.evolve_mean(z, S.beamsplitter_generator(1, 3, 4), 0.0), z, atol=0)


def test_evolve_mean_dimension_mismatch():
    with pytest.raises(ValueError):
        S.evolve_mean([1, 0, 0], S.phase_generator(1, 1), 0.1)


def test_coherent_covariance_invariant_under_interferometer(rng):
    K = S.k_from_particle_preserving(random_hermitian(rng, 4))
    out = S.evolve_cov(np.eye(8) / 2, K, 0.83)
    assert np.allclose(out, np.eye(8) / 2, atol=1e-12)


def test_squeezed_covariance():
    t = 0.3
    out = S.evolve_cov(np.eye(2) / 2, S.squeeze_generator(1, 1), t)
    assert np.allclose(out, np.diag([math.exp(4 * t), math.exp(-4 * t)]) / 2, rtol=1e-13)


def test_covariance_identity_at_zero(rng):
    A = rng.normal(size=(4, 4))
    sigma = A @ A.T + np.eye(4)
    assert np.allclose(S.evolve_cov(sigma, S.squeeze_generator(2, 2), 0.0), sigma, atol=1e-14)


def test_mixed_covariance_refused():
    K = S.phase_generator(1, 1) + S.squeeze_generator(1, 1)
    with pytest.raises(MixedGeneratorUnsupported):
        S.evolve_cov(np.eye(2) / 2, K, 0.1)
    # mean evolution still works for mixed generators
    assert np.all(np.isfinite(S.evolve_mean([1, 0], K, 0.1)))


def test_nonsymmetric_k_rejected():
    with pytest.raises(NonSymmetricInput):
        S.GeneratorMatrix.from_matrix([[0, 1], [0, 0]])


@st.composite
def generators(draw):
    M = draw(st.sampled_from([1, 2, 3, 4]))
    seed = draw(st.integers(0, 2**32 - 1))
    which = draw(st.sampled_from(["pp", "npp", "any"]))
    rng = np.random.default_rng(seed)
    if which == "pp":
        return S.k_from_particle_preserving(random_hermitian(rng, M)).K
    if which == "npp":
        return S.k_from_non_particle_preserving(random_symmetric(rng, M)).K
    A = rng.normal(size=(2 * M, 2 * M))
    return A + A.T


times = st.floats(-1.0, 1.0, allow_nan=False)


@given(generators(), times)
def test_propagator_is_symplectic(K, t):
    Q = S.propagator(K, t)
    assert S.is_symplectic(Q, 1e-10 * max(1.0, np.abs(Q).max() ** 2))
    assert abs(np.linalg.det(Q) - 1) < 1e-8 * max(1.0, np.abs(Q).max() ** K.shape[0])


@given(generators(), times, times)
def test_one_parameter_group(K, s, t):
    lhs = S.propagator(K, s + t)
    rhs = S.propagator(K, s) @ S.propagator(K, t)
    assert np.allclose(lhs, rhs, rtol=1e-10, atol=1e-10)


@given(st.integers(0, 2**32 - 1), st.sampled_from([1, 2, 4, 8]), times)
def test_particle_preserving_propagator_is_orthogonal(seed, M, t):
    rng = np.random.default_rng(seed)
    K = S.k_from_particle_preserving(random_hermitian(rng, M))
    Q = S.propagator(K, t)
    assert np.allclose(Q.T @ Q, np.eye(2 * M), atol=1e-10)
    z = rng.normal(size=2 * M)
    assert math.isclose(np.linalg.norm(S.evolve_mean(z, K, t)), np.linalg.norm(z), rel_tol=1e-10)


@given(st.integers(0, 2**32 - 1), st.sampled_from([1, 2, 4]), times, st.booleans())
def test_covariance_stays_symmetric_positive(seed, M, t, pp):
    rng = np.random.default_rng(seed)
    if pp:
        K = S.k_from_particle_preserving(random_hermitian(rng, M))
    else:
        K = S.k_from_non_particle_preserving(random_symmetric(rng, M) * 0.5)
    A = rng.normal(size=(2 * M, 2 * M))
    sigma = A @ A.T + 0.5 * np.eye(2 * M)
    out = S.evolve_cov(sigma, K, t)
    assert np.array_equal(out, out.T)
    ev = np.linalg.eigvalsh(out)
    assert ev.min() > -1e-10 * ev.max()
