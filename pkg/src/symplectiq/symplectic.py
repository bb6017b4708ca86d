"""Dense phase-space reference for quadratic bosonic dynamics.

Quadratures are ordered ``z = (q_1, ..., q_M, p_1, ..., p_M)``. A quadratic
Hamiltonian ``H = z^T K z / 2`` moves the first moments by the real matrix
``exp(t * Omega @ K)`` and the covariance matrix by congruence with it.

Everything here is deliberately brute force (dense ``2M x 2M`` algebra and a
general-purpose matrix exponential) so that it can serve as ground truth for
the compiled qubit circuits.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .errors import MixedGeneratorUnsupported, NonHermitianInput, NonSymmetricInput

MAX_ORACLE_MODES = 64

STRUCT_TOL = 1e-12


class GeneratorKind(enum.Enum):
    PARTICLE_PRESERVING = "ParticlePreserving"
    NON_PARTICLE_PRESERVING = "NonParticlePreserving"
    MIXED = "Mixed"


@dataclass(frozen=True, eq=False)
class GeneratorMatrix:
    """Symmetric ``2M x 2M`` matrix ``K`` together with its generator class."""

    K: np.ndarray
    kind: GeneratorKind

    def __post_init__(self):
        K = np.array(self.K, dtype=float)
        if K.ndim != 2 or K.shape[0] != K.shape[1] or K.shape[0] % 2:
            raise ValueError(f"K must be 2M x 2M, got shape {K.shape}")
        if not np.allclose(K, K.T, atol=STRUCT_TOL, rtol=0):
            raise NonSymmetricInput("K must be symmetric")
        K.setflags(write=False)
        object.__setattr__(self, "K", K)

    @property
    def modes(self) -> int:
        return self.K.shape[0] // 2

    @classmethod
    def from_matrix(cls, K) -> "GeneratorMatrix":
        K = np.asarray(K, dtype=float)
        return cls(K, classify_generator(K))

    def __add__(self, other: "GeneratorMatrix") -> "GeneratorMatrix":
        return GeneratorMatrix.from_matrix(self.K + other.K)

    def __mul__(self, c: float) -> "GeneratorMatrix":
        return GeneratorMatrix(c * self.K, self.kind)

    __rmul__ = __mul__


def build_omega(M: int) -> np.ndarray:
    """Symplectic form ``[[0, I], [-I, 0]]`` on ``M`` modes."""
    if M < 1:
        raise ValueError("need at least one mode")
    eye = np.eye(M)
    zero = np.zeros((M, M))
    return np.block([[zero, eye], [-eye, zero]])


def _max_abs(a) -> float:
    return float(np.max(np.abs(a))) if np.size(a) else 0.0


def classify_generator(K) -> GeneratorKind:
    """Classify ``K`` by which bracket with ``Omega`` vanishes."""
    if isinstance(K, GeneratorMatrix):
        K = K.K
    K = np.asarray(K, dtype=float)
    omega = build_omega(K.shape[0] // 2)
    tol = 1e-10 * _max_abs(K)
    OK, KO = omega @ K, K @ omega
    if _max_abs(OK - KO) <= tol:
        return GeneratorKind.PARTICLE_PRESERVING
    if _max_abs(OK + KO) <= tol:
        return GeneratorKind.NON_PARTICLE_PRESERVING
    return GeneratorKind.MIXED


def k_from_particle_preserving(h) -> GeneratorMatrix:
    """Generator of ``sum_{mm'} h_{mm'} a_m^dag a_m'`` for Hermitian ``h``.

    Expanding in quadratures gives ``K = [[Re h, Im h], [-Im h, Re h]]``.
    """
    h = np.atleast_2d(np.asarray(h, dtype=complex))
    if h.shape[0] != h.shape[1]:
        raise NonHermitianInput(f"h must be square, got {h.shape}")
    if not np.allclose(h, h.conj().T, atol=STRUCT_TOL, rtol=0):
        raise NonHermitianInput("h is not Hermitian")
    A, B = h.real, h.imag
    K = np.block([[A, B], [-B, A]])
    return GeneratorMatrix(0.5 * (K + K.T), GeneratorKind.PARTICLE_PRESERVING)


def k_from_non_particle_preserving(delta) -> GeneratorMatrix:
    """Generator of ``sum_{mm'} conj(D_{mm'}) a_m a_m' + h.c.`` for symmetric ``D``.

    In quadratures: ``K = 2 [[Re D, Im D], [Im D, -Re D]]``.
    """
    d = np.atleast_2d(np.asarray(delta, dtype=complex))
    if d.shape[0] != d.shape[1]:
        raise NonSymmetricInput(f"Delta must be square, got {d.shape}")
    if not np.allclose(d, d.T, atol=STRUCT_TOL, rtol=0):
        raise NonSymmetricInput("Delta is not symmetric")
    A, B = d.real, d.imag
    K = 2.0 * np.block([[A, B], [B, -A]])
    return GeneratorMatrix(0.5 * (K + K.T), GeneratorKind.NON_PARTICLE_PRESERVING)


def _k_array(K) -> np.ndarray:
    return K.K if isinstance(K, GeneratorMatrix) else np.asarray(K, dtype=float)


def propagator(K, t: float) -> np.ndarray:
    """Symplectic propagator ``exp(t * Omega K)``."""
    K = _k_array(K)
    M = K.shape[0] // 2
    if M > MAX_ORACLE_MODES:
        raise ValueError(f"dense oracle limited to M <= {MAX_ORACLE_MODES}, got {M}")
    return expm(t * (build_omega(M) @ K))


def as_moment_vector(z, M: int | None = None) -> np.ndarray:
    z = np.asarray(z, dtype=float).reshape(-1)
    if z.size % 2:
        raise ValueError(f"moment vector must have even length, got {z.size}")
    if M is not None and z.size != 2 * M:
        raise ValueError(f"moment vector has {z.size // 2} modes, expected {M}")
    if not np.all(np.isfinite(z)):
        raise ValueError("moment vector has non-finite entries")
    return z


def evolve_mean(z, K, t: float) -> np.ndarray:
    K = _k_array(K)
    z = as_moment_vector(z, K.shape[0] // 2)
    return propagator(K, t) @ z


def evolve_cov(sigma, K, t: float) -> np.ndarray:
    """Evolve the covariance matrix; refuses mixed generators.

    Both admissible classes reduce to ``Q sigma Q^T``: ``Q`` is orthogonal
    for particle-preserving ``K`` and symmetric otherwise.
    """
    gen = K if isinstance(K, GeneratorMatrix) else GeneratorMatrix.from_matrix(K)
    kind = classify_generator(gen.K)
    if kind is GeneratorKind.MIXED:
        raise MixedGeneratorUnsupported("covariance evolution needs a pure generator class")
    sigma = np.asarray(sigma, dtype=float)
    if sigma.shape != gen.K.shape:
        raise ValueError(f"sigma shape {sigma.shape} does not match K {gen.K.shape}")
    Q = propagator(gen.K, t)
    if kind is GeneratorKind.PARTICLE_PRESERVING:
        out = Q @ sigma @ Q.T
    else:
        out = Q @ sigma @ Q
    return 0.5 * (out + out.T)


def is_symplectic(Q, tol: float = 1e-10) -> bool:
    Q = np.asarray(Q, dtype=float)
    omega = build_omega(Q.shape[0] // 2)
    return _max_abs(Q @ omega @ Q.T - omega) <= tol


def phase_generator(m: int, M: int) -> GeneratorMatrix:
    """``K = 2 * I (x) |m><m|`` (``m`` is 1-based)."""
    K = np.zeros((2 * M, 2 * M))
    K[m - 1, m - 1] = K[M + m - 1, M + m - 1] = 2.0
    return GeneratorMatrix(K, GeneratorKind.PARTICLE_PRESERVING)


def beamsplitter_generator(m: int, mp: int, M: int) -> GeneratorMatrix:
    """``K = 2iY (x) (|m><m'| - |m'><m|)`` (1-based modes)."""
    if m == mp:
        raise ValueError("beamsplitter modes must differ")
    a, b = m - 1, mp - 1
    K = np.zeros((2 * M, 2 * M))
    K[a, M + b] = K[M + b, a] = 2.0
    K[b, M + a] = K[M + a, b] = -2.0
    return GeneratorMatrix(K, GeneratorKind.PARTICLE_PRESERVING)


def squeeze_generator(m: int, M: int, sign: int = +1) -> GeneratorMatrix:
    """``K = +-2 X (x) |m><m|``; ``Omega K = +-2 Z (x) |m><m|``."""
    K = np.zeros((2 * M, 2 * M))
    K[m - 1, M + m - 1] = K[M + m - 1, m - 1] = 2.0 * sign
    return GeneratorMatrix(K, GeneratorKind.NON_PARTICLE_PRESERVING)
