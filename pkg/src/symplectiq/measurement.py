"""Energies, photon-count and homodyne sampling, and qubit-side estimators.

Units have hbar = 1, so vacuum and coherent states have quadrature
variance 1/2. Random draws come from numpy's Philox generator keyed by the
caller's 64-bit seed, which is counter based and gives identical streams on
every platform.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .sim import ScaledState

SEED_MASK = (1 << 64) - 1


def rng_for(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(int(seed) & SEED_MASK))


def _split(z):
    z = np.asarray(z, dtype=float).reshape(-1)
    if z.size % 2:
        raise ValueError("moment vector must have even length")
    M = z.size // 2
    return z[:M], z[M:]


def mode_energies(z, sigma=None) -> np.ndarray:
    """Mean photon number per mode.

    Without ``sigma`` the state is taken to be coherent: ``(q^2 + p^2) / 2``.
    With a covariance matrix: ``(s_qq + s_pp + q^2 + p^2) / 2 - 1/2``.
    """
    q, p = _split(z)
    e = 0.5 * (q * q + p * p)
    if sigma is not None:
        sigma = np.asarray(sigma, dtype=float)
        M = q.size
        if sigma.shape != (2 * M, 2 * M):
            raise ValueError("sigma does not match z")
        d = np.diag(sigma)
        e = e + 0.5 * (d[:M] + d[M:]) - 0.5
    return e


def total_energy(z, sigma=None) -> float:
    return float(np.sum(mode_energies(z, sigma)))


@dataclass(frozen=True)
class PhotonCountSample:
    counts: dict
    seed: int

    def as_array(self, M: int) -> np.ndarray:
        out = np.zeros(M, dtype=np.int64)
        for m, c in self.counts.items():
            out[m - 1] = c
        return out


def sample_photon_counts(z, seed: int, shots: int = 1, sigma=None) -> np.ndarray:
    """Independent Poisson draws with rate ``e_m``; shape ``(shots, M)``."""
    rates = np.clip(mode_energies(z, sigma), 0.0, None)
    return rng_for(seed).poisson(rates, size=(int(shots), rates.size))


def photon_count_sample(z, seed: int, sigma=None) -> PhotonCountSample:
    row = sample_photon_counts(z, seed, 1, sigma)[0]
    counts = {m + 1: int(c) for m, c in enumerate(row) if c}
    return PhotonCountSample(counts, int(seed))


def homodyne_moments(z, sigma, mode: int, theta: float) -> tuple[float, float]:
    """Mean and variance of ``cos(theta) q_m + sin(theta) p_m``."""
    q, p = _split(z)
    M = q.size
    if not 1 <= mode <= M:
        raise ValueError(f"mode {mode} outside 1..{M}")
    c, s = math.cos(theta), math.sin(theta)
    mean = c * q[mode - 1] + s * p[mode - 1]
    if sigma is None:
        return mean, 0.5
    sigma = np.asarray(sigma, dtype=float)
    i, j = mode - 1, M + mode - 1
    block = sigma[np.ix_([i, j], [i, j])]
    v = np.array([c, s])
    return mean, float(v @ block @ v)


def sample_homodyne(z, sigma, mode: int, theta: float, seed: int, shots: int = 1) -> np.ndarray:
    mean, var = homodyne_moments(z, sigma, mode, theta)
    if var < 0:
        raise ValueError("covariance gives a negative quadrature variance")
    return rng_for(seed).normal(mean, math.sqrt(var), size=int(shots))


def symplectic_fraction(s: ScaledState) -> float:
    """Probability of reading the symplectic qubit as 0: the position share."""
    M = s.modes
    a = s.amplitudes[:M]
    total = float(np.dot(s.amplitudes, s.amplitudes))
    return float(np.dot(a, a)) / total


def register_halves_fraction(s: ScaledState) -> float:
    """Probability that the most significant register qubit reads 0,
    i.e. the energy share of modes ``1..M/2``."""
    if s.n < 1:
        return 1.0
    M = s.modes
    amps = s.amplitudes.reshape(2, 2, M // 2)
    total = float(np.dot(s.amplitudes, s.amplitudes))
    return float(np.sum(amps[:, 0, :] ** 2)) / total


def jsonl_records(kind: str, seed: int, rows) -> list[str]:
    """One JSON object per ``(mode, value)`` row."""
    return [json.dumps({"kind": kind, "seed": int(seed), "mode": int(m), "value": v}) for m, v in rows]
