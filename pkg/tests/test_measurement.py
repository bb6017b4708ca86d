import math

import numpy as np
import pytest
from scipy import stats

from conftest import random_pp_gate
from symplectiq import compiler as C
from symplectiq import gbir, sim
from symplectiq import measurement as ms


def test_energy_examples():
    assert np.array_equal(ms.mode_energies([3.0, 0, 0, 0]), [4.5, 0.0])
    assert ms.mode_energies([1.0, 1.0])[0] == 1.0
    assert ms.total_energy([1.0, 2.0, 3.0, 4.0]) == pytest.approx(15.0)


def test_energy_with_covariance():
    # vacuum fluctuations cancel the -1/2 offset
    assert ms.mode_energies([0, 0], np.eye(2) / 2)[0] == 0.0
    t = 0.2
    sig = np.diag([math.exp(4 * t), math.exp(-4 * t)]) / 2
    assert ms.mode_energies([0, 0], sig)[0] == pytest.approx(math.sinh(2 * t) ** 2)


def test_energy_conserved_by_interferometers(rng):
    M = 8
    z = rng.normal(size=2 * M)
    gates = tuple(random_pp_gate(rng, M) for _ in range(15))
    s, _ = sim.run(C.compile(gbir.GbCircuit(M, gates)), sim.encode_mean(z))
    assert ms.total_energy(sim.decode_mean(s)) == pytest.approx(ms.total_energy(z), rel=1e-12)


def test_zero_vector_gives_no_photons():
    assert not ms.sample_photon_counts(np.zeros(8), seed=1, shots=50).any()
    assert ms.photon_count_sample(np.zeros(4), seed=3).counts == {}


def test_photon_sample_keys_are_modes():
    sample = ms.photon_count_sample([3.0, 0.0, 2.0, 0.0, 0.0, 1.0], seed=9)
    assert set(sample.counts) <= {1, 2, 3}
    assert sample.as_array(3)[1] == 0


def test_poisson_mean():
    z = [2 * math.sqrt(2), 0.0]  # e_1 = 4
    counts = ms.sample_photon_counts(z, seed=42, shots=10**5)
    assert counts.mean() == pytest.approx(4.0, abs=0.05)


def test_mode_frequencies_follow_energies():
    z = np.array([1.0, 2.0, 0.5, 1.5, 0.0, 1.0, 1.0, 0.5])
    e = ms.mode_energies(z)
    totals = ms.sample_photon_counts(z, seed=7, shots=10**5).sum(axis=0)
    expected = totals.sum() * e / e.sum()
    assert stats.chisquare(totals, expected).pvalue > 0.01


def test_sampling_is_seeded():
    z = np.array([1.0, 2.0, 0.5, 1.5])
    a = ms.sample_photon_counts(z, seed=5, shots=100)
    assert np.array_equal(a, ms.sample_photon_counts(z, seed=5, shots=100))
    assert not np.array_equal(a, ms.sample_photon_counts(z, seed=6, shots=100))


def test_homodyne_coherent_moments():
    z = [3.0, 0.0, 0.0, 0.0]
    x = ms.sample_homodyne(z, None, 1, 0.0, seed=2, shots=10**5)
    assert x.mean() == pytest.approx(3.0, abs=0.01)
    assert x.var() == pytest.approx(0.5, abs=0.02)


def test_homodyne_quarter_turn_reads_momentum():
    assert ms.homodyne_moments([1.0, -2.0], np.eye(2) / 2, 1, math.pi / 2) == pytest.approx((-2.0, 0.5))


def test_homodyne_general_covariance(rng):
    A = rng.normal(size=(4, 4))
    sig = A @ A.T
    theta = 0.7
    mean, var = ms.homodyne_moments([0.1, 0.2, 0.3, 0.4], sig, 2, theta)
    v = np.array([math.cos(theta), math.sin(theta)])
    block = sig[np.ix_([1, 3], [1, 3])]
    assert var == pytest.approx(v @ block @ v, rel=1e-14)
    assert mean == pytest.approx(math.cos(theta) * 0.2 + math.sin(theta) * 0.4)


def test_homodyne_mode_range():
    with pytest.raises(ValueError):
        ms.homodyne_moments([1.0, 0.0], None, 2, 0.0)


def test_symplectic_fraction_examples():
    assert ms.symplectic_fraction(sim.encode_mean([2.0, 0.0])) == 1.0
    assert ms.symplectic_fraction(sim.encode_mean([1.0, 0.0, 0.0, 1.0])) == pytest.approx(0.5)


def test_symplectic_fraction_kept_by_beamsplitters(rng):
    M = 8
    z = rng.normal(size=2 * M)
    before = ms.symplectic_fraction(sim.encode_mean(z))
    gates = (gbir.Beamsplitter(1, 6, 0.4), gbir.GlobalBeamsplitter(gbir.BitCondition(((1, 0),)), 3, -0.9))
    s, _ = sim.run(C.compile(gbir.GbCircuit(M, gates)), sim.encode_mean(z))
    assert ms.symplectic_fraction(s) == pytest.approx(before, abs=1e-12)


def test_register_halves_fraction(rng):
    assert ms.register_halves_fraction(sim.encode_mean([1.0, 0, 0, 0, 0, 0, 0, 0])) == 1.0
    assert ms.register_halves_fraction(sim.encode_mean(np.ones(8))) == pytest.approx(0.5)
    z = rng.normal(size=16)
    e = ms.mode_energies(z)
    assert ms.register_halves_fraction(sim.encode_mean(z)) == pytest.approx(e[:4].sum() / e.sum(), abs=1e-12)


def test_jsonl_records():
    (line,) = ms.jsonl_records("photon", 3, [(2, 5)])
    assert line == '{"kind": "photon", "seed": 3, "mode": 2, "value": 5}'
