import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from symplectiq import gbir, symplectic

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def random_condition(rng, n, exclude=()):
    bits = [k for k in range(1, n + 1) if k not in exclude]
    size = int(rng.integers(0, len(bits) + 1))
    chosen = rng.choice(bits, size=size, replace=False) if size else []
    return gbir.BitCondition(tuple((int(k), int(rng.integers(0, 2))) for k in chosen))


def random_pp_gate(rng, M):
    """A random particle-preserving gate (local or global) on M modes."""
    n = (M - 1).bit_length()
    t = float(rng.uniform(-1, 1))
    kinds = ["phase", "gphase"] + (["bs", "gbs"] if M > 1 else [])
    kind = kinds[int(rng.integers(len(kinds)))]
    if kind == "phase":
        return gbir.Phase(int(rng.integers(1, M + 1)), t)
    if kind == "gphase":
        return gbir.GlobalPhase(random_condition(rng, n), t)
    if kind == "bs":
        m, mp = rng.choice(M, size=2, replace=False) + 1
        return gbir.Beamsplitter(int(m), int(mp), t)
    l = int(rng.integers(1, n + 1))
    return gbir.GlobalBeamsplitter(random_condition(rng, n, exclude=(l,)), l, t)


def random_squeeze_gate(rng, M):
    n = (M - 1).bit_length()
    t = float(rng.uniform(-0.3, 0.3))
    sign = int(rng.choice([1, -1]))
    if rng.random() < 0.5:
        return gbir.Squeeze(int(rng.integers(1, M + 1)), t, sign)
    return gbir.GlobalSqueeze(random_condition(rng, n), t, sign)


def oracle_chain(gates, M, z):
    out = np.asarray(z, dtype=float)
    for g in gates:
        out = symplectic.propagator(gbir.generator_of(g, M), gbir.gate_time(g)) @ out
    return out


def oracle_matrix(gates, M):
    Q = np.eye(2 * M)
    for g in gates:
        Q = symplectic.propagator(gbir.generator_of(g, M), gbir.gate_time(g)) @ Q
    return Q


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
