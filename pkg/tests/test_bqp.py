import math

import numpy as np
import pytest

from symplectiq import bqp
from symplectiq import compiler as C
from symplectiq import gbir, sim
from symplectiq.errors import ParseError


def complex_sim(circuit, n):
    """Direct complex state-vector simulation; qubit k is index bit k - 1."""
    psi = np.zeros(2**n, dtype=complex)
    psi[0] = 1
    idx = np.arange(2**n)
    for g in circuit:
        name, tau = g[0], g[-1]
        t = g[-2]
        bit = (idx >> (t - 1)) & 1
        if name == "rz":
            psi = psi * np.where(bit, np.exp(0.5j * tau), np.exp(-0.5j * tau))
            continue
        active = np.ones(2**n, bool) if name == "ry" else ((idx >> (g[1] - 1)) & 1).astype(bool)
        c, s = math.cos(tau / 2), math.sin(tau / 2)
        partner = psi[idx ^ (1 << (t - 1))]
        new = np.where(bit, s * partner + c * psi, c * psi - s * partner)
        psi = np.where(active, new, psi)
    return psi


def random_qubit_circuit(rng, n, depth):
    out = []
    for _ in range(depth):
        kind = ("rz", "ry", "cry")[int(rng.integers(3))]
        tau = float(rng.uniform(-2 * math.pi, 2 * math.pi))
        if kind == "cry":
            c, t = (int(v) + 1 for v in rng.choice(n, size=2, replace=False))
            out.append((kind, c, t, tau))
        else:
            out.append((kind, int(rng.integers(1, n + 1)), tau))
    return out


def pipeline_overlap(circuit, n, x=1.0):
    z = bqp.real_double(np.eye(2**n)[0], x)
    qc = C.compile(bqp.reverse_compile(circuit, n))
    s, _ = sim.run(qc, sim.encode_mean(z))
    out = sim.decode_mean(s)
    M = 2**n
    return (out[0] ** 2 + out[M] ** 2) / x**2


def test_complex_oracle_sanity():
    psi = complex_sim([("ry", 1, math.pi)], 2)
    assert np.allclose(psi, [0, 1, 0, 0], atol=1e-15)
    psi = complex_sim([("ry", 1, math.pi), ("cry", 1, 2, math.pi)], 2)
    assert np.allclose(psi, [0, 0, 0, 1], atol=1e-15)


def test_layer_to_gb_example():
    g = bqp.layer_to_gb(bqp.BitStructuredLayer(3, 1, 0.8))
    assert g == gbir.GlobalBeamsplitter(gbir.BitCondition(((3, 0),)), 1, 0.2)
    (q,) = C.compile_gate(g, 3)
    assert isinstance(q, C.MultiControlledRy)
    assert (q.controls, q.target, q.theta) == (((3, 0),), 1, pytest.approx(0.8))


def test_zero_angle_layer_is_identity():
    inst = bqp.Bqp1Instance(3, (bqp.BitStructuredLayer(2, 3, 0.0),))
    qc = C.compile(bqp.instance_circuit(inst))
    assert np.allclose(C.circuit_operator(qc), np.eye(16), atol=0)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_each_layer_is_one_two_qubit_gate(n, rng):
    layers = bqp.random_layers(n, 6, rng)
    qc = C.compile(bqp.instance_circuit(bqp.Bqp1Instance(n, layers)))
    assert len(qc.gates) == len(layers)
    for g, layer in zip(qc.gates, layers):
        assert C.gate_qubits(g) == {layer.k, layer.l}
        want = C.controlled_matrix(C.single_qubit_matrix("ry", layer.theta), layer.l, ((layer.k, 0),), n + 1, n)
        assert np.allclose(C.gate_matrix(g, n + 1, n), want, atol=1e-15)


def test_layer_validation():
    with pytest.raises(ValueError):
        bqp.BitStructuredLayer(2, 2, 0.1)
    with pytest.raises(ValueError):
        bqp.Bqp1Instance(2, (bqp.BitStructuredLayer(1, 3, 0.1),))
    with pytest.raises(ValueError):
        bqp.Bqp1Instance(2, (), x=0.0)


def test_empty_instance_is_yes():
    res = bqp.run_instance(bqp.Bqp1Instance(3))
    assert res.q1_over_x == 1.0 and res.decision is bqp.Decision.YES
    assert res.trajectory.overlaps == [1.0]


def test_single_pi_layer_is_no():
    res = bqp.run_instance(bqp.Bqp1Instance(3, (bqp.BitStructuredLayer(2, 1, math.pi),)))
    assert abs(res.q1_over_x) < 1e-15
    assert res.decision is bqp.Decision.NO


def test_thresholds():
    assert bqp.YES_THRESHOLD == 2 / 3 and bqp.NO_THRESHOLD == 1 / 3
    assert bqp.decide(2 / 3) is bqp.Decision.INDETERMINATE
    assert bqp.decide(math.nextafter(2 / 3, 1)) is bqp.Decision.YES
    assert bqp.decide(1 / 3) is bqp.Decision.INDETERMINATE
    assert bqp.decide(math.nextafter(1 / 3, 0)) is bqp.Decision.NO
    assert bqp.decide(-1.0) is bqp.Decision.NO


def test_decision_ignores_x():
    base = bqp.random_instance(4, 12, seed=5)
    results = [bqp.run_instance(bqp.Bqp1Instance(4, base.layers, x)) for x in (1.0, 10.0, 1e3)]
    assert len({r.decision for r in results}) == 1
    for r in results[1:]:
        assert r.q1_over_x == pytest.approx(results[0].q1_over_x, abs=1e-14)


@pytest.mark.parametrize("yes", [True, False])
def test_planted_instances(yes):
    inst = bqp.planted_instance(6, 21, yes, seed=3)
    assert inst.depth == 21
    res = bqp.run_instance(inst)
    assert res.decision is (bqp.Decision.YES if yes else bqp.Decision.NO)
    assert len(res.trajectory.rows) == 22


def test_reverse_compile_table_rows():
    (g,) = bqp.reverse_compile([("rz", 2, 0.8)], 3).gates
    assert g == gbir.GlobalPhase(gbir.BitCondition(((2, 1),)), -0.4)
    (g,) = bqp.reverse_compile([("ry", 3, 0.8)], 3).gates
    assert g == gbir.GlobalBeamsplitter(gbir.BitCondition(()), 3, 0.2)
    (g,) = bqp.reverse_compile([("cry", 1, 3, 0.8)], 3).gates
    assert g == gbir.GlobalBeamsplitter(gbir.BitCondition(((1, 1),)), 3, 0.2)


def test_reverse_compile_empty_and_unknown():
    c = bqp.reverse_compile([], 2)
    assert c.gates == () and c.modes == 4
    with pytest.raises(ValueError):
        bqp.reverse_compile([("h", 1)], 2)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_reverse_compiled_state_matches_complex_simulation(n, rng):
    for _ in range(10):
        circ = random_qubit_circuit(rng, n, int(rng.integers(0, 21))) if n > 1 else [
            g for g in random_qubit_circuit(rng, 2, 10) if g[0] != "cry" and g[1] == 1
        ]
        want = complex_sim(circ, n)
        z = bqp.real_double(np.eye(2**n)[0])
        s, _ = sim.run(C.compile(bqp.reverse_compile(circ, n)), sim.encode_mean(z))
        out = sim.decode_mean(s)
        M = 2**n
        got = out[:M] + 1j * out[M:]
        # equal up to one global phase
        k = int(np.argmax(np.abs(want)))
        phase = got[k] / want[k]
        assert abs(abs(phase) - 1) < 1e-10
        assert np.max(np.abs(got - phase * want)) < 1e-10
        assert pipeline_overlap(circ, n, 3.0) == pytest.approx(abs(want[0]) ** 2, abs=1e-10)


def test_real_double_examples():
    assert np.array_equal(bqp.real_double([1, 0, 0, 0]), np.eye(8)[0])
    x = 2.0
    z = bqp.real_double([(1 + 1j) / 2, -math.sqrt(2) / 2], x)
    assert np.allclose(z, [x / 2, -x * math.sqrt(2) / 2, x / 2, 0.0], atol=1e-15)
    psi = np.array([0.5, 0.5j, -0.5, 0.5 - 0j])
    assert np.linalg.norm(bqp.real_double(psi, 7.0)) == pytest.approx(7.0)


def apply_layers(layers, z):
    n = (z.size // 2 - 1).bit_length()
    c = bqp.instance_circuit(bqp.Bqp1Instance(max(n, 2), layers))
    s, _ = sim.run(C.compile(c), sim.encode_mean(z))
    return sim.decode_mean(s)


def test_f_gate_action():
    psi = np.array([0.3 + 0.2j, -0.1 + 0.5j, 0.4 - 0.3j, 0.2 + 0.56j])
    z = bqp.real_double(psi)
    out = apply_layers(bqp.f_gate_layers(), z)
    got = out[:4] + 1j * out[4:]
    # the matrix [[0, -1], [1, 0]] on the block where the leading bit is 0
    want = np.array([-psi[1], psi[0], psi[2], psi[3]])
    assert np.allclose(got, want, atol=1e-15)


def test_f_gate_twice_negates_block():
    psi = np.array([0.1, 0.7j, -0.2, 0.3 + 0.1j])
    z = bqp.real_double(psi)
    out = apply_layers(bqp.f_gate_layers() * 2, z)
    got = out[:4] + 1j * out[4:]
    assert np.allclose(got, [-psi[0], -psi[1], psi[2], psi[3]], atol=1e-15)


def test_instance_file_round_trip():
    inst = bqp.random_instance(5, 7, seed=11, x=2.5)
    back = bqp.parse_instance(bqp.serialize_instance(inst))
    assert back == inst


def test_instance_file_errors():
    with pytest.raises(ParseError):
        bqp.parse_instance("x 1.0\n")
    with pytest.raises(ParseError):
        bqp.parse_instance("n 3\nlayer k=1 theta=0.2\n")
    with pytest.raises(ParseError):
        bqp.parse_instance("n 3\nwarp 9\n")
