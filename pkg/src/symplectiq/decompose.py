"""Rewrite multi-controlled rotations and X gates into one- and two-qubit gates.

A ``k``-controlled rotation becomes two ``(k-1)``-controlled X gates and two
singly controlled half-angle rotations; the ``(k-1)``-controlled X borrows
the remaining control as a dirty ancilla, so the gate count is linear in
``k`` and no clean workspace is needed. Toffolis are expanded into the usual
Clifford+T sequence, so the output uses complex single-qubit gates (``h``,
``t``, ``tdg``) and is meant for dense checking and export, not for the
real-amplitude simulator.
"""
from __future__ import annotations

import math

from . import compiler as C


def cx(c: int, t: int):
    return C.MultiControlledX(((c, 1),), t)


def _rot(axis: str, target: int, theta: float):
    if axis == "y":
        return C.Ry(target, theta)
    return C.SingleQubit("rz", target, theta)


def toffoli(a: int, b: int, t: int) -> list:
    h = lambda q: C.SingleQubit("h", q)  # noqa: E731
    T = lambda q: C.SingleQubit("t", q)  # noqa: E731
    Td = lambda q: C.SingleQubit("tdg", q)  # noqa: E731
    return [
        h(t), cx(b, t), Td(t), cx(a, t), T(t), cx(b, t), Td(t), cx(a, t),
        T(b), T(t), h(t), cx(a, b), T(a), Td(b), cx(a, b),
    ]


def _mcx_dirty(controls: list, target: int, dirty: list) -> list:
    """X on ``target`` under ``len(controls) - 2`` borrowed qubits (V-chain)."""
    m = len(controls)
    if m == 0:
        return [C.X(target)]
    if m == 1:
        return [cx(controls[0], target)]
    if m == 2:
        return toffoli(controls[0], controls[1], target)
    anc = dirty[: m - 2]
    if len(anc) < m - 2:
        raise ValueError("not enough borrowed qubits for the V-chain")
    # toffolis (c_{j+2}, a_j -> a_{j+1}) climbing from a_1 up to the target
    steps = [(controls[j + 2], anc[j], anc[j + 1]) for j in range(m - 3)]
    top = (controls[-1], anc[-1], target)
    down = [s for s in reversed(steps)]
    bottom = (controls[0], controls[1], anc[0])
    seq = [top] + down + [bottom] + steps + [top] + down + [bottom] + steps
    out = []
    for a, b, t in seq:
        out += toffoli(a, b, t)
    return out


def _mcx_one_dirty(controls: list, target: int, anc: int) -> list:
    """X on ``target`` under ``m >= 3`` controls with one borrowed qubit."""
    m = len(controls)
    m1 = (m + 1) // 2
    c1, c2 = controls[:m1], controls[m1:]
    first = _mcx_dirty(c1, anc, c2 + [target])
    second = _mcx_dirty(c2 + [anc], target, c1)
    return first + second + first + second


def _mcx_any(controls: list, target: int, idle: list) -> list:
    if len(controls) <= 2:
        return _mcx_dirty(controls, target, [])
    if idle:
        return _mcx_one_dirty(controls, target, idle[0])
    # no spare qubit: X = H (i Rz(pi)) H, with the phase i pushed onto the controls
    h = C.SingleQubit("h", target)
    return [h] + _mc_rot("z", controls, target, math.pi) + _mc_phase(controls[:-1], controls[-1], math.pi / 2) + [h]


def _mc_rot(axis: str, controls: list, target: int, theta: float) -> list:
    """Rotation about ``axis`` on ``target`` under positive ``controls``."""
    k = len(controls)
    if k == 0:
        return [_rot(axis, target, theta)]
    if k == 1:
        return _c_rot(axis, controls[0], target, theta)
    last, rest = controls[-1], controls[:-1]
    flip = _mcx_any(rest, target, [last])
    # A X B X with A = R(theta/2), B = R(-theta/2); both singly controlled on `last`
    return flip + _c_rot(axis, last, target, -theta / 2) + flip + _c_rot(axis, last, target, theta / 2)


def _c_rot(axis: str, c: int, t: int, theta: float, polarity: int = 1) -> list:
    first = -theta / 2 if polarity else theta / 2
    return [cx(c, t), _rot(axis, t, first), cx(c, t), _rot(axis, t, theta / 2)]


def _mc_phase(controls: list, target: int, phi: float) -> list:
    """``diag(1, e^{i phi})`` on ``target`` under positive ``controls``."""
    if not controls:
        return [C.SingleQubit("phase", target, phi)]
    return _mc_rot("z", controls, target, phi) + _mc_phase(controls[:-1], controls[-1], phi / 2)


def _with_polarity(controls, body) -> list:
    flips = [C.X(q) for q, v in controls if v == 0]
    return flips + body + flips


def decompose_gate(g, qubits: int) -> list:
    if isinstance(g, C.MultiControlledRy):
        if len(g.controls) == 1:
            (c, v), = g.controls
            return _c_rot("y", c, g.target, g.theta, v)
        pos = [q for q, _ in g.controls]
        return _with_polarity(g.controls, _mc_rot("y", pos, g.target, g.theta))
    if isinstance(g, C.MultiControlledX):
        pos = [q for q, _ in g.controls]
        if len(pos) == 1 and g.controls[0][1] == 1:
            return [g]
        used = set(pos) | {g.target}
        idle = [q for q in range(qubits) if q not in used]
        return _with_polarity(g.controls, _mcx_any(pos, g.target, idle))
    return [g]


def decompose_multicontrols(qc: C.QubitCircuit) -> C.QubitCircuit:
    """Replace every multi-controlled Ry / X by one- and two-qubit gates."""
    out = []
    for g in qc.gates:
        out += decompose_gate(g, qc.n + 1)
    return C.QubitCircuit(qc.n, tuple(out), qc.ancillas)


def max_arity(qc: C.QubitCircuit) -> int:
    return max((len(C.gate_qubits(g)) for g in qc.gates), default=0)
