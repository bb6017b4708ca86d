"""Gate dictionary from Gaussian bosonic gates to real qubit circuits.

Qubit ``0`` is the symplectic qubit (selects the q or p block), qubits
``1..n`` are the register (qubit ``k`` carries mode bit ``k``), and squeezing
adds ancillas ``n+1`` (A) and ``n+2`` (B). In a state vector, qubit ``0`` is
index bit ``n``, register qubit ``k`` is bit ``k-1`` and ancilla ``n+j`` is
bit ``n+j``, so amplitude ``s*M + (m-1)`` holds ``q_m`` (``s = 0``) or
``p_m`` (``s = 1``).

Angle convention: ``Ry(theta) = exp(-i theta Y / 2)``. A beamsplitter of
time ``t`` becomes ``Ry(4t)`` on the register. A phase gate of time ``t``
becomes ``Ry(-4t)`` on the symplectic qubit, because ``exp(2t iY)`` rotates
``(q, p) -> (q cos 2t + p sin 2t, p cos 2t - q sin 2t)``.
"""
from __future__ import annotations

import math
import shlex
from dataclasses import dataclass
from typing import Union

import numpy as np

from . import gbir
from .errors import (
    CircuitValidationError,
    DisplacementUnsupported,
    GateCompileError,
    LcuRangeError,
    ParseError,
)

DEFAULT_LCU_STEP = 0.05

Controls = tuple  # tuple[tuple[int, int], ...] of (qubit, polarity)


def _controls(c) -> Controls:
    out = tuple(sorted((int(q), int(v)) for q, v in c))
    qs = [q for q, _ in out]
    if len(set(qs)) != len(qs):
        raise ValueError(f"repeated control qubit in {out}")
    for _, v in out:
        if v not in (0, 1):
            raise ValueError(f"control polarity must be 0 or 1, got {v}")
    return out


def _check_target(controls, target):
    if target in {q for q, _ in controls}:
        raise ValueError(f"target {target} is also a control")


@dataclass(frozen=True)
class Ry:
    target: int
    theta: float

    def __post_init__(self):
        if not math.isfinite(self.theta):
            raise ValueError("theta must be finite")


@dataclass(frozen=True)
class X:
    target: int


@dataclass(frozen=True)
class MultiControlledRy:
    controls: Controls
    target: int
    theta: float

    def __post_init__(self):
        object.__setattr__(self, "controls", _controls(self.controls))
        _check_target(self.controls, self.target)
        if not math.isfinite(self.theta):
            raise ValueError("theta must be finite")


@dataclass(frozen=True)
class MultiControlledX:
    controls: Controls
    target: int

    def __post_init__(self):
        object.__setattr__(self, "controls", _controls(self.controls))
        _check_target(self.controls, self.target)


@dataclass(frozen=True)
class SelectZ:
    """``sign * Z`` on ``target`` where all controls match, identity elsewhere."""

    controls: Controls
    target: int
    sign: int = 1

    def __post_init__(self):
        object.__setattr__(self, "controls", _controls(self.controls))
        _check_target(self.controls, self.target)
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")


@dataclass(frozen=True)
class SelectReflect:
    """Where ``enable`` matches: ``+1`` if ``pattern`` matches, ``-1`` otherwise.

    With an empty ``enable`` this is the reflection ``2P - 1`` about the
    register states selected by ``pattern``.
    """

    pattern: Controls
    enable: Controls = ()

    def __post_init__(self):
        object.__setattr__(self, "pattern", _controls(self.pattern))
        object.__setattr__(self, "enable", _controls(self.enable))
        if {q for q, _ in self.pattern} & {q for q, _ in self.enable}:
            raise ValueError("pattern and enable share a qubit")


@dataclass(frozen=True)
class AnsatzPrep:
    """Two-ancilla state preparation ``|00> -> sum_j sqrt(w_j) |j>``.

    Realised as the Householder reflection taking ``|00>`` to the target
    state, which is real, symmetric and its own inverse.
    """

    weights: tuple[float, float, float, float]
    inverse: bool = False

    def __post_init__(self):
        w = tuple(float(x) for x in self.weights)
        if len(w) != 4 or min(w) < 0 or abs(sum(w) - 1) > 1e-12:
            raise ValueError(f"LCU weights must be 4 nonnegative numbers summing to 1, got {w}")
        object.__setattr__(self, "weights", w)

    @property
    def amplitudes(self) -> np.ndarray:
        return np.sqrt(np.array(self.weights))

    def matrix(self) -> np.ndarray:
        u = self.amplitudes
        v = np.eye(4)[0] - u
        vv = v @ v
        if vv < 1e-30:
            return np.eye(4)
        return np.eye(4) - 2.0 * np.outer(v, v) / vv


@dataclass(frozen=True)
class Postselect:
    """Project both ancillas on ``|00>`` and discard them."""


@dataclass(frozen=True)
class ExactSqueeze:
    """Simulator-native squeeze: on register states matching ``controls``,
    scale ``q`` by ``exp(2 sign t)`` and ``p`` by ``exp(-2 sign t)``."""

    controls: Controls
    t: float
    sign: int = 1

    def __post_init__(self):
        object.__setattr__(self, "controls", _controls(self.controls))
        if 0 in {q for q, _ in self.controls}:
            raise ValueError("squeeze controls must be register qubits")


@dataclass(frozen=True)
class SingleQubit:
    """Named one-qubit gate emitted by the multi-control decomposition.

    Some of these (``rz``, ``h``, ``t``, ``tdg``, ``phase``) are complex and
    are only evaluated through dense matrices, never by the real simulator.
    """

    name: str
    target: int
    param: float = 0.0


QubitGate = Union[
    Ry, X, MultiControlledRy, MultiControlledX, SelectZ, SelectReflect,
    AnsatzPrep, Postselect, ExactSqueeze, SingleQubit,
]

UNITARY_REAL = (Ry, X, MultiControlledRy, MultiControlledX, SelectZ, SelectReflect, AnsatzPrep)


def gate_qubits(g) -> set[int]:
    if isinstance(g, (Ry, X, SingleQubit)):
        return {g.target}
    if isinstance(g, (MultiControlledRy, MultiControlledX, SelectZ)):
        return {g.target} | {q for q, _ in g.controls}
    if isinstance(g, SelectReflect):
        return {q for q, _ in g.pattern} | {q for q, _ in g.enable}
    if isinstance(g, ExactSqueeze):
        return {0} | {q for q, _ in g.controls}
    return set()


@dataclass(frozen=True)
class QubitCircuit:
    n: int
    gates: tuple = ()
    ancillas: int = 0

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.ancillas not in (0, 2):
            raise ValueError("ancillas must be 0 or 2")
        top = self.n + self.ancillas
        open_block = False
        for i, g in enumerate(self.gates):
            for q in gate_qubits(g):
                if not 0 <= q <= top:
                    raise ValueError(f"gate {i} touches qubit {q} outside 0..{top}")
                if q > self.n and not open_block:
                    raise ValueError(f"gate {i} uses an ancilla outside a prep/postselect block")
            if isinstance(g, AnsatzPrep) and not g.inverse:
                if open_block:
                    raise ValueError(f"gate {i}: nested ancilla block")
                if not self.ancillas:
                    raise ValueError("ancilla block in a circuit without ancillas")
                open_block = True
            elif isinstance(g, Postselect):
                if not open_block:
                    raise ValueError(f"gate {i}: postselect without prep")
                open_block = False
        if open_block:
            raise ValueError("unterminated ancilla block")

    @property
    def qubits(self) -> int:
        return self.n + 1 + self.ancillas

    @property
    def postselect_points(self) -> list[int]:
        return [i for i, g in enumerate(self.gates) if isinstance(g, Postselect)]

    def __len__(self):
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def count(self, kind) -> int:
        return sum(isinstance(g, kind) for g in self.gates)


def ancilla_qubits(n: int) -> tuple[int, int]:
    return n + 1, n + 2


def bit_position(q: int, n: int) -> int:
    """Index bit holding qubit ``q``."""
    if q == 0:
        return n
    if q <= n:
        return q - 1
    return q


# -- local dictionary ------------------------------------------------------------

def mode_controls(m: int, n: int) -> Controls:
    """Register controls selecting the single mode ``m`` (1-based)."""
    return tuple((k, gbir.mode_bit(m, k)) for k in range(1, n + 1))


def cond_controls(cond: gbir.BitCondition) -> Controls:
    return tuple(cond.clauses)


def _mcry(controls, target, theta):
    if not controls:
        return Ry(target, theta)
    return MultiControlledRy(controls, target, theta)


def compile_phase(m: int, t: float, n: int) -> list:
    return [_mcry(mode_controls(m, n), 0, -4.0 * t)]


def compile_beamsplitter(m: int, mp: int, t: float, n: int) -> list:
    """Map the ``(m, m')`` rotation onto the lowest differing register bit.

    A permutation of basis states built from X and singly controlled X gates
    brings ``|m>`` to ``d1 = 0`` and ``|m'>`` to ``d1 = 1`` with all other
    differing bits cleared, a controlled ``Ry(4t)`` acts there, and the
    permutation is undone.
    """
    if m == mp:
        raise ValueError("beamsplitter modes must differ")
    x, y = m - 1, mp - 1
    diff = [k for k in range(1, n + 1) if ((x ^ y) >> (k - 1)) & 1]
    same = [k for k in range(1, n + 1) if k not in diff]
    d1, rest = diff[0], diff[1:]
    basis = []
    if gbir.mode_bit(m, d1):
        basis.append(X(d1))
    c0 = [MultiControlledX(((d1, 0),), k) for k in rest if gbir.mode_bit(m, k)]
    c1 = [MultiControlledX(((d1, 1),), k) for k in rest if gbir.mode_bit(mp, k)]
    basis += c0 + c1
    controls = [(k, gbir.mode_bit(m, k)) for k in same] + [(k, 0) for k in rest]
    core = _mcry(tuple(controls), d1, 4.0 * t)
    undo = list(reversed(c1)) + list(reversed(c0))
    if gbir.mode_bit(m, d1):
        undo.append(X(d1))
    return basis + [core] + undo


def lcu_coefficients(t: float, sign: int = 1):
    """Weights ``(a, b, c, d)`` and amplitude factor ``gamma`` of the
    first-order squeeze LCU, ``gamma = 1 / (1 + 2t)``."""
    if not (0.0 <= t < 1.0):
        raise LcuRangeError(f"LCU squeeze needs 0 <= t < 1, got {t}")
    sign = gbir._sign(sign)
    den = 1.0 + 2.0 * t
    a = (1.0 - t) / den
    b = t / den
    c = (t + sign * t) / den
    d = (t - sign * t) / den
    return a, b, c, d, 1.0 / den


def lcu_block(pattern: Controls, t: float, sign: int, n: int) -> list:
    """One heralded block approximating ``exp(2 sign t Z (x) P)``."""
    a, b, c, d, _ = lcu_coefficients(t, sign)
    A, B = ancilla_qubits(n)
    w = (a, b, c, d)
    out = [AnsatzPrep(w)]
    if b > 0:
        out.append(SelectReflect(pattern, ((A, 0), (B, 1))))
    if c > 0:
        out.append(SelectZ(((A, 1), (B, 0)) + tuple(pattern), 0, 1))
    if d > 0:
        out.append(SelectZ(((A, 1), (B, 1)) + tuple(pattern), 0, -1))
    out += [AnsatzPrep(w, inverse=True), Postselect()]
    return out


def lcu_steps(t: float, step: float = DEFAULT_LCU_STEP) -> tuple[int, float]:
    if step <= 0:
        raise ValueError("LCU step must be positive")
    k = max(1, math.ceil(abs(t) / step - 1e-12))
    return k, abs(t) / k


def compile_squeeze_lcu(m, t: float, sign: int, n: int, step: float = DEFAULT_LCU_STEP) -> list:
    """LCU blocks for a squeeze on mode ``m`` or on a ``BitCondition``.

    The LCU is first order in ``t``; the total time is split into blocks of at
    most ``step``. Negative ``t`` is the opposite-sign squeeze.
    """
    pattern = cond_controls(m) if isinstance(m, gbir.BitCondition) else mode_controls(m, n)
    sign = gbir._sign(sign)
    if t < 0:
        t, sign = -t, -sign
    k, dt = lcu_steps(t, step)
    out = []
    for _ in range(k):
        out += lcu_block(pattern, dt, sign, n)
    return out


def compile_gate(g, n: int, squeeze: str = "lcu", lcu_step: float = DEFAULT_LCU_STEP) -> list:
    if isinstance(g, gbir.Displacement):
        raise DisplacementUnsupported("displacement is affine in the moments and has no linear qubit-gate form")
    if isinstance(g, gbir.Phase):
        return compile_phase(g.m, g.t, n)
    if isinstance(g, gbir.Beamsplitter):
        return compile_beamsplitter(g.m, g.mp, g.t, n)
    if isinstance(g, gbir.GlobalPhase):
        return [_mcry(cond_controls(g.cond), 0, -4.0 * g.t)]
    if isinstance(g, gbir.GlobalBeamsplitter):
        return [_mcry(cond_controls(g.cond), g.l, 4.0 * g.t)]
    if isinstance(g, (gbir.Squeeze, gbir.GlobalSqueeze)):
        sel = g.cond if isinstance(g, gbir.GlobalSqueeze) else g.m
        if squeeze == "exact":
            ctrl = cond_controls(sel) if isinstance(sel, gbir.BitCondition) else mode_controls(sel, n)
            return [ExactSqueeze(ctrl, g.t, g.sign)]
        if squeeze == "lcu":
            return compile_squeeze_lcu(sel, g.t, g.sign, n, lcu_step)
        raise ValueError(f"squeeze mode must be 'lcu' or 'exact', got {squeeze!r}")
    raise TypeError(f"not a GB gate: {g!r}")


def compile(c: gbir.GbCircuit, squeeze: str = "lcu", lcu_step: float = DEFAULT_LCU_STEP) -> QubitCircuit:
    """Translate a GB circuit gate by gate; global gates keep their reduced
    control sets rather than being expanded."""
    for i, g in enumerate(c.gates):
        if isinstance(g, gbir.Displacement):
            raise DisplacementUnsupported(
                f"gate {i}: displacement is affine in the moments and has no linear qubit-gate form"
            )
    problems = gbir.validate(c)
    if problems:
        raise CircuitValidationError(problems)
    n = c.n
    out = []
    for i, g in enumerate(c.gates):
        try:
            out += compile_gate(g, n, squeeze, lcu_step)
        except (ValueError, TypeError) as exc:
            raise GateCompileError(i, exc) from exc
    ancillas = 2 if any(isinstance(g, AnsatzPrep) for g in out) else 0
    return QubitCircuit(n, tuple(out), ancillas)


# -- dense realisation -------------------------------------------------------------
# Built from explicit index arithmetic, independently of the simulator kernels.

def _ry(theta):
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -s], [s, c]])


_SINGLE = {
    "x": lambda p: np.array([[0, 1], [1, 0]], dtype=complex),
    "z": lambda p: np.diag([1, -1]).astype(complex),
    "h": lambda p: np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2),
    "t": lambda p: np.diag([1, np.exp(1j * math.pi / 4)]),
    "tdg": lambda p: np.diag([1, np.exp(-1j * math.pi / 4)]),
    "ry": lambda p: _ry(p).astype(complex),
    "rz": lambda p: np.diag([np.exp(-0.5j * p), np.exp(0.5j * p)]),
    "phase": lambda p: np.diag([1, np.exp(1j * p)]),
}


def single_qubit_matrix(name: str, param: float = 0.0) -> np.ndarray:
    return _SINGLE[name](param)


def _matches(idx, controls, n):
    ok = np.ones(idx.shape, dtype=bool)
    for q, v in controls:
        ok &= ((idx >> bit_position(q, n)) & 1) == v
    return ok


def controlled_matrix(U, target, controls, nq, n):
    """Dense ``2^nq`` matrix of a 2x2 ``U`` on ``target`` under ``controls``."""
    dim = 2**nq
    out = np.eye(dim, dtype=np.result_type(U, float))
    idx = np.arange(dim)
    tb = bit_position(target, n)
    low = idx[(((idx >> tb) & 1) == 0) & _matches(idx, controls, n)]
    high = low | (1 << tb)
    out[low, low] = U[0, 0]
    out[low, high] = U[0, 1]
    out[high, low] = U[1, 0]
    out[high, high] = U[1, 1]
    return out


def gate_matrix(g, nq: int, n: int) -> np.ndarray:
    """Dense matrix of one gate on ``nq`` qubits (``n`` register qubits)."""
    dim = 2**nq
    idx = np.arange(dim)
    if isinstance(g, Ry):
        return controlled_matrix(_ry(g.theta), g.target, (), nq, n)
    if isinstance(g, X):
        return controlled_matrix(np.array([[0.0, 1.0], [1.0, 0.0]]), g.target, (), nq, n)
    if isinstance(g, MultiControlledRy):
        return controlled_matrix(_ry(g.theta), g.target, g.controls, nq, n)
    if isinstance(g, MultiControlledX):
        return controlled_matrix(np.array([[0.0, 1.0], [1.0, 0.0]]), g.target, g.controls, nq, n)
    if isinstance(g, SelectZ):
        return controlled_matrix(g.sign * np.diag([1.0, -1.0]), g.target, g.controls, nq, n)
    if isinstance(g, SingleQubit):
        return controlled_matrix(single_qubit_matrix(g.name, g.param), g.target, (), nq, n)
    if isinstance(g, SelectReflect):
        on = _matches(idx, g.enable, n)
        hit = _matches(idx, g.pattern, n)
        return np.diag(np.where(on & ~hit, -1.0, 1.0))
    if isinstance(g, ExactSqueeze):
        sel = _matches(idx, g.controls, n)
        s = (idx >> n) & 1
        f = np.where(s == 0, math.exp(2 * g.sign * g.t), math.exp(-2 * g.sign * g.t))
        return np.diag(np.where(sel, f, 1.0))
    if isinstance(g, AnsatzPrep):
        A, B = ancilla_qubits(n)
        ba, bb = bit_position(A, n), bit_position(B, n)
        U = g.matrix()
        out = np.zeros((dim, dim))
        base = idx[(((idx >> ba) & 1) == 0) & (((idx >> bb) & 1) == 0)]
        for v_out in range(4):
            ro = base | ((v_out >> 1) << ba) | ((v_out & 1) << bb)
            for v_in in range(4):
                ci = base | ((v_in >> 1) << ba) | ((v_in & 1) << bb)
                out[ro, ci] = U[v_out, v_in]
        return out
    raise TypeError(f"no dense matrix for {g!r}")


def circuit_operator(qc: QubitCircuit) -> np.ndarray:
    """Effective operator on the ``n + 1`` data qubits.

    Ancilla blocks contribute ``<00| U_block |00>``, i.e. the (unnormalised)
    post-selected map.
    """
    n = qc.n
    dim = 2 ** (n + 1)
    if n + 1 + qc.ancillas > 12:
        raise ValueError("dense circuit operator limited to 12 qubits")
    op = np.eye(dim)
    block = None
    for g in qc.gates:
        if isinstance(g, AnsatzPrep) and not g.inverse:
            block = gate_matrix(g, n + 3, n)
            continue
        if isinstance(g, Postselect):
            op = block[:dim, :dim] @ op
            block = None
            continue
        if block is not None:
            block = gate_matrix(g, n + 3, n) @ block
        else:
            op = gate_matrix(g, n + 1, n) @ op
    return op


# -- text format -----------------------------------------------------------------

def _fmt(x):
    return repr(float(x))


def _ctrl_str(c):
    return ",".join(f"{q}:{v}" for q, v in c) or "-"


def _ctrl_parse(s):
    if s in ("-", ""):
        return ()
    out = []
    for part in s.split(","):
        q, _, v = part.partition(":")
        out.append((int(q), int(v)))
    return tuple(out)


def _sign_str(s):
    return "+" if s > 0 else "-"


def format_qubit_gate(g) -> str:
    if isinstance(g, Ry):
        return f"ry q={g.target} theta={_fmt(g.theta)}"
    if isinstance(g, X):
        return f"x q={g.target}"
    if isinstance(g, MultiControlledRy):
        return f"mcry ctrls={_ctrl_str(g.controls)} tgt={g.target} theta={_fmt(g.theta)}"
    if isinstance(g, MultiControlledX):
        return f"mcx ctrls={_ctrl_str(g.controls)} tgt={g.target}"
    if isinstance(g, SelectZ):
        return f"selz ctrls={_ctrl_str(g.controls)} tgt={g.target} sign={_sign_str(g.sign)}"
    if isinstance(g, SelectReflect):
        return f"selreflect enable={_ctrl_str(g.enable)} pattern={_ctrl_str(g.pattern)}"
    if isinstance(g, AnsatzPrep):
        kw = "unprep" if g.inverse else "prep"
        a, b, c, d = g.weights
        return f"{kw} a={_fmt(a)} b={_fmt(b)} c={_fmt(c)} d={_fmt(d)}"
    if isinstance(g, Postselect):
        return "postselect anc=00"
    if isinstance(g, ExactSqueeze):
        return f"xsq ctrls={_ctrl_str(g.controls)} t={_fmt(g.t)} sign={_sign_str(g.sign)}"
    if isinstance(g, SingleQubit):
        return f"u1 name={g.name} q={g.target} param={_fmt(g.param)}"
    raise TypeError(f"cannot format {g!r}")


def serialize_qubit_circuit(qc: QubitCircuit) -> str:
    lines = [f"qubits {qc.qubits}", f"ancillas {qc.ancillas}"]
    lines += [format_qubit_gate(g) for g in qc.gates]
    return "\n".join(lines) + "\n"


def _build_qubit_gate(kw, kv):
    sign = lambda s: gbir._sign(s)  # noqa: E731
    if kw == "ry":
        return Ry(int(kv["q"]), float(kv["theta"]))
    if kw == "x":
        return X(int(kv["q"]))
    if kw == "mcry":
        return MultiControlledRy(_ctrl_parse(kv["ctrls"]), int(kv["tgt"]), float(kv["theta"]))
    if kw == "mcx":
        return MultiControlledX(_ctrl_parse(kv["ctrls"]), int(kv["tgt"]))
    if kw == "selz":
        return SelectZ(_ctrl_parse(kv["ctrls"]), int(kv["tgt"]), sign(kv.get("sign", "+")))
    if kw == "selreflect":
        return SelectReflect(_ctrl_parse(kv["pattern"]), _ctrl_parse(kv.get("enable", "-")))
    if kw in ("prep", "unprep"):
        w = tuple(float(kv[k]) for k in "abcd")
        return AnsatzPrep(w, inverse=kw == "unprep")
    if kw == "postselect":
        if kv.get("anc", "00") != "00":
            raise ValueError("only anc=00 post-selection is supported")
        return Postselect()
    if kw == "xsq":
        return ExactSqueeze(_ctrl_parse(kv["ctrls"]), float(kv["t"]), sign(kv.get("sign", "+")))
    if kw == "u1":
        return SingleQubit(kv["name"], int(kv["q"]), float(kv.get("param", 0.0)))
    raise ValueError(f"unknown qubit gate {kw!r}")


def parse_qubit_circuit(text: str) -> QubitCircuit:
    qubits = None
    ancillas = 0
    gates = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = shlex.split(line)
        kw = tokens[0]
        if kw in ("qubits", "ancillas"):
            try:
                val = int(tokens[1])
            except (IndexError, ValueError):
                raise ParseError(lineno, f"expected '{kw} <int>'") from None
            if kw == "qubits":
                qubits = val
            else:
                ancillas = val
            continue
        if qubits is None:
            raise ParseError(lineno, "gate before 'qubits' header")
        kv = gbir.parse_keyvalues(tokens[1:], lineno)
        try:
            gates.append(_build_qubit_gate(kw, kv))
        except KeyError as exc:
            raise ParseError(lineno, f"{kw} is missing {exc.args[0]}=") from None
        except ValueError as exc:
            raise ParseError(lineno, str(exc)) from None
    if qubits is None:
        raise ParseError(0, "missing 'qubits' header")
    try:
        return QubitCircuit(qubits - 1 - ancillas, tuple(gates), ancillas)
    except ValueError as exc:
        raise ParseError(0, str(exc)) from None


def gate_counts(qc: QubitCircuit) -> dict[str, int]:
    counts: dict[str, int] = {}
    for g in qc.gates:
        name = format_qubit_gate(g).split()[0]
        counts[name] = counts.get(name, 0) + 1
    return counts
