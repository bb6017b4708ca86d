"""Bit-structured interferometers: instances, decisions and the reverse compiler.

A layer ``(k, l, theta)`` mixes every pair of modes whose indices differ
only in bit ``l``, restricted to modes whose bit ``k`` is 0. It compiles to a
single 0-controlled ``Ry(theta)`` between register qubits ``k`` and ``l``.
"""
from __future__ import annotations

import enum
import math
import shlex
from dataclasses import dataclass, field

import numpy as np

from . import compiler as C
from . import gbir, sim
from .errors import ParseError

YES_THRESHOLD = 2.0 / 3.0
NO_THRESHOLD = 1.0 / 3.0


class Decision(enum.Enum):
    YES = "YES"
    NO = "NO"
    INDETERMINATE = "INDETERMINATE"


def decide(q1_over_x: float) -> Decision:
    if q1_over_x > YES_THRESHOLD:
        return Decision.YES
    if q1_over_x < NO_THRESHOLD:
        return Decision.NO
    return Decision.INDETERMINATE


@dataclass(frozen=True)
class BitStructuredLayer:
    k: int
    l: int
    theta: float

    def __post_init__(self):
        if self.k == self.l:
            raise ValueError("control and target bits must differ")
        if self.k < 1 or self.l < 1:
            raise ValueError("bits are numbered from 1")
        if not math.isfinite(self.theta):
            raise ValueError("theta must be finite")

    def inverse(self) -> "BitStructuredLayer":
        return BitStructuredLayer(self.k, self.l, -self.theta)


@dataclass(frozen=True)
class Bqp1Instance:
    n: int
    layers: tuple = ()
    x: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))
        if self.n < 2:
            raise ValueError("need n >= 2 register bits")
        if not (self.x > 0 and math.isfinite(self.x)):
            raise ValueError("x must be positive")
        for i, layer in enumerate(self.layers):
            if max(layer.k, layer.l) > self.n:
                raise ValueError(f"layer {i} uses a bit above n={self.n}")

    @property
    def depth(self) -> int:
        return len(self.layers)


def layer_to_gb(layer: BitStructuredLayer) -> gbir.GlobalBeamsplitter:
    return gbir.GlobalBeamsplitter(gbir.BitCondition(((layer.k, 0),)), layer.l, layer.theta / 4)


def instance_circuit(inst: Bqp1Instance) -> gbir.GbCircuit:
    return gbir.GbCircuit(2**inst.n, tuple(layer_to_gb(x) for x in inst.layers))


@dataclass
class BqpResult:
    q1_over_x: float
    decision: Decision
    trajectory: sim.Trajectory = field(repr=False)
    state: sim.ScaledState | None = field(default=None, repr=False)


def run_instance(
    inst: Bqp1Instance, capacity: int = sim.DEFAULT_CAPACITY, keep_state: bool = False
) -> BqpResult:
    """Evolve ``(x, 0, ..., 0)`` through the layers; one trajectory row per layer."""
    qc = C.compile(instance_circuit(inst))
    s0 = sim.basis_state(inst.n, inst.x, capacity)
    s, traj = sim.run(qc, s0, trace_every=1, capacity=capacity, in_place=True)
    q1 = float(s.scale * s.amplitudes[0] / inst.x)
    return BqpResult(q1, decide(q1), traj, s if keep_state else None)


# -- generators ----------------------------------------------------------------

def random_layers(n: int, count: int, rng: np.random.Generator) -> list[BitStructuredLayer]:
    out = []
    for _ in range(count):
        k, l = (int(v) + 1 for v in rng.choice(n, size=2, replace=False))
        out.append(BitStructuredLayer(k, l, float(rng.uniform(0.0, 2.0 * math.pi))))
    return out


def random_instance(n: int, depth: int, seed: int, x: float = 1.0) -> Bqp1Instance:
    rng = np.random.Generator(np.random.Philox(seed))
    return Bqp1Instance(n, tuple(random_layers(n, depth, rng)), x)


def planted_instance(n: int, depth: int, yes: bool, seed: int, x: float = 1.0) -> Bqp1Instance:
    """Instance with a known answer.

    A first layer (angle 0 for YES, pi for NO) fixes the final overlap to 1
    or 0; it is followed by a random block ``U`` and its mirror ``U^-1`` so
    the trajectory wanders before returning. A zero-angle layer pads odd
    depths.
    """
    if depth < 1:
        raise ValueError("planted instances need at least one layer")
    rng = np.random.Generator(np.random.Philox(seed))
    half = (depth - 1) // 2
    block = random_layers(n, half, rng)
    first = BitStructuredLayer(1, 2, 0.0 if yes else math.pi)
    layers = [first] + block + [g.inverse() for g in reversed(block)]
    while len(layers) < depth:
        layers.append(BitStructuredLayer(1, 2, 0.0))
    return Bqp1Instance(n, tuple(layers), x)


# -- reverse compiler -----------------------------------------------------------

QUBIT_GATE_ARITY = {"rz": 1, "ry": 1, "cry": 2}


def reverse_compile(circuit, n: int) -> gbir.GbCircuit:
    """Map a qubit circuit over ``{rz, ry, cry}`` onto global GB gates.

    Gates are tuples ``("rz", k, tau)``, ``("ry", k, tau)`` or
    ``("cry", control, target, tau)`` with qubits numbered ``1..n`` the same
    way as mode-index bits. ``rz`` is the standard ``exp(-i tau Z / 2)``,
    realised exactly up to a global phase.
    """
    gates = []
    for i, g in enumerate(circuit):
        name = str(g[0]).lower()
        if name not in QUBIT_GATE_ARITY or len(g) != QUBIT_GATE_ARITY[name] + 2:
            raise ValueError(f"gate {i}: unsupported gate {g!r}")
        tau = float(g[-1])
        if name == "rz":
            # a global phase gate multiplies q + ip by exp(-2it)
            gates.append(gbir.GlobalPhase(gbir.BitCondition(((g[1], 1),)), -tau / 2))
        elif name == "ry":
            gates.append(gbir.GlobalBeamsplitter(gbir.BitCondition(()), g[1], tau / 4))
        else:
            gates.append(gbir.GlobalBeamsplitter(gbir.BitCondition(((g[1], 1),)), g[2], tau / 4))
    return gbir.GbCircuit(2**n, tuple(gates))


def real_double(psi, x: float = 1.0) -> np.ndarray:
    """Moment vector with ``q = x Re(psi)`` and ``p = x Im(psi)``."""
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if psi.size & (psi.size - 1):
        raise ValueError("state length must be a power of two")
    return x * np.concatenate([psi.real, psi.imag])


def f_gate_layers(n: int = 2) -> list[BitStructuredLayer]:
    """The two-qubit ``F`` gate ``[[0, -1], [1, 0]] (+) I`` as one layer.

    It acts on the two most significant register bits: the control is the
    leading bit (the gate is active while it is 0), the target the next one.
    """
    return [BitStructuredLayer(n, n - 1, math.pi)]


# -- instance files ---------------------------------------------------------------

def serialize_instance(inst: Bqp1Instance) -> str:
    lines = [f"n {inst.n}", f"x {inst.x!r}"]
    lines += [f"layer k={g.k} l={g.l} theta={float(g.theta)!r}" for g in inst.layers]
    return "\n".join(lines) + "\n"


def parse_instance(text: str) -> Bqp1Instance:
    n = None
    x = 1.0
    layers = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = shlex.split(line)
        kw = tokens[0]
        try:
            if kw == "n":
                n = int(tokens[1])
            elif kw == "x":
                x = float(tokens[1])
            elif kw == "layer":
                kv = gbir.parse_keyvalues(tokens[1:], lineno)
                layers.append(BitStructuredLayer(int(kv["k"]), int(kv["l"]), float(kv["theta"])))
            else:
                raise ValueError(f"unknown keyword {kw!r}")
        except KeyError as exc:
            raise ParseError(lineno, f"layer is missing {exc.args[0]}=") from None
        except (IndexError, ValueError) as exc:
            raise ParseError(lineno, str(exc) or f"malformed {kw!r} line") from None
    if n is None:
        raise ParseError(0, "missing 'n' header")
    try:
        return Bqp1Instance(n, tuple(layers), x)
    except ValueError as exc:
        raise ParseError(0, str(exc)) from None
