"""Gaussian bosonic circuit IR: gates, validation, global-gate expansion,
generators and the line-oriented text format.

Modes are 1-based ``m = 1..M`` with ``M = 2^n``. Bit ``k`` (1-based) of a
mode is bit ``k - 1`` of ``m - 1``, so bit 1 is the least significant::

    m = 1 + 2^0 m_1 + 2^1 m_2 + ... + 2^(n-1) m_n

A condition clause ``(k, b)`` selects modes whose bit ``k`` equals ``b``.
"""
from __future__ import annotations

import math
import shlex
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .errors import DisplacementHasNoQuadraticGenerator, ParseError
from .symplectic import (
    GeneratorKind,
    GeneratorMatrix,
    beamsplitter_generator,
    phase_generator,
    squeeze_generator,
)


def mode_bit(m: int, k: int) -> int:
    """Bit ``k`` (1-based) of the 1-based mode ``m``."""
    return ((m - 1) >> (k - 1)) & 1


@dataclass(frozen=True)
class BitCondition:
    clauses: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        clauses = tuple(sorted((int(k), int(b)) for k, b in self.clauses))
        bits = [k for k, _ in clauses]
        if len(set(bits)) != len(bits):
            raise ValueError(f"repeated bit index in condition {clauses}")
        for k, b in clauses:
            if k < 1 or b not in (0, 1):
                raise ValueError(f"bad condition clause ({k}, {b})")
        object.__setattr__(self, "clauses", clauses)

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple(k for k, _ in self.clauses)

    def matches(self, m: int) -> bool:
        return all(mode_bit(m, k) == b for k, b in self.clauses)

    def modes(self, M: int) -> list[int]:
        return [m for m in range(1, M + 1) if self.matches(m)]

    def __str__(self):
        return ",".join(f"{k}:{b}" for k, b in self.clauses) or "-"

    @classmethod
    def parse(cls, text: str) -> "BitCondition":
        text = text.strip()
        if text in ("-", ""):
            return cls()
        clauses = []
        for part in text.split(","):
            k, _, b = part.partition(":")
            clauses.append((int(k), int(b)))
        return cls(tuple(clauses))


def _cond(c) -> BitCondition:
    return c if isinstance(c, BitCondition) else BitCondition(tuple(c))


def _sign(s) -> int:
    if s in (1, "+", "+1"):
        return 1
    if s in (-1, "-", "-1"):
        return -1
    raise ValueError(f"sign must be + or -, got {s!r}")


@dataclass(frozen=True)
class Phase:
    m: int
    t: float


@dataclass(frozen=True)
class Beamsplitter:
    m: int
    mp: int
    t: float


@dataclass(frozen=True)
class Squeeze:
    m: int
    t: float
    sign: int = 1

    def __post_init__(self):
        object.__setattr__(self, "sign", _sign(self.sign))


@dataclass(frozen=True)
class GlobalPhase:
    cond: BitCondition
    t: float

    def __post_init__(self):
        object.__setattr__(self, "cond", _cond(self.cond))


@dataclass(frozen=True)
class GlobalBeamsplitter:
    cond: BitCondition
    l: int
    t: float

    def __post_init__(self):
        object.__setattr__(self, "cond", _cond(self.cond))


@dataclass(frozen=True)
class GlobalSqueeze:
    cond: BitCondition
    t: float
    sign: int = 1

    def __post_init__(self):
        object.__setattr__(self, "cond", _cond(self.cond))
        object.__setattr__(self, "sign", _sign(self.sign))


@dataclass(frozen=True)
class Displacement:
    m: int
    dq: float
    dp: float


GbGate = Union[Phase, Beamsplitter, Squeeze, GlobalPhase, GlobalBeamsplitter, GlobalSqueeze, Displacement]

LOCAL_GATES = (Phase, Beamsplitter, Squeeze, Displacement)
GLOBAL_GATES = (GlobalPhase, GlobalBeamsplitter, GlobalSqueeze)
PARTICLE_PRESERVING = (Phase, Beamsplitter, GlobalPhase, GlobalBeamsplitter)
SQUEEZING = (Squeeze, GlobalSqueeze)


@dataclass(frozen=True)
class GbCircuit:
    modes: int
    gates: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))

    @property
    def n(self) -> int:
        return max(self.modes - 1, 0).bit_length()

    def __len__(self):
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)


@dataclass(frozen=True)
class Violation:
    code: str
    index: int | None
    message: str

    def __str__(self):
        where = "circuit" if self.index is None else f"gate {self.index}"
        return f"{where}: {self.code}: {self.message}"


def _mode_ok(m, M):
    return isinstance(m, (int, np.integer)) and 1 <= m <= M


def validate(c: GbCircuit) -> list[Violation]:
    """All invariant violations of ``c``; an empty list means valid."""
    out = []
    M = c.modes
    if M < 1 or M & (M - 1):
        out.append(Violation("ModesNotPowerOfTwo", None, f"modes={M} is not a power of two"))
    n = c.n
    for i, g in enumerate(c.gates):
        modes = []
        if isinstance(g, (Phase, Squeeze, Displacement)):
            modes = [g.m]
        elif isinstance(g, Beamsplitter):
            modes = [g.m, g.mp]
            if g.m == g.mp:
                out.append(Violation("ModesMustDiffer", i, f"beamsplitter on ({g.m}, {g.mp})"))
        for m in modes:
            if not _mode_ok(m, M):
                out.append(Violation("ModeOutOfRange", i, f"mode {m} not in 1..{M}"))
        if isinstance(g, GLOBAL_GATES):
            for k in g.cond.bits:
                if k > n:
                    out.append(Violation("BitOutOfRange", i, f"condition bit {k} > n={n}"))
        if isinstance(g, GlobalBeamsplitter):
            if not 1 <= g.l <= n:
                out.append(Violation("BitOutOfRange", i, f"pairing bit l={g.l} not in 1..{n}"))
            if g.l in g.cond.bits:
                out.append(Violation("PairingBitInCondition", i, f"pairing bit {g.l} appears in condition"))
        if isinstance(g, Displacement):
            out.append(Violation("DisplacementUnsupported", i, "displacement has no linear qubit gate"))
        for name in ("t", "dq", "dp"):
            v = getattr(g, name, 0.0)
            if not math.isfinite(v):
                out.append(Violation("NonFiniteParameter", i, f"{name}={v}"))
    return out


def expand_global(g: GbGate, M: int) -> list[GbGate]:
    """Rewrite a global bit-structured gate as the local gates it stands for."""
    n = max(M - 1, 0).bit_length()
    if isinstance(g, GLOBAL_GATES):
        bad = [k for k in g.cond.bits if k > n]
        if bad:
            raise ValueError(f"condition references bit {bad[0]} but n={n}")
    if isinstance(g, GlobalPhase):
        return [Phase(m, g.t) for m in g.cond.modes(M)]
    if isinstance(g, GlobalSqueeze):
        return [Squeeze(m, g.t, g.sign) for m in g.cond.modes(M)]
    if isinstance(g, GlobalBeamsplitter):
        if not 1 <= g.l <= n:
            raise ValueError(f"pairing bit l={g.l} not in 1..{n}")
        if g.l in g.cond.bits:
            raise ValueError(f"pairing bit {g.l} appears in condition")
        flip = 1 << (g.l - 1)
        return [
            Beamsplitter(m, ((m - 1) ^ flip) + 1, g.t)
            for m in g.cond.modes(M)
            if mode_bit(m, g.l) == 0
        ]
    return [g]


def generator_of(g: GbGate, M: int) -> GeneratorMatrix:
    """Time-independent ``K`` whose propagator ``exp(t Omega K)`` is the gate."""
    if isinstance(g, Displacement):
        raise DisplacementHasNoQuadraticGenerator("displacement is affine, not generated by a quadratic K")
    if isinstance(g, Phase):
        return phase_generator(g.m, M)
    if isinstance(g, Beamsplitter):
        return beamsplitter_generator(g.m, g.mp, M)
    if isinstance(g, Squeeze):
        return squeeze_generator(g.m, M, g.sign)
    locals_ = expand_global(g, M)
    K = np.zeros((2 * M, 2 * M))
    for loc in locals_:
        K += generator_of(loc, M).K
    kind = GeneratorKind.NON_PARTICLE_PRESERVING if isinstance(g, GlobalSqueeze) else GeneratorKind.PARTICLE_PRESERVING
    return GeneratorMatrix(K, kind)


def gate_time(g: GbGate) -> float:
    return getattr(g, "t", 0.0)


# -- text format -------------------------------------------------------------

_KEYWORDS = {
    "phase": (Phase, {"m": int, "t": float}),
    "bs": (Beamsplitter, {"m": int, "mp": int, "t": float}),
    "sq": (Squeeze, {"m": int, "t": float, "sign": _sign}),
    "gphase": (GlobalPhase, {"cond": BitCondition.parse, "t": float}),
    "gbs": (GlobalBeamsplitter, {"cond": BitCondition.parse, "l": int, "t": float}),
    "gsq": (GlobalSqueeze, {"cond": BitCondition.parse, "t": float, "sign": _sign}),
    "disp": (Displacement, {"m": int, "dq": float, "dp": float}),
}
_OPTIONAL = {"sign": 1}
_NAMES = {cls: kw for kw, (cls, _) in _KEYWORDS.items()}


def parse_keyvalues(tokens, lineno):
    out = {}
    for tok in tokens:
        key, eq, value = tok.partition("=")
        if not eq or not key:
            raise ParseError(lineno, f"expected key=value, got {tok!r}")
        if key in out:
            raise ParseError(lineno, f"duplicate key {key!r}")
        out[key] = value
    return out


def parse_gate_line(line: str, lineno: int = 0) -> GbGate:
    tokens = shlex.split(line, comments=True)
    kw, rest = tokens[0], tokens[1:]
    if kw not in _KEYWORDS:
        raise ParseError(lineno, f"unknown gate {kw!r}")
    cls, schema = _KEYWORDS[kw]
    kv = parse_keyvalues(rest, lineno)
    unknown = set(kv) - set(schema)
    if unknown:
        raise ParseError(lineno, f"unknown key(s) {sorted(unknown)} for {kw}")
    args = {}
    for key, conv in schema.items():
        if key not in kv:
            if key in _OPTIONAL:
                args[key] = _OPTIONAL[key]
                continue
            raise ParseError(lineno, f"{kw} is missing {key}=")
        try:
            args[key] = conv(kv[key])
        except ValueError as exc:
            raise ParseError(lineno, f"bad value for {key}: {exc}") from None
    try:
        return cls(**args)
    except ValueError as exc:
        raise ParseError(lineno, str(exc)) from None


def parse(text: str) -> GbCircuit:
    modes = None
    gates = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split()[0]
        if head == "modes":
            if modes is not None:
                raise ParseError(lineno, "modes declared twice")
            parts = line.split()
            if len(parts) != 2:
                raise ParseError(lineno, "expected 'modes <int>'")
            try:
                modes = int(parts[1])
            except ValueError:
                raise ParseError(lineno, f"bad mode count {parts[1]!r}") from None
            continue
        if modes is None:
            raise ParseError(lineno, "gate before 'modes' header")
        gates.append(parse_gate_line(line, lineno))
    if modes is None:
        raise ParseError(0, "missing 'modes' header")
    return GbCircuit(modes, tuple(gates))


def _fmt(x: float) -> str:
    return repr(float(x))


def format_gate(g: GbGate) -> str:
    kw = _NAMES[type(g)]
    if isinstance(g, Phase):
        body = f"m={g.m} t={_fmt(g.t)}"
    elif isinstance(g, Beamsplitter):
        body = f"m={g.m} mp={g.mp} t={_fmt(g.t)}"
    elif isinstance(g, Squeeze):
        body = f"m={g.m} t={_fmt(g.t)} sign={'+' if g.sign > 0 else '-'}"
    elif isinstance(g, GlobalPhase):
        body = f"cond={g.cond} t={_fmt(g.t)}"
    elif isinstance(g, GlobalBeamsplitter):
        body = f"cond={g.cond} l={g.l} t={_fmt(g.t)}"
    elif isinstance(g, GlobalSqueeze):
        body = f"cond={g.cond} t={_fmt(g.t)} sign={'+' if g.sign > 0 else '-'}"
    else:
        body = f"m={g.m} dq={_fmt(g.dq)} dp={_fmt(g.dp)}"
    return f"{kw} {body}"


def serialize(c: GbCircuit) -> str:
    lines = [f"modes {c.modes}"]
    lines += [format_gate(g) for g in c.gates]
    return "\n".join(lines) + "\n"
