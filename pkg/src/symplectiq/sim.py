"""Real-amplitude state-vector simulator for compiled circuits.

A moment vector ``z`` is stored as ``scale * amplitudes`` with unit-norm
amplitudes laid out as described in :mod:`symplectiq.compiler`. Heralded
squeeze blocks extend the vector by the two ancillas (the high index bits),
project back onto ``|00>`` and fold the kept norm into ``scale`` and
``success_log``.
"""
from __future__ import annotations

import csv
import math
import struct
from dataclasses import dataclass, field

import numpy as np

from . import compiler as C
from .errors import (
    CapacityError,
    MixedGeneratorUnsupported,
    SuccessProbabilityZero,
    ZeroVector,
)
from .kernels import controlled_2x2, controlled_diag, select_reflect, two_bit_4x4
from .symplectic import GeneratorKind

DEFAULT_CAPACITY = 27
MAX_CAPACITY = 30
P_FLOOR = 1e-300

SNAPSHOT_MAGIC = b"SQST"
_HEADER = struct.Struct("<4sId")  # magic, n, scale: 16 bytes


def check_capacity(qubits: int, limit: int = DEFAULT_CAPACITY) -> None:
    if limit > MAX_CAPACITY:
        raise ValueError(f"capacity limit must be <= {MAX_CAPACITY}")
    if qubits > limit:
        raise CapacityError(qubits, limit)


@dataclass
class ScaledState:
    amplitudes: np.ndarray
    scale: float
    n: int
    success_log: float = 0.0
    _ext: np.ndarray | None = field(default=None, repr=False)
    _gamma: float = field(default=1.0, repr=False)

    @property
    def modes(self) -> int:
        return 2**self.n

    @property
    def in_block(self) -> bool:
        return self._ext is not None

    def norm(self) -> float:
        return float(math.sqrt(np.dot(self.amplitudes, self.amplitudes)))

    def copy(self) -> "ScaledState":
        if self.in_block:
            raise RuntimeError("cannot copy a state inside an ancilla block")
        return ScaledState(self.amplitudes.copy(), self.scale, self.n, self.success_log)

    def renormalize(self) -> None:
        nrm = self.norm()
        if nrm == 0.0:
            raise ZeroVector("state vanished")
        self.amplitudes /= nrm
        self.scale *= nrm


def encode_mean(z, capacity: int = DEFAULT_CAPACITY) -> ScaledState:
    """Normalise ``z = (q, p)`` into an ``n + 1`` qubit amplitude vector."""
    z = np.asarray(z, dtype=float).reshape(-1)
    M = z.size // 2
    if z.size % 2 or M < 1 or M & (M - 1):
        raise ValueError(f"need 2M entries with M a power of two, got {z.size}")
    n = M.bit_length() - 1
    check_capacity(n + 1, capacity)
    nrm = float(np.linalg.norm(z))
    if nrm == 0.0:
        raise ZeroVector("cannot encode the zero moment vector")
    if not math.isfinite(nrm):
        raise ValueError("moment vector has non-finite entries")
    return ScaledState(z / nrm, nrm, n)


def basis_state(n: int, x: float = 1.0, capacity: int = DEFAULT_CAPACITY) -> ScaledState:
    """``z = (x, 0, ..., 0)`` without materialising it twice."""
    check_capacity(n + 1, capacity)
    amps = np.zeros(2 ** (n + 1))
    amps[0] = 1.0
    return ScaledState(amps, float(x), n)


def decode_mean(s: ScaledState) -> np.ndarray:
    if s.in_block:
        raise RuntimeError("state is inside an ancilla block")
    return s.scale * s.amplitudes


def _masks(controls, n):
    cmask = cval = 0
    for q, v in controls:
        b = C.bit_position(q, n)
        cmask |= 1 << b
        cval |= v << b
    return cmask, cval


def _check_qubits(g, n, top, index=None):
    for q in C.gate_qubits(g):
        if not 0 <= q <= top:
            where = f"gate {index}: " if index is not None else ""
            raise ValueError(f"{where}qubit {q} out of range 0..{top}")


_REAL_SINGLE = {"x", "z", "ry"}


def apply_gate(s: ScaledState, g) -> ScaledState:
    """Apply one gate in place and return ``s``."""
    n = s.n
    if isinstance(g, C.AnsatzPrep) and not g.inverse:
        if s.in_block:
            raise ValueError("nested ancilla block")
        N = s.amplitudes.size
        ext = np.zeros(4 * N)
        ext[:N] = s.amplitudes
        two_bit_4x4(ext, n + 1, n + 2, g.matrix())
        s._ext = ext
        a, b, _, _ = g.weights
        s._gamma = a + b
        return s
    if isinstance(g, C.Postselect):
        if not s.in_block:
            raise ValueError("postselect outside an ancilla block")
        N = s.amplitudes.size
        kept = s._ext[:N]
        p = float(np.dot(kept, kept))
        s._ext = None
        if p < P_FLOOR:
            raise SuccessProbabilityZero(f"post-selection probability {p:g}")
        s.amplitudes = kept / math.sqrt(p)
        s.scale *= math.sqrt(p) / s._gamma
        s.success_log += math.log(p)
        s._gamma = 1.0
        return s

    psi = s._ext if s.in_block else s.amplitudes
    _check_qubits(g, n, n + 2 if s.in_block else n)
    if isinstance(g, C.AnsatzPrep):
        if not s.in_block:
            raise ValueError("unprep outside an ancilla block")
        two_bit_4x4(psi, n + 1, n + 2, g.matrix())
    elif isinstance(g, (C.Ry, C.MultiControlledRy)):
        controls = getattr(g, "controls", ())
        cmask, cval = _masks(controls, n)
        c, sn = math.cos(g.theta / 2), math.sin(g.theta / 2)
        controlled_2x2(psi, C.bit_position(g.target, n), cmask, cval, c, -sn, sn, c)
    elif isinstance(g, (C.X, C.MultiControlledX)):
        cmask, cval = _masks(getattr(g, "controls", ()), n)
        controlled_2x2(psi, C.bit_position(g.target, n), cmask, cval, 0.0, 1.0, 1.0, 0.0)
    elif isinstance(g, C.SelectZ):
        cmask, cval = _masks(g.controls, n)
        controlled_diag(psi, cmask, cval, C.bit_position(g.target, n), float(g.sign), float(-g.sign))
    elif isinstance(g, C.SelectReflect):
        emask, evalue = _masks(g.enable, n)
        pmask, pval = _masks(g.pattern, n)
        select_reflect(psi, emask, evalue, pmask, pval)
    elif isinstance(g, C.ExactSqueeze):
        if s.in_block:
            raise ValueError("exact squeeze inside an ancilla block")
        cmask, cval = _masks(g.controls, n)
        f = 2.0 * g.sign * g.t
        controlled_diag(psi, cmask, cval, n, math.exp(f), math.exp(-f))
        s.renormalize()
    elif isinstance(g, C.SingleQubit):
        if g.name not in _REAL_SINGLE:
            raise ValueError(f"complex gate {g.name!r} has no real-amplitude kernel")
        U = C.single_qubit_matrix(g.name, g.param).real
        controlled_2x2(psi, C.bit_position(g.target, n), 0, 0, U[0, 0], U[0, 1], U[1, 0], U[1, 1])
    else:
        raise TypeError(f"unsupported gate {g!r}")
    return s


def apply_squeeze_exact(s: ScaledState, m: int, t: float, sign: int = 1) -> ScaledState:
    return apply_gate(s, C.ExactSqueeze(C.mode_controls(m, s.n), t, sign))


def apply_lcu_block(s: ScaledState, block) -> ScaledState:
    block = list(block)
    if not block or not isinstance(block[0], C.AnsatzPrep) or not isinstance(block[-1], C.Postselect):
        raise ValueError("an LCU block runs from prep to postselect")
    for g in block:
        apply_gate(s, g)
    return s


@dataclass
class Trajectory:
    rows: list = field(default_factory=list)  # (step, gate_index, overlap)

    def record(self, gate_index: int, overlap: float) -> None:
        self.rows.append((len(self.rows), gate_index, float(overlap)))

    @property
    def overlaps(self) -> list[float]:
        return [r[2] for r in self.rows]

    def write_csv(self, path_or_file) -> None:
        own = isinstance(path_or_file, (str, bytes)) or hasattr(path_or_file, "__fspath__")
        fh = open(path_or_file, "w", newline="") if own else path_or_file
        try:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["step", "gate_index", "overlap"])
            for step, gi, ov in self.rows:
                w.writerow([step, gi, f"{ov:.17g}"])
        finally:
            if own:
                fh.close()


def run(
    qc: C.QubitCircuit,
    s0: ScaledState,
    trace_every: int | None = None,
    capacity: int = DEFAULT_CAPACITY,
    in_place: bool = False,
) -> tuple[ScaledState, Trajectory]:
    """Apply ``qc`` to ``s0``. The trajectory holds the signed amplitude at
    index 0 initially, every ``trace_every`` gates (outside ancilla blocks)
    and after the last gate."""
    if qc.n != s0.n:
        raise ValueError(f"circuit has n={qc.n}, state has n={s0.n}")
    check_capacity(qc.qubits, capacity)
    s = s0 if in_place else s0.copy()
    traj = Trajectory()
    traj.record(0, s.amplitudes[0])
    last = 0
    for i, g in enumerate(qc.gates):
        try:
            apply_gate(s, g)
        except (ValueError, TypeError) as exc:
            raise type(exc)(f"gate {i}: {exc}") from exc
        done = i + 1
        if trace_every and done % trace_every == 0 and not s.in_block:
            traj.record(done, s.amplitudes[0])
            last = done
    if qc.gates and last != len(qc.gates):
        traj.record(len(qc.gates), s.amplitudes[0])
    return s, traj


def apply_linear(qc: C.QubitCircuit, v) -> np.ndarray:
    """The linear map a circuit induces on moment vectors, applied to ``v``."""
    v = np.asarray(v, dtype=float)
    if not np.any(v):
        return np.zeros_like(v)
    s, _ = run(qc, encode_mean(v), in_place=True)
    return decode_mean(s)


@dataclass
class SigmaState:
    matrix: np.ndarray
    trace_scale: float = 0.0

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2:
            raise ValueError("sigma must be 2M x 2M")
        if not np.allclose(m, m.T, atol=1e-10):
            raise ValueError("sigma must be symmetric")
        self.matrix = m
        self.trace_scale = float(np.trace(m))

    @classmethod
    def coherent(cls, M: int) -> "SigmaState":
        return cls(np.eye(2 * M) / 2)

    @property
    def density(self) -> np.ndarray:
        """Unit-trace matrix proportional to sigma."""
        return self.matrix / self.trace_scale


def circuit_kind(qc: C.QubitCircuit) -> GeneratorKind:
    """Generator class of a compiled circuit, read off its gate types."""
    squeeze = any(isinstance(g, (C.ExactSqueeze, C.AnsatzPrep)) for g in qc.gates)
    rotate = any(
        isinstance(g, (C.Ry, C.MultiControlledRy)) and g.theta != 0.0 for g in qc.gates
    )
    if squeeze and rotate:
        return GeneratorKind.MIXED
    if squeeze:
        return GeneratorKind.NON_PARTICLE_PRESERVING
    return GeneratorKind.PARTICLE_PRESERVING


def evolve_sigma(qc: C.QubitCircuit, sigma0: SigmaState, kind: GeneratorKind | None = None) -> SigmaState:
    """``Q sigma Q^T`` by running the circuit on every column, then every row."""
    kind = circuit_kind(qc) if kind is None else kind
    if kind is GeneratorKind.MIXED:
        raise MixedGeneratorUnsupported("covariance evolution needs a single generator class")
    sig = sigma0.matrix
    if sig.shape[0] != 2 ** (qc.n + 1):
        raise ValueError("sigma size does not match the circuit")
    left = np.column_stack([apply_linear(qc, col) for col in sig.T])
    out = np.column_stack([apply_linear(qc, row) for row in left])
    out = 0.5 * (out + out.T)
    return SigmaState(out)


def save_snapshot(s: ScaledState, path) -> None:
    """16-byte header (``SQST``, uint32 n, f64 scale) then little-endian f64 amplitudes."""
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(SNAPSHOT_MAGIC, s.n, s.scale))
        fh.write(np.ascontiguousarray(s.amplitudes, dtype="<f8").tobytes())


def load_snapshot(path) -> ScaledState:
    with open(path, "rb") as fh:
        head = fh.read(_HEADER.size)
        if len(head) != _HEADER.size:
            raise ValueError("truncated snapshot header")
        magic, n, scale = _HEADER.unpack(head)
        if magic != SNAPSHOT_MAGIC:
            raise ValueError("not a state snapshot")
        amps = np.frombuffer(fh.read(), dtype="<f8").astype(float)
    if amps.size != 2 ** (n + 1):
        raise ValueError(f"snapshot holds {amps.size} amplitudes, expected {2 ** (n + 1)}")
    return ScaledState(amps, scale, n)
