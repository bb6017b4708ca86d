"""Sparse Pauli-string algebra on ``n + 1`` qubits.

Letters are written in tensor order: ``letters[0]`` is the symplectic qubit
(the most significant index bit of a phase-space vector), followed by the
register qubits from most to least significant. A string with an even number
of ``Y`` letters is a real symmetric matrix, one with an odd number is
imaginary antisymmetric; multiplying the latter by ``i`` makes it real. Sums
keep every key in that real-normalised phase so real matrices carry real
coefficients.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import reduce

import numpy as np

DROP_TOL = 1e-12
MAX_DENSE_QUBITS = 7  # n <= 6 register qubits plus the symplectic one

_PHASES = (1, 1j, -1, -1j)

# (a, b) -> (phase, letter) for the single-qubit product a @ b
_TABLE = {}
for _a in "IXYZ":
    _TABLE["I", _a] = (1, _a)
    _TABLE[_a, "I"] = (1, _a)
    _TABLE[_a, _a] = (1, "I")
for _a, _b, _c in (("X", "Y", "Z"), ("Y", "Z", "X"), ("Z", "X", "Y")):
    _TABLE[_a, _b] = (1j, _c)
    _TABLE[_b, _a] = (-1j, _c)

_MATS = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def _snap_phase(p: complex) -> complex:
    for q in _PHASES:
        if abs(p - q) < 1e-9:
            return q
    raise ValueError(f"{p!r} is not a unit Pauli phase")


def real_phase(letters: str) -> complex:
    """Phase that makes the bare string a real matrix."""
    return 1j if letters.count("Y") % 2 else 1


@dataclass(frozen=True, order=False)
class PauliString:
    letters: str
    phase: complex = 1

    def __post_init__(self):
        if not self.letters or set(self.letters) - set("IXYZ"):
            raise ValueError(f"bad Pauli letters {self.letters!r}")
        object.__setattr__(self, "phase", _snap_phase(complex(self.phase)))

    @property
    def n_qubits(self) -> int:
        return len(self.letters)

    @property
    def y_count(self) -> int:
        return self.letters.count("Y")

    @property
    def is_symmetric(self) -> bool:
        """Whether the bare (unphased) string is a symmetric matrix."""
        return self.y_count % 2 == 0

    def canonical(self) -> tuple["PauliString", complex]:
        """Return ``(key, c)`` with ``self == c * key`` and ``key`` real-phased."""
        rp = real_phase(self.letters)
        return PauliString(self.letters, rp), self.phase / rp

    def __matmul__(self, other: "PauliString") -> "PauliString":
        return multiply(self, other)

    def to_matrix(self) -> np.ndarray:
        if self.n_qubits > MAX_DENSE_QUBITS:
            raise ValueError(f"dense realisation capped at {MAX_DENSE_QUBITS} qubits")
        mat = reduce(np.kron, (_MATS[c] for c in self.letters))
        return self.phase * mat

    def __str__(self):
        sign = {1: "", -1: "-", 1j: "i", -1j: "-i"}[self.phase]
        return sign + self.letters


def multiply(a: PauliString, b: PauliString) -> PauliString:
    if a.n_qubits != b.n_qubits:
        raise ValueError("Pauli strings act on different qubit counts")
    phase = a.phase * b.phase
    out = []
    for x, y in zip(a.letters, b.letters):
        p, c = _TABLE[x, y]
        phase *= p
        out.append(c)
    return PauliString("".join(out), phase)


class PauliSum:
    """Linear combination of real-phased Pauli strings."""

    def __init__(self, terms=None, n_qubits: int | None = None):
        self._terms: dict[str, complex] = {}
        self.n_qubits = n_qubits
        if terms is None:
            return
        items = terms.items() if isinstance(terms, dict) else terms
        for key, coeff in items:
            if isinstance(key, str):
                key = PauliString(key, real_phase(key))
            self._accumulate(key, coeff)
        self._prune()

    def _accumulate(self, p: PauliString, coeff):
        if self.n_qubits is None:
            self.n_qubits = p.n_qubits
        elif p.n_qubits != self.n_qubits:
            raise ValueError("mixed qubit counts in PauliSum")
        key, c = p.canonical()
        self._terms[key.letters] = self._terms.get(key.letters, 0) + c * coeff

    def _prune(self):
        self._terms = {
            k: (v.real if abs(v.imag) <= DROP_TOL else v)
            for k, v in sorted(self._terms.items())
            if abs(v) > DROP_TOL
        }

    @classmethod
    def from_string(cls, p: PauliString, coeff=1.0) -> "PauliSum":
        return cls([(p, coeff)])

    def terms(self):
        """``(PauliString, coefficient)`` pairs in canonical key order."""
        for letters, c in self._terms.items():
            yield PauliString(letters, real_phase(letters)), c

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __iter__(self):
        return self.terms()

    def __eq__(self, other):
        if not isinstance(other, PauliSum):
            return NotImplemented
        return not (self - other)

    def coefficient(self, letters: str):
        return self._terms.get(letters, 0.0)

    @property
    def is_real(self) -> bool:
        return all(isinstance(c, float) for c in self._terms.values())

    def __add__(self, other: "PauliSum") -> "PauliSum":
        out = PauliSum(n_qubits=self.n_qubits or other.n_qubits)
        for p, c in itertools.chain(self.terms(), other.terms()):
            out._accumulate(p, c)
        out._prune()
        return out

    def __neg__(self):
        return self * -1.0

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar) -> "PauliSum":
        out = PauliSum(n_qubits=self.n_qubits)
        for p, c in self.terms():
            out._accumulate(p, c * scalar)
        out._prune()
        return out

    __rmul__ = __mul__

    def __matmul__(self, other: "PauliSum") -> "PauliSum":
        out = PauliSum(n_qubits=self.n_qubits or other.n_qubits)
        for (p, a), (q, b) in itertools.product(self.terms(), other.terms()):
            out._accumulate(multiply(p, q), a * b)
        out._prune()
        return out

    def to_matrix(self) -> np.ndarray:
        if not self._terms:
            if self.n_qubits is None:
                raise ValueError("empty PauliSum without a qubit count")
            dim = 2**self.n_qubits
            return np.zeros((dim, dim))
        mat = sum(c * p.to_matrix() for p, c in self.terms())
        if np.allclose(mat.imag, 0, atol=DROP_TOL):
            return mat.real
        return mat

    @classmethod
    def from_matrix(cls, A) -> "PauliSum":
        return decompose(A)

    def __repr__(self):
        body = " + ".join(f"{c:+.6g}*{p}" for p, c in self.terms()) or "0"
        return f"PauliSum({body})"


def commutator(a: PauliSum, b: PauliSum) -> PauliSum:
    return (a @ b) - (b @ a)


def _fwht_rows(v: np.ndarray) -> np.ndarray:
    """Unnormalised Walsh-Hadamard transform along the last axis."""
    rows, dim = v.shape
    h = 1
    while h < dim:
        v = v.reshape(rows, -1, 2, h)
        v = np.stack((v[:, :, 0] + v[:, :, 1], v[:, :, 0] - v[:, :, 1]), axis=2)
        h *= 2
    return v.reshape(rows, dim)


def decompose(A) -> PauliSum:
    """Pauli decomposition of a ``2^k x 2^k`` matrix in ``O(D^2 log D)``."""
    A = np.asarray(A)
    dim = A.shape[0]
    nq = dim.bit_length() - 1
    if A.shape != (dim, dim) or 2**nq != dim:
        raise ValueError(f"expected a square power-of-two matrix, got {A.shape}")
    if nq > MAX_DENSE_QUBITS:
        raise ValueError(f"decomposition capped at {MAX_DENSE_QUBITS} qubits")
    r = np.arange(dim)
    # V[x, r] = A[r ^ x, r]; the transform over r then yields sum_r (-1)^{z.r} V[x, r]
    V = A[r[None, :] ^ r[:, None], r[None, :]].astype(complex)
    W = _fwht_rows(V) / dim
    out = PauliSum(n_qubits=nq)
    xs, zs = np.nonzero(np.abs(W) > DROP_TOL)
    for x, z in zip(xs, zs):
        letters = []
        ny = 0
        for j in range(nq):
            bit = nq - 1 - j
            xb, zb = (x >> bit) & 1, (z >> bit) & 1
            letters.append("IXZY"[xb + 2 * zb])
            ny += xb & zb
        # P = i^ny X^x Z^z, so coef(P) = conj(i^ny) * tr((X^x Z^z)^dag A) / dim
        out._accumulate(PauliString("".join(letters)), (-1j) ** ny * W[x, z])
    out._prune()
    return out


def hs_inner(a: PauliString, b: PauliString) -> complex:
    """Hilbert-Schmidt inner product ``tr(a^dag b)``, without dense matrices."""
    if a.letters != b.letters:
        return 0.0
    return np.conj(a.phase) * b.phase * 2**a.n_qubits


def _strings(n: int, symmetric: bool):
    for letters in itertools.product("IXYZ", repeat=n):
        s = "".join(letters)
        if (s.count("Y") % 2 == 0) == symmetric:
            yield s


def sp_basis(n: int) -> list[PauliString]:
    """Pauli basis of the symplectic algebra on ``M = 2^n`` modes.

    ``i Y(x)P_s``, ``i I(x)P_a``, ``X(x)P_s`` and ``Z(x)P_s`` with ``P_s``
    (``P_a``) running over symmetric (antisymmetric) strings on ``n`` qubits.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if n > 6:
        raise ValueError("sp_basis is capped at n <= 6")
    sym = list(_strings(n, True)) if n else [""]
    anti = list(_strings(n, False))
    basis = [PauliString("Y" + s, 1j) for s in sym]
    basis += [PauliString("I" + s, 1j) for s in anti]
    basis += [PauliString("X" + s) for s in sym]
    basis += [PauliString("Z" + s) for s in sym]
    return basis


def in_sp_basis(p: PauliString) -> bool:
    head, tail = p.letters[0], p.letters[1:]
    tail_sym = tail.count("Y") % 2 == 0
    if head in "XYZ":
        return tail_sym
    return not tail_sym


class TimeEvolutionKind(enum.Enum):
    REAL_TIME = "RealTime"
    IMAGINARY_TIME = "ImaginaryTime"
    MIXED = "Mixed"


def classify_pauli_generator(omega_k: PauliSum) -> TimeEvolutionKind:
    """Real time iff ``Omega K`` only has ``iY(x)P_s`` / ``iI(x)P_a`` terms,
    imaginary time iff only ``X(x)P_s`` / ``Z(x)P_s`` terms."""
    real = imag = True
    for p, _ in omega_k.terms():
        head, tail_sym = p.letters[0], p.letters[1:].count("Y") % 2 == 0
        if not ((head == "Y" and tail_sym) or (head == "I" and not tail_sym)):
            real = False
        if not (head in "XZ" and tail_sym):
            imag = False
    if real:
        return TimeEvolutionKind.REAL_TIME
    if imag:
        return TimeEvolutionKind.IMAGINARY_TIME
    return TimeEvolutionKind.MIXED


def omega_sum(n: int) -> PauliSum:
    """``Omega = iY (x) I`` as a Pauli sum on ``n + 1`` qubits."""
    return PauliSum.from_string(PauliString("Y" + "I" * n, 1j))
