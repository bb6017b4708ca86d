"""Exception types shared across the package."""


class SymplectiqError(Exception):
    """Base class for all package errors."""


class NonHermitianInput(SymplectiqError, ValueError):
    pass


class NonSymmetricInput(SymplectiqError, ValueError):
    pass


class MixedGeneratorUnsupported(SymplectiqError, ValueError):
    """Covariance evolution requested for a generator that is neither
    particle preserving nor purely non-particle preserving."""


class DisplacementUnsupported(SymplectiqError, ValueError):
    """Displacement is affine in the moments and has no linear qubit gate.

    Adding a constant to an amplitude cannot be done by a gate acting on a
    single copy of the encoded state, so every consumer rejects it.
    """


class DisplacementHasNoQuadraticGenerator(DisplacementUnsupported):
    pass


class CircuitValidationError(SymplectiqError, ValueError):
    """Raised with the full list of violations found in a circuit."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class ParseError(SymplectiqError, ValueError):
    def __init__(self, lineno: int, reason: str):
        self.lineno = lineno
        self.reason = reason
        super().__init__(f"line {lineno}: {reason}")


class GateCompileError(SymplectiqError, ValueError):
    """Wraps a per-gate failure with the index of the offending gate."""

    def __init__(self, index: int, cause: Exception):
        self.index = index
        self.cause = cause
        super().__init__(f"gate {index}: {cause}")


class LcuRangeError(SymplectiqError, ValueError):
    pass


class CapacityError(SymplectiqError, MemoryError):
    def __init__(self, qubits: int, limit: int):
        self.qubits = qubits
        self.limit = limit
        gib = 8 * 2**qubits / 2**30
        super().__init__(
            f"{qubits} qubits exceeds the capacity limit of {limit} "
            f"(dense state would need {gib:.3g} GiB); reduce n or raise --capacity"
        )


class SuccessProbabilityZero(SymplectiqError, ArithmeticError):
    pass


class ZeroVector(SymplectiqError, ValueError):
    pass
