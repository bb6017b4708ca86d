"""Gaussian bosonic circuits compiled to, and simulated as, real qubit circuits."""
from .errors import (
    CapacityError,
    CircuitValidationError,
    DisplacementUnsupported,
    GateCompileError,
    MixedGeneratorUnsupported,
    ParseError,
    SymplectiqError,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "CircuitValidationError",
    "DisplacementUnsupported",
    "GateCompileError",
    "MixedGeneratorUnsupported",
    "ParseError",
    "SymplectiqError",
    "__version__",
]
