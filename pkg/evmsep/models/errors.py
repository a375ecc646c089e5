"""
Defines the exception hierarchy for state construction and analysis.

Every failure raised by the library derives from :class:`EvmsepError` and from
the closest builtin, so callers may catch either.
"""

from enum import Enum, auto
from pathlib import Path

__all__ = [
    "EvmsepError",
    "ViolationType",
    "StateValidationError",
    "NotHermitianError",
    "TraceNotOneError",
    "NotPSDError",
    "NonSquareError",
    "DimMismatchError",
    "IndexOutOfRangeError",
    "WeightError",
    "NormError",
    "NotPureError",
    "NotSquareBipartiteError",
    "DomainError",
    "ConvergenceError",
    "StateFileError",
]


class EvmsepError(Exception):
    """Root of all library errors."""

    @property
    def code(self) -> str:
        """
        Short upper-case tag used in CLI error lines.

        :return: Tag such as ``DOMAIN_ERROR``.
        """
        name = type(self).__name__.removesuffix("Error")
        return "".join(f"_{c}" if c.isupper() and i else c for i, c in enumerate(name)).upper() + "_ERROR"


class ViolationType(Enum):
    """
    Enumeration of density-matrix invariants.

    NOT_HERMITIAN: ‖M − M†‖_max exceeds the tolerance.
    TRACE_NOT_ONE: |Tr M − 1| exceeds the tolerance.
    NOT_PSD: smallest eigenvalue is below −tolerance.
    """

    NOT_HERMITIAN = auto()
    TRACE_NOT_ONE = auto()
    NOT_PSD = auto()


class StateValidationError(EvmsepError, ValueError):
    """
    A matrix failed one of the density-matrix invariants.

    :param violation: Which invariant failed.
    :param magnitude: Size of the defect (max-norm, trace deviation or eigenvalue).
    :param tol: Tolerance the magnitude was compared against.
    """

    violation: ViolationType = ViolationType.NOT_PSD

    def __init__(self, magnitude: float, tol: float, detail: str = ""):
        self.magnitude = magnitude
        self.tol = tol
        message = f"{self.violation.name}: magnitude {magnitude:.3e} (tolerance {tol:.1e})"
        super().__init__(f"{message}; {detail}" if detail else message)

    @property
    def code(self) -> str:
        return self.violation.name


class NotHermitianError(StateValidationError):
    """Raised when ‖M − M†‖_max > tol."""

    violation = ViolationType.NOT_HERMITIAN


class TraceNotOneError(StateValidationError):
    """Raised when |Tr M − 1| > tol."""

    violation = ViolationType.TRACE_NOT_ONE


class NotPSDError(StateValidationError):
    """Raised when the minimum eigenvalue is below −tol."""

    violation = ViolationType.NOT_PSD


class NonSquareError(EvmsepError, ValueError):
    """An operation that needs a square matrix received a rectangular one."""


class DimMismatchError(EvmsepError, ValueError):
    """Operands disagree on bipartite or matrix dimensions."""


class IndexOutOfRangeError(EvmsepError, IndexError):
    """A basis label falls outside its subsystem dimension."""


class WeightError(EvmsepError, ValueError):
    """Mixture weights are non-positive or do not sum to one."""


class NormError(EvmsepError, ValueError):
    """Amplitudes cannot be normalized (zero vector) or violate the required norm."""


class NotPureError(EvmsepError, ValueError):
    """A pure-state-only check received a mixed state."""


class NotSquareBipartiteError(EvmsepError, ValueError):
    """A d⊗d criterion received a state with d1 ≠ d2."""


class DomainError(EvmsepError, ValueError):
    """A family parameter lies outside its admissible range."""


class ConvergenceError(EvmsepError, ArithmeticError):
    """The Jacobi eigensolver exhausted its sweep budget."""


class StateFileError(EvmsepError, ValueError):
    """
    A state or EVM file could not be parsed.

    :param path: File that failed to parse.
    """

    def __init__(self, path: str | Path, message: str):
        self.path = Path(path)
        super().__init__(f"{self.path}: {message}")
