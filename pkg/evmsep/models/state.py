"""
Defines bipartite quantum-state data structures.

Provides the dimension bookkeeping shared by every layer, normalized kets,
and the validated density-matrix container. Construction of a
:class:`DensityMatrix` with checked invariants goes through
:func:`evmsep.states.validate`; the dataclass itself only stores.
"""

import logging
from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt

from evmsep.models.errors import DimMismatchError, NormError

__all__ = ["ComplexMatrix", "BipartiteDims", "Ket", "DensityMatrix", "KET_RENORM_WARN"]

_LOGGER = logging.getLogger(__name__)

ComplexMatrix = npt.NDArray[np.complex128]

#: Norm deviation above which a ket is renormalized with a warning.
KET_RENORM_WARN = 1e-6


def _frozen(values: npt.ArrayLike) -> np.ndarray:
    arr = np.array(values, dtype=np.complex128)
    arr.flags.writeable = False
    return arr


@dataclass(slots=True, frozen=True)
class BipartiteDims:
    """
    Dimensions of the two subsystems.

    Flat basis ordering is |i⟩⊗|j⟩ ↦ i·d2 + j (0-based).

    :param d1: Dimension of the first subsystem.
    :param d2: Dimension of the second subsystem.
    """

    d1: int
    d2: int

    def __post_init__(self):
        if self.d1 < 2 or self.d2 < 2:
            raise DimMismatchError(f"subsystem dimensions must be >= 2, got ({self.d1}, {self.d2})")

    @property
    def size(self) -> int:
        """Dimension of the joint space, d1·d2."""
        return self.d1 * self.d2

    @property
    def is_square(self) -> bool:
        """True for d⊗d systems."""
        return self.d1 == self.d2

    def index(self, i: int, j: int) -> int:
        """
        Flat index of |i⟩⊗|j⟩.

        :param i: Basis label on subsystem 1.
        :param j: Basis label on subsystem 2.
        :return: 0-based flat index.
        """
        return i * self.d2 + j

    def digits(self, flat: int) -> tuple[int, int]:
        """
        Inverse of :meth:`index`.

        :param flat: 0-based flat index.
        :return: (i, j) mixed-radix digits.
        """
        return divmod(flat, self.d2)

    def dim(self, subsystem: int) -> int:
        """
        Dimension of subsystem 1 or 2.

        :param subsystem: 1 or 2.
        :return: d1 or d2.
        """
        if subsystem == 1:
            return self.d1
        if subsystem == 2:
            return self.d2
        raise DimMismatchError(f"subsystem must be 1 or 2, got {subsystem}")


@dataclass(slots=True, frozen=True, eq=False)
class Ket:
    """
    A normalized state vector.

    Amplitudes are normalized on construction. A deviation of the input norm
    from 1 larger than :data:`KET_RENORM_WARN` sets ``renormalized`` and logs a
    warning.

    :param amplitudes: Complex amplitudes in the flat basis.
    """

    amplitudes: np.ndarray
    renormalized: bool = field(default=False, init=False)

    def __post_init__(self):
        vec = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        norm = float(np.linalg.norm(vec))
        if norm == 0.0 or not np.isfinite(norm):
            raise NormError("cannot normalize a zero or non-finite vector")
        if abs(norm - 1.0) > KET_RENORM_WARN:
            _LOGGER.warning("Ket norm %.6g deviates from 1; renormalizing.", norm)
            object.__setattr__(self, "renormalized", True)
        object.__setattr__(self, "amplitudes", _frozen(vec / norm))

    @property
    def dim(self) -> int:
        """Number of amplitudes."""
        return self.amplitudes.shape[0]

    def projector(self) -> ComplexMatrix:
        """
        The rank-one projector |v⟩⟨v|.

        :return: dim × dim matrix.
        """
        return np.outer(self.amplitudes, self.amplitudes.conj())


@dataclass(slots=True, frozen=True, eq=False)
class DensityMatrix:
    """
    A validated bipartite density matrix.

    Obtain instances from :func:`evmsep.states.validate` or the other
    constructors in :mod:`evmsep.states`; they guarantee Hermiticity, unit
    trace and positive semidefiniteness within tolerance.

    :param dims: Subsystem dimensions.
    :param mat: Read-only (d1·d2) × (d1·d2) complex matrix.
    """

    dims: BipartiteDims
    mat: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "mat", _frozen(self.mat))
        n = self.dims.size
        if self.mat.shape != (n, n):
            raise DimMismatchError(f"matrix shape {self.mat.shape} does not match dims {self.dims} (expected {n}x{n})")

    def element(self, p: int, q: int) -> complex:
        """
        Matrix element with 1-based row/column indices.

        :param p: 1-based row.
        :param q: 1-based column.
        :return: ρ_{p,q}.
        """
        return complex(self.mat[p - 1, q - 1])

    def allclose(self, other: "DensityMatrix", atol: float = 1e-12) -> bool:
        """
        Entrywise comparison with another state of the same dims.

        :param other: State to compare against.
        :param atol: Absolute tolerance.
        :return: True if dims agree and every entry is within atol.
        """
        return self.dims == other.dims and bool(np.allclose(self.mat, other.mat, rtol=0.0, atol=atol))
