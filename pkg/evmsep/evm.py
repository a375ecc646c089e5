"""
Expectation-value representation of bipartite states.

Every density-matrix entry ρ[r, c] is the expectation value of one operator
word built from the non-Hermitian transition operators A_k^i = |0⟩_k⟨i|.
This module evaluates those words, assembles the expectation value matrix,
inverts it back to ρ and reads reduced states off single-subsystem words.
"""

import logging
from functools import lru_cache

import numpy as np

from evmsep.linalg import as_matrix
from evmsep.models.errors import DimMismatchError
from evmsep.models.operators import ExpectationValueMatrix, OperatorWord
from evmsep.models.state import BipartiteDims, ComplexMatrix, DensityMatrix
from evmsep.states import DEFAULT_STATE_TOL, validate

__all__ = ["op_matrix", "expect", "entry_words", "evm_labels", "build_evm", "evm_to_density", "reduced_state"]

_LOGGER = logging.getLogger(__name__)


def _subsystem_matrix(word: OperatorWord, subsystem: int, dim: int) -> np.ndarray:
    mat = np.eye(dim, dtype=np.complex128)
    for factor in word.on(subsystem):
        mat = mat @ factor.matrix()
    return mat


def op_matrix(word: OperatorWord, dims: BipartiteDims) -> ComplexMatrix:
    """
    Dense matrix of an operator word on the joint space.

    Factors are multiplied in order within each subsystem, and the two
    subsystem products are Kronecker-combined. A subsystem without factors
    contributes the identity.

    :param word: Operator word.
    :param dims: System dimensions.
    :return: (d1·d2) × (d1·d2) matrix.
    """
    word.validate_dims(dims)
    return as_matrix(np.kron(_subsystem_matrix(word, 1, dims.d1), _subsystem_matrix(word, 2, dims.d2)))


def expect(rho: DensityMatrix, word: OperatorWord) -> complex:
    """
    Expectation value ⟨W⟩ = Tr(ρ W).

    :param rho: State.
    :param word: Operator word built for ``rho.dims``.
    :return: Complex expectation value.
    """
    try:
        word.validate_dims(rho.dims)
    except DimMismatchError as exc:
        raise DimMismatchError(f"word {word.label} does not act on dims ({rho.dims.d1}, {rho.dims.d2}): {exc}") from exc
    return complex(np.einsum("ij,ji->", rho.mat, op_matrix(word, rho.dims)))


@lru_cache(maxsize=32)
def entry_words(dims: BipartiteDims) -> tuple[tuple[OperatorWord, ...], ...]:
    """
    Words whose expectations fill each position of the matrix.

    :param dims: System dimensions.
    :return: Table of words indexed like ρ.
    """
    n = dims.size
    return tuple(tuple(OperatorWord.for_entry(r, c, dims) for c in range(n)) for r in range(n))


def evm_labels(dims: BipartiteDims) -> tuple[tuple[str, ...], ...]:
    """Canonical label table for the given dims."""
    return tuple(tuple(word.label for word in row) for row in entry_words(dims))


def build_evm(rho: DensityMatrix) -> ExpectationValueMatrix:
    """
    Assembles the expectation value matrix of a state.

    :param rho: Valid state.
    :return: Matrix whose (r, c) entry is the expectation of the word at (r, c).
    """
    words = entry_words(rho.dims)
    n = rho.dims.size
    entries = np.empty((n, n), dtype=np.complex128)
    for r in range(n):
        for c in range(n):
            entries[r, c] = expect(rho, words[r][c])
    return ExpectationValueMatrix(rho.dims, entries, evm_labels(rho.dims))


def evm_to_density(evm: ExpectationValueMatrix, tol: float = DEFAULT_STATE_TOL) -> DensityMatrix:
    """
    Rebuilds ρ = Σ ⟨W_rc⟩ W_rc† from an expectation value matrix.

    The result is validated, so hand-edited matrices that break Hermiticity,
    trace or positivity are rejected.

    :param evm: Expectation value matrix.
    :param tol: Validation tolerance.
    :return: Validated state.
    """
    dims = evm.dims
    words = entry_words(dims)
    n = dims.size
    mat = np.zeros((n, n), dtype=np.complex128)
    for r in range(n):
        for c in range(n):
            value = evm.entries[r, c]
            if value != 0:
                mat += value * op_matrix(words[r][c].dagger(), dims)
    return validate(mat, dims, tol)


def reduced_state(rho: DensityMatrix, keep: int) -> ComplexMatrix:
    """
    Reduced state of one subsystem from single-subsystem expectation values.

    Entry (i, j) is the expectation of |j⟩⟨i| on ``keep`` with the identity on
    the other subsystem, so no partial trace is taken.

    :param rho: State.
    :param keep: Subsystem to keep, 1 or 2.
    :return: d_keep × d_keep matrix.
    """
    dim = rho.dims.dim(keep)
    out = np.empty((dim, dim), dtype=np.complex128)
    for i in range(dim):
        for j in range(dim):
            out[i, j] = expect(rho, OperatorWord.for_units(rho.dims, (keep, j, i)))
    return as_matrix(out)
