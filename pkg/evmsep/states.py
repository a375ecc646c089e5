"""
Constructs and validates bipartite density matrices.

Provides pure states from kets, convex mixtures, product states, the checked
:func:`validate` entry point and seeded random-state generators used by the
property tests and the separability soundness checks.
"""

import logging
from typing import Sequence

import numpy as np
import numpy.typing as npt

from evmsep.linalg import as_matrix, hermiticity_defect, kron, min_eigenvalue, trace
from evmsep.models.errors import DimMismatchError, NotHermitianError, NotPSDError, TraceNotOneError, WeightError
from evmsep.models.state import BipartiteDims, DensityMatrix, Ket

__all__ = [
    "DEFAULT_STATE_TOL",
    "WEIGHT_SUM_TOL",
    "pure_from_ket",
    "mix",
    "product_state",
    "validate",
    "check_single",
    "random_ket",
    "random_pure",
    "random_mixed",
    "random_product",
    "random_separable",
]

_LOGGER = logging.getLogger(__name__)

DEFAULT_STATE_TOL = 1e-9
WEIGHT_SUM_TOL = 1e-12


def check_single(mat: npt.ArrayLike, tol: float = DEFAULT_STATE_TOL) -> np.ndarray:
    """
    Checks Hermiticity, unit trace and positivity of any square matrix.

    Checks run in that order; the first failure raises.

    :param mat: Candidate state.
    :param tol: Absolute tolerance for all three checks.
    :return: The matrix as a read-only complex array.
    """
    arr = as_matrix(mat)
    defect = hermiticity_defect(arr)
    if defect > tol:
        raise NotHermitianError(defect, tol)
    deviation = abs(trace(arr) - 1.0)
    if deviation > tol:
        raise TraceNotOneError(deviation, tol, f"trace is {trace(arr).real:.12g}")
    lowest = min_eigenvalue(arr, tol)
    if lowest < -tol:
        raise NotPSDError(abs(lowest), tol, f"minimum eigenvalue {lowest:.6g}")
    _LOGGER.debug(
        "State checks passed: hermitian defect %.2e, trace deviation %.2e, min eig %.3e.", defect, deviation, lowest
    )
    return arr


def validate(mat: npt.ArrayLike, dims: BipartiteDims, tol: float = DEFAULT_STATE_TOL) -> DensityMatrix:
    """
    Builds a :class:`DensityMatrix` after checking every invariant.

    :param mat: (d1·d2) × (d1·d2) matrix.
    :param dims: Subsystem dimensions.
    :param tol: Absolute tolerance for Hermiticity, trace and PSD.
    :return: Validated state.
    """
    arr = as_matrix(mat)
    if arr.shape != (dims.size, dims.size):
        raise DimMismatchError(f"matrix shape {arr.shape} does not match dims ({dims.d1}, {dims.d2})")
    return DensityMatrix(dims, check_single(arr, tol))


def pure_from_ket(ket: Ket, dims: BipartiteDims) -> DensityMatrix:
    """
    The pure state |v⟩⟨v|.

    :param ket: Normalized amplitudes of length d1·d2.
    :param dims: Subsystem dimensions.
    :return: Rank-one density matrix.
    """
    if ket.dim != dims.size:
        raise DimMismatchError(f"ket of dimension {ket.dim} does not fit dims ({dims.d1}, {dims.d2})")
    return DensityMatrix(dims, ket.projector())


def mix(weights: Sequence[float], states: Sequence[DensityMatrix]) -> DensityMatrix:
    """
    Convex combination Σ w_i ρ_i.

    A convex combination of valid states is valid, so no eigenvalue check is repeated.

    :param weights: Strictly positive weights summing to one within 1e-12.
    :param states: States sharing the same dims.
    :return: Mixed state.
    """
    if len(weights) != len(states) or not states:
        raise WeightError(f"need one weight per state, got {len(weights)} weights for {len(states)} states")
    w = np.asarray(weights, dtype=float)
    if np.any(w <= 0):
        raise WeightError(f"weights must be strictly positive, got {list(weights)}")
    if abs(float(np.sum(w)) - 1.0) > WEIGHT_SUM_TOL:
        raise WeightError(f"weights sum to {float(np.sum(w)):.15g}, expected 1")
    dims = states[0].dims
    for state in states[1:]:
        if state.dims != dims:
            raise DimMismatchError(f"cannot mix states with dims {dims} and {state.dims}")
    total = sum(wi * state.mat for wi, state in zip(w, states))
    return DensityMatrix(dims, total)


def product_state(
    rho1: npt.ArrayLike, rho2: npt.ArrayLike, dims: BipartiteDims, tol: float = DEFAULT_STATE_TOL
) -> DensityMatrix:
    """
    The product ρ1 ⊗ ρ2.

    :param rho1: d1 × d1 single-system state.
    :param rho2: d2 × d2 single-system state.
    :param dims: Subsystem dimensions.
    :param tol: Tolerance for validating each factor.
    :return: Product density matrix.
    """
    first, second = as_matrix(rho1), as_matrix(rho2)
    if first.shape != (dims.d1, dims.d1) or second.shape != (dims.d2, dims.d2):
        raise DimMismatchError(
            f"factor shapes {first.shape} and {second.shape} do not match dims ({dims.d1}, {dims.d2})"
        )
    return DensityMatrix(dims, kron(check_single(first, tol), check_single(second, tol)))


def random_ket(dim: int, rng: np.random.Generator) -> Ket:
    """
    Haar-random normalized ket.

    :param dim: Number of amplitudes.
    :param rng: Seeded generator.
    :return: Ket (normalized before construction, so never flagged).
    """
    vec = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return Ket(vec / np.linalg.norm(vec))


def random_pure(dims: BipartiteDims, rng: np.random.Generator) -> DensityMatrix:
    """Haar-random pure state, generically entangled."""
    return pure_from_ket(random_ket(dims.size, rng), dims)


def random_mixed(dims: BipartiteDims, rng: np.random.Generator, rank: int | None = None) -> DensityMatrix:
    """
    Random mixed state G G† / Tr(G G†) from a complex Ginibre matrix.

    :param dims: Subsystem dimensions.
    :param rng: Seeded generator.
    :param rank: Columns of G; full rank by default.
    :return: Density matrix.
    """
    cols = rank or dims.size
    g = rng.normal(size=(dims.size, cols)) + 1j * rng.normal(size=(dims.size, cols))
    mat = g @ g.conj().T
    return DensityMatrix(dims, mat / np.trace(mat).real)


def random_product(dims: BipartiteDims, rng: np.random.Generator) -> DensityMatrix:
    """Pure product state |a⟩⟨a| ⊗ |b⟩⟨b| with Haar-random factors."""
    first = random_ket(dims.d1, rng)
    second = random_ket(dims.d2, rng)
    return DensityMatrix(dims, np.kron(first.projector(), second.projector()))


def random_separable(dims: BipartiteDims, rng: np.random.Generator, max_terms: int = 10) -> DensityMatrix:
    """
    Random mixture of up to ``max_terms`` random pure product states.

    :param dims: Subsystem dimensions.
    :param rng: Seeded generator.
    :param max_terms: Upper bound on the number of product terms.
    :return: Separable density matrix.
    """
    terms = int(rng.integers(1, max_terms + 1))
    weights = rng.dirichlet(np.ones(terms))
    weights = weights / weights.sum()
    return mix(list(weights), [random_product(dims, rng) for _ in range(terms)])
