"""
Entanglement detection criteria.

Covers purity (directly and through expectation values of the transition
operators), the pure-product diagonal condition, the operational partial
transpose with its PPT verdict, the d⊗d separability inequality built from
density-matrix elements, and its closed forms on the parametrized families.

Indices inside this module are 0-based. A 1-based element ρ_{p,q} as usually
written is ``rho.mat[p - 1, q - 1]`` (see :meth:`DensityMatrix.element`).
"""

import logging
import math
import operator
from functools import lru_cache, partial
from typing import Callable, Iterator

import numpy as np

from evmsep.evm import expect, op_matrix
from evmsep.linalg import as_matrix, min_eigenvalue
from evmsep.models.criteria import (
    DEFAULT_TOLERANCES,
    CondResult,
    CriterionReport,
    PairTerm,
    PPTResult,
    Tolerances,
    WitnessValue,
)
from evmsep.models.errors import DimMismatchError, DomainError, NotPureError, NotSquareBipartiteError
from evmsep.models.operators import OperatorWord
from evmsep.models.state import BipartiteDims, ComplexMatrix, DensityMatrix

__all__ = [
    "DEFAULT_THRESHOLD_TOL",
    "purity_direct",
    "purity_groups",
    "purity_evm",
    "pure_product_check",
    "partial_transpose",
    "ppt_test",
    "cond_inequality",
    "cond_two_qubit",
    "cond_terms_by_pair",
    "werner_cond_terms",
    "werner_p",
    "werner_witness",
    "werner_threshold",
    "isotropic_cond_terms",
    "isotropic_q",
    "isotropic_witness",
    "isotropic_threshold",
    "horodecki_cond_terms",
    "horodecki_min_p",
    "upb_cond_terms",
    "upb_threshold",
    "bisect_detection",
    "analyze",
]

_LOGGER = logging.getLogger(__name__)

DEFAULT_THRESHOLD_TOL = 1e-12
_IMAG_TOL = 1e-12


def purity_direct(rho: DensityMatrix) -> float:
    """
    Tr ρ² as Σ ρ_ii² + 2 Σ_{i<j} ρ_ij ρ_ji.

    :param rho: State.
    :return: Real purity.
    """
    mat = rho.mat
    diag = np.diag(mat)
    upper = np.triu_indices(mat.shape[0], k=1)
    value = complex(np.sum(diag**2) + 2 * np.sum(mat[upper] * mat.T[upper]))
    if abs(value.imag) > _IMAG_TOL:
        _LOGGER.warning("Purity has imaginary part %.3e; discarding it.", value.imag)
    return value.real


def _projector_tokens(subsystem: int, digit: int) -> list[str]:
    # |0><0| = A^1 A^1†, |m><m| = A^m† A^m
    if digit == 0:
        return [f"A{subsystem}^1", f"A{subsystem}^1†"]
    return [f"A{subsystem}^{digit}†", f"A{subsystem}^{digit}"]


def _ascending_pairs(upper: int) -> Iterator[tuple[int, int]]:
    """(low, high) with 1 ≤ low < high ≤ upper."""
    for low in range(1, upper):
        for high in range(low + 1, upper + 1):
            yield low, high


@lru_cache(maxsize=16)
def purity_groups(dims: BipartiteDims) -> tuple[tuple[str, tuple[tuple[str, str | None], ...]], ...]:
    """
    Term groups of Tr ρ² written with transition-operator expectation values.

    The first four groups hold squared expectations of diagonal projector words
    (second label None). The remaining sixteen hold products ⟨W⟩⟨W†⟩, one for
    every unordered pair of distinct basis states, split by whether each
    digit is zero, nonzero or differs between the two states.

    :param dims: System dimensions.
    :return: (group name, ((label, partner label or None), ...)) per group.
    """
    m1, m2 = dims.d1 - 1, dims.d2 - 1
    r1, r2 = range(1, m1 + 1), range(1, m2 + 1)
    p1 = partial(_projector_tokens, 1)
    p2 = partial(_projector_tokens, 2)

    def term(first: list[str], second: list[str] | None = None) -> tuple[str, str | None]:
        return " ".join(first), None if second is None else " ".join(second)

    groups: list[tuple[str, list[tuple[str, str | None]]]] = [
        ("diag_00", [term(p1(0) + p2(0))]),
        ("diag_0m", [term(p1(0) + p2(b)) for b in r2]),
        ("diag_m0", [term(p1(a) + p2(0)) for a in r1]),
        ("diag_mm", [term(p1(a) + p2(b)) for a in r1 for b in r2]),
        ("same1_zero_0m", [term(p1(0) + [f"A2^{b}†"], p1(0) + [f"A2^{b}"]) for b in r2]),
        (
            "same1_zero_mm",
            [
                term(p1(0) + [f"A2^{hi}†", f"A2^{lo}"], p1(0) + [f"A2^{lo}†", f"A2^{hi}"])
                for lo, hi in _ascending_pairs(m2)
            ],
        ),
        ("same2_zero_0m", [term([f"A1^{a}†"] + p2(0), [f"A1^{a}"] + p2(0)) for a in r1]),
        ("same1_m_0m", [term(p1(a) + [f"A2^{b}†"], p1(a) + [f"A2^{b}"]) for a in r1 for b in r2]),
        (
            "same2_zero_mm",
            [
                term([f"A1^{hi}†", f"A1^{lo}"] + p2(0), [f"A1^{lo}†", f"A1^{hi}"] + p2(0))
                for lo, hi in _ascending_pairs(m1)
            ],
        ),
        (
            "same1_m_mm",
            [
                term(p1(a) + [f"A2^{hi}†", f"A2^{lo}"], p1(a) + [f"A2^{lo}†", f"A2^{hi}"])
                for a in r1
                for lo, hi in _ascending_pairs(m2)
            ],
        ),
        ("same2_m_0m", [term([f"A1^{a}†"] + p2(b), [f"A1^{a}"] + p2(b)) for b in r2 for a in r1]),
        (
            "same2_m_mm",
            [
                term([f"A1^{hi}†", f"A1^{lo}"] + p2(b), [f"A1^{lo}†", f"A1^{hi}"] + p2(b))
                for b in r2
                for lo, hi in _ascending_pairs(m1)
            ],
        ),
        ("cross_0m_0m_a", [term([f"A1^{a}†", f"A2^{b}†"], [f"A1^{a}", f"A2^{b}"]) for a in r1 for b in r2]),
        ("cross_0m_0m_b", [term([f"A1^{a}†", f"A2^{b}"], [f"A1^{a}", f"A2^{b}†"]) for a in r1 for b in r2]),
        (
            "cross_0m_mm_a",
            [
                term([f"A1^{a}†", f"A2^{hi}†", f"A2^{lo}"], [f"A1^{a}", f"A2^{lo}†", f"A2^{hi}"])
                for a in r1
                for lo, hi in _ascending_pairs(m2)
            ],
        ),
        (
            "cross_0m_mm_b",
            [
                term([f"A1^{a}†", f"A2^{lo}†", f"A2^{hi}"], [f"A1^{a}", f"A2^{hi}†", f"A2^{lo}"])
                for a in r1
                for lo, hi in _ascending_pairs(m2)
            ],
        ),
        (
            "cross_mm_0m_a",
            [
                term([f"A1^{hi}†", f"A1^{lo}", f"A2^{b}†"], [f"A1^{lo}†", f"A1^{hi}", f"A2^{b}"])
                for b in r2
                for lo, hi in _ascending_pairs(m1)
            ],
        ),
        (
            "cross_mm_0m_b",
            [
                term([f"A1^{hi}†", f"A1^{lo}", f"A2^{b}"], [f"A1^{lo}†", f"A1^{hi}", f"A2^{b}†"])
                for b in r2
                for lo, hi in _ascending_pairs(m1)
            ],
        ),
        (
            "cross_mm_mm_a",
            [
                term(
                    [f"A1^{hi1}†", f"A1^{lo1}", f"A2^{hi2}†", f"A2^{lo2}"],
                    [f"A1^{lo1}†", f"A1^{hi1}", f"A2^{lo2}†", f"A2^{hi2}"],
                )
                for lo1, hi1 in _ascending_pairs(m1)
                for lo2, hi2 in _ascending_pairs(m2)
            ],
        ),
        (
            "cross_mm_mm_b",
            [
                term(
                    [f"A1^{hi1}†", f"A1^{lo1}", f"A2^{lo2}†", f"A2^{hi2}"],
                    [f"A1^{lo1}†", f"A1^{hi1}", f"A2^{hi2}†", f"A2^{lo2}"],
                )
                for lo1, hi1 in _ascending_pairs(m1)
                for lo2, hi2 in _ascending_pairs(m2)
            ],
        ),
    ]
    return tuple((name, tuple(terms)) for name, terms in groups)


def purity_evm(rho: DensityMatrix) -> float:
    """
    Tr ρ² evaluated term by term from expectation values.

    Diagonal groups contribute ⟨P⟩², the pair groups 2·⟨W⟩⟨W†⟩.

    :param rho: State.
    :return: Real purity.
    """
    dims = rho.dims
    squares = 0j
    pairs = 0j
    for _, terms in purity_groups(dims):
        for label, partner in terms:
            value = expect(rho, OperatorWord.parse(label, dims))
            if partner is None:
                squares += value**2
            else:
                pairs += value * expect(rho, OperatorWord.parse(partner, dims))
    total = squares + 2 * pairs
    if abs(total.imag) > _IMAG_TOL:
        _LOGGER.warning("Expectation-value purity has imaginary part %.3e; discarding it.", total.imag)
    return total.real


def pure_product_check(rho: DensityMatrix, tol: float = DEFAULT_TOLERANCES.product) -> tuple[tuple[bool, ...], bool]:
    """
    Diagonal condition satisfied by every pure product state.

    For 1-based k in block a (a·d2 < k ≤ (a+1)·d2), ρ_kk must equal the sum of
    the diagonal over block a times the sum of the diagonal over every index
    sharing k's position within its block. Failure means the pure state is
    entangled; passing is necessary but not sufficient.

    :param rho: Pure state.
    :param tol: Per-entry tolerance, also used for the purity precondition.
    :return: (per-k verdicts in k order, all passed).
    """
    purity = purity_direct(rho)
    if abs(purity - 1.0) > tol:
        raise NotPureError(f"pure-product check needs a pure state, Tr rho^2 = {purity:.12g}")
    d1, d2 = rho.dims.d1, rho.dims.d2
    diag = np.real(np.diag(rho.mat)).reshape(d1, d2)
    block_sums = diag.sum(axis=1)
    offset_sums = diag.sum(axis=0)
    verdicts = []
    for k in range(1, rho.dims.size + 1):
        a, offset = divmod(k - 1, d2)
        verdicts.append(bool(abs(diag[a, offset] - block_sums[a] * offset_sums[offset]) <= tol))
    return tuple(verdicts), all(verdicts)


@lru_cache(maxsize=16)
def _transpose_units(dims: BipartiteDims, subsystem: int) -> tuple[np.ndarray, ...]:
    dim = dims.dim(subsystem)
    return tuple(
        op_matrix(OperatorWord.for_units(dims, (subsystem, p, q)), dims) for p in range(dim) for q in range(dim)
    )


def partial_transpose(rho: DensityMatrix, subsystem: int) -> ComplexMatrix:
    """
    Partial transpose as Σ O ρ O over every matrix unit O on one subsystem.

    For two qubits this is A A† ρ A A† + A ρ A + A† ρ A† + A† A ρ A† A.

    :param rho: State.
    :param subsystem: 1 or 2.
    :return: ρ^{T_k}.
    """
    out = np.zeros_like(rho.mat)
    for unit in _transpose_units(rho.dims, subsystem):
        out += unit @ rho.mat @ unit
    return as_matrix(out)


def ppt_test(
    rho: DensityMatrix, tol: float = DEFAULT_TOLERANCES.npt, hermitian_tol: float = DEFAULT_TOLERANCES.hermitian
) -> PPTResult:
    """
    Positive-partial-transpose test on both subsystems.

    :param rho: State.
    :param tol: An eigenvalue below −tol flags NPT.
    :param hermitian_tol: Hermiticity tolerance handed to the eigensolver.
    :return: Minimum eigenvalues of ρ^{T_1}, ρ^{T_2} and the NPT verdict.
    """
    first = min_eigenvalue(partial_transpose(rho, 1), hermitian_tol)
    second = min_eigenvalue(partial_transpose(rho, 2), hermitian_tol)
    return PPTResult(float(first), float(second), bool(first < -tol or second < -tol))


def _require_square(rho: DensityMatrix) -> int:
    if not rho.dims.is_square:
        raise NotSquareBipartiteError(f"criterion needs d1 = d2, got ({rho.dims.d1}, {rho.dims.d2})")
    return rho.dims.d1


def _diag(rho: DensityMatrix, index: int) -> float:
    return max(float(np.real(rho.mat[index, index])), 0.0)


def cond_inequality(rho: DensityMatrix, tol: float = DEFAULT_TOLERANCES.violation) -> CondResult:
    """
    The d⊗d separability inequality on density-matrix elements.

    lhs = 2·max(Σ_{i<j} |⟨ii|ρ|jj⟩|, Σ_{i<j} |⟨ij|ρ|ji⟩|) and
    rhs = ((d−1)/2)·Σ_i ⟨ii|ρ|ii⟩ + Σ_{i<j} √(⟨ij|ρ|ij⟩⟨ji|ρ|ji⟩).
    Every separable state satisfies lhs ≤ rhs, so a violation certifies
    entanglement; no violation is inconclusive.

    :param rho: d⊗d state.
    :param tol: Violation requires lhs > rhs + tol.
    :return: Both sides and the verdict.
    """
    d = _require_square(rho)
    mat = rho.mat
    diagonal_sum = 0.0
    swap_sum = 0.0
    geometric = 0.0
    for i in range(d):
        for j in range(i + 1, d):
            diagonal_sum += abs(mat[i * (d + 1), j * (d + 1)])
            swap_sum += abs(mat[i * d + j, j * d + i])
            geometric += math.sqrt(_diag(rho, i * d + j) * _diag(rho, j * d + i))
    lhs = 2 * max(diagonal_sum, swap_sum)
    rhs = (d - 1) / 2 * sum(_diag(rho, i * (d + 1)) for i in range(d)) + geometric
    return CondResult(float(lhs), float(rhs), bool(lhs > rhs + tol))


def cond_two_qubit(rho: DensityMatrix, tol: float = DEFAULT_TOLERANCES.violation) -> CondResult:
    """
    Two-qubit form 4·max(|ρ_14|, |ρ_23|) ≤ ρ_11 + ρ_44 + 2√(ρ_22 ρ_33).

    Both sides are twice those of :func:`cond_inequality` at d = 2.

    :param rho: 2⊗2 state.
    :param tol: Violation requires lhs > rhs + tol.
    :return: Both sides and the verdict.
    """
    if (rho.dims.d1, rho.dims.d2) != (2, 2):
        raise DimMismatchError(f"two-qubit condition needs dims (2, 2), got ({rho.dims.d1}, {rho.dims.d2})")
    lhs = 4 * max(abs(rho.element(1, 4)), abs(rho.element(2, 3)))
    rhs = _diag(rho, 0) + _diag(rho, 3) + 2 * math.sqrt(_diag(rho, 1) * _diag(rho, 2))
    return CondResult(float(lhs), float(rhs), bool(lhs > rhs + tol))


def cond_terms_by_pair(rho: DensityMatrix, tol: float = DEFAULT_TOLERANCES.violation) -> list[PairTerm]:
    """
    Per-pair inequalities 2|coherence| ≤ bound whose sum is the full inequality.

    For d = 3 these are the three two-qutrit inequalities on
    (ρ_15, ρ_19, ρ_59) and (ρ_24, ρ_37, ρ_68).

    :param rho: d⊗d state.
    :param tol: Violation tolerance of each pair.
    :return: One term per 0 ≤ i < j < d, in (i, j) order.
    """
    d = _require_square(rho)
    mat = rho.mat
    terms = []
    for i in range(d):
        for j in range(i + 1, d):
            diagonal = float(abs(mat[i * (d + 1), j * (d + 1)]))
            swap = float(abs(mat[i * d + j, j * d + i]))
            bound = (_diag(rho, i * (d + 1)) + _diag(rho, j * (d + 1))) / 2 + math.sqrt(
                _diag(rho, i * d + j) * _diag(rho, j * d + i)
            )
            terms.append(PairTerm(i, j, diagonal, swap, bound, 2 * max(diagonal, swap) > bound + tol))
    return terms


def _check_family_args(d: int, value: float, name: str) -> None:
    if d < 2:
        raise DomainError(f"dimension must be >= 2, got {d}")
    if not 0 <= value <= 1:
        raise DomainError(f"{name}={value} outside [0, 1]")


def werner_cond_terms(d: int, eta: float) -> tuple[float, float]:
    """
    Both sides of the separability inequality for the Werner state W_d^η.

    :param d: Local dimension.
    :param eta: Mixing parameter in [0, 1].
    :return: (lhs, rhs) = (η, [2(d−1) − η(d−2)]/(2d)).
    """
    _check_family_args(d, eta, "eta")
    return eta, (2 * (d - 1) - eta * (d - 2)) / (2 * d)


def werner_p(d: int, eta: float) -> float:
    """
    Werner witness p; p < 1 exactly when the separability inequality is violated.

    Evaluated from the diagonal, geometric and coherence sums of W_d^η with
    S = Σ_{i=1}^{d} (d − i) pairs.

    :param d: Local dimension.
    :param eta: Mixing parameter in [0, 1].
    :return: p, or +inf at η = 0 where the coherence side vanishes.
    """
    _check_family_args(d, eta, "eta")
    if eta == 0:
        return math.inf
    pairs = d * (d - 1) / 2
    numerator = (d - 1 + eta - eta * d) / (2 * d) + pairs * (d - 1 + eta) / ((d - 1) * d**2)
    denominator = 2 * pairs * eta / ((d - 1) * d)
    return numerator / denominator


def isotropic_cond_terms(d: int, alpha: float) -> tuple[float, float]:
    """
    Both sides of the separability inequality for the isotropic state.

    :param d: Local dimension.
    :param alpha: Weight of the maximally entangled state in [0, 1].
    :return: (lhs, rhs) = ((d−1)α, ((d−1)/2)(2(1−α)/d + α)).
    """
    _check_family_args(d, alpha, "alpha")
    return (d - 1) * alpha, (d - 1) / 2 * (2 * (1 - alpha) / d + alpha)


def isotropic_q(d: int, alpha: float) -> float:
    """
    Isotropic witness q; q < 1 exactly when the separability inequality is violated.

    :param d: Local dimension.
    :param alpha: Weight of the maximally entangled state in [0, 1].
    :return: q, or +inf at α = 0.
    """
    _check_family_args(d, alpha, "alpha")
    if alpha == 0:
        return math.inf
    pairs = d * (d - 1) / 2
    numerator = pairs * ((1 - alpha) / d**2 + alpha / d) + pairs * (1 - alpha) / d**2
    denominator = 2 * pairs * alpha / d
    return numerator / denominator


def werner_witness(d: int, eta: float, tol: float = DEFAULT_TOLERANCES.violation) -> WitnessValue:
    """Werner p packaged with its verdict p < 1 − tol."""
    value = werner_p(d, eta)
    return WitnessValue("p", value, value < 1 - tol)


def isotropic_witness(d: int, alpha: float, tol: float = DEFAULT_TOLERANCES.violation) -> WitnessValue:
    """Isotropic q packaged with its verdict q < 1 − tol."""
    value = isotropic_q(d, alpha)
    return WitnessValue("q", value, value < 1 - tol)


def bisect_detection(detected: Callable[[float], bool], lo: float, hi: float, tol: float) -> tuple[float, float]:
    """
    Narrows a detection crossing by bisection.

    :param detected: Verdict as a function of the parameter; False at ``lo``, True at ``hi``.
    :param lo: Undetected end.
    :param hi: Detected end.
    :param tol: Stop once hi − lo ≤ tol.
    :return: Final (lo, hi) bracket.
    """
    if detected(lo) or not detected(hi):
        raise DomainError(f"[{lo}, {hi}] does not bracket a detection crossing")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if detected(mid):
            hi = mid
        else:
            lo = mid
    return lo, hi


def werner_threshold(d: int, tol: float = DEFAULT_THRESHOLD_TOL) -> float:
    """
    Smallest η at which the separability inequality detects W_d^η.

    :param d: Local dimension.
    :param tol: Bisection resolution.
    :return: η with werner_p(d, η) = 1.
    """
    lo, hi = bisect_detection(lambda eta: werner_p(d, eta) < 1, 0.0, 1.0, tol)
    return (lo + hi) / 2


def isotropic_threshold(d: int, tol: float = DEFAULT_THRESHOLD_TOL) -> float:
    """
    Smallest α at which the separability inequality detects the isotropic state.

    :param d: Local dimension.
    :param tol: Bisection resolution.
    :return: α with isotropic_q(d, α) = 1.
    """
    lo, hi = bisect_detection(lambda alpha: isotropic_q(d, alpha) < 1, 0.0, 1.0, tol)
    return (lo + hi) / 2


def horodecki_cond_terms(a: float, p: float) -> tuple[float, float]:
    """
    Both sides of the separability inequality for (1−p)·ρ_a + p·P₊ on 3⊗3.

    With t = 1/(8a+1), lhs = 6(1−p)·a·t + 2p and
    rhs = (1−p)·t·(4a + (1+a)/2 + √(a(1+a)/2)) + p.

    :param a: a in [0, 1].
    :param p: Weight of P₊ in [0, 1].
    :return: (lhs, rhs).
    """
    _check_family_args(3, a, "a")
    _check_family_args(3, p, "p")
    t = 1 / (8 * a + 1)
    lhs = 6 * (1 - p) * a * t + 2 * p
    rhs = (1 - p) * t * (4 * a + (1 + a) / 2 + math.sqrt(a * (1 + a) / 2)) + p
    return lhs, rhs


def horodecki_min_p(a: float) -> float:
    """
    Weight of P₊ above which the separability inequality detects the Horodecki mixture.

    lhs − rhs = p − (1−p)·c with c = t·(√(a(1+a)/2) − (3a−1)/2), so
    detection starts at p = c/(1+c).

    :param a: a in [0, 1].
    :return: Minimum detectable p; 0 when ρ_a itself is detected.
    """
    _check_family_args(3, a, "a")
    c = (math.sqrt(a * (1 + a) / 2) - (3 * a - 1) / 2) / (8 * a + 1)
    return c / (1 + c) if c > 0 else 0.0


def upb_cond_terms(p: float) -> tuple[float, float]:
    """
    Both sides of the separability inequality for (1−p)·ρ_tiles + p·P₊.

    :param p: Weight of P₊ in [0, 1].
    :return: (max(|2p − (1−p)/6|, (1−p)/6), (51/72)(1−p) + p).
    """
    _check_family_args(3, p, "p")
    return max(abs(2 * p - (1 - p) / 6), (1 - p) / 6), (1 - p) * 51 / 72 + p


def upb_threshold(tol: float = DEFAULT_THRESHOLD_TOL) -> float:
    """
    Smallest p at which the separability inequality detects the tiles mixture.

    :param tol: Bisection resolution.
    :return: p at the crossing (7/15).
    """
    lo, hi = bisect_detection(lambda p: operator.gt(*upb_cond_terms(p)), 0.0, 1.0, tol)
    return (lo + hi) / 2


def analyze(
    rho: DensityMatrix, tolerances: Tolerances = DEFAULT_TOLERANCES, witness: WitnessValue | None = None
) -> CriterionReport:
    """
    Runs every applicable criterion on a state.

    The pure-product check runs only for pure states and the separability
    inequality only for d1 = d2.

    :param rho: State.
    :param tolerances: Tolerances for each check.
    :param witness: Closed-form witness to attach, when the state's family is known.
    :return: Aggregated report.
    """
    purity = purity_direct(rho)
    pure = abs(purity - 1.0) <= tolerances.purity
    report = CriterionReport(
        dims=(rho.dims.d1, rho.dims.d2),
        purity=purity,
        pure_flag=pure,
        ppt=ppt_test(rho, tolerances.npt, tolerances.hermitian),
        witness=witness,
        tolerances=tolerances,
    )
    if pure:
        report.pure_product_diagonal, report.pure_product_flag = pure_product_check(
            rho, max(tolerances.product, tolerances.purity)
        )
    if rho.dims.is_square:
        report.cond = cond_inequality(rho, tolerances.violation)
    else:
        _LOGGER.warning(
            "Separability inequality needs d1 = d2; skipped for dims (%d, %d).", rho.dims.d1, rho.dims.d2
        )
    _LOGGER.info("Analyzed %dx%d state: purity %.6g, entangled=%s.", rho.dims.d1, rho.dims.d2, purity, report.entangled)
    return report
