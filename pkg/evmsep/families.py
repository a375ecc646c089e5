"""
Parametrized state families.

Werner and isotropic states in any d, the 3⊗3 Horodecki mixture, the tiles
bound entangled state mixed with the maximally entangled state, Bell-type
states and computational product states.

Matrices are assembled as object arrays whose entries stay exact
:class:`~fractions.Fraction` values while every parameter is rational, and are
converted to ``complex128`` only when wrapped into a :class:`DensityMatrix`.
"""

import logging
import math
from fractions import Fraction
from numbers import Rational
from typing import Callable

import numpy as np

from evmsep.models.errors import DomainError, NormError
from evmsep.models.family import FamilyKind, FamilySpec
from evmsep.models.state import BipartiteDims, DensityMatrix, Ket
from evmsep.states import product_state, pure_from_ket

__all__ = [
    "BELL_NORM_TOL",
    "flip_operator",
    "max_entangled",
    "werner",
    "isotropic",
    "horodecki_insep",
    "horodecki_state",
    "horodecki_mixture",
    "tiles_vectors",
    "tiles_state",
    "upb_mixture",
    "bell",
    "product",
    "basis_product",
    "exact_matrix",
    "build",
]

_LOGGER = logging.getLogger(__name__)

BELL_NORM_TOL = 1e-9

Scalar = Fraction | float


def _scalar(value) -> Scalar:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, Rational):
        return Fraction(int(value.numerator), int(value.denominator))
    return float(value)


def _sqrt(value: Scalar) -> Scalar:
    """Exact root of a rational perfect square, float otherwise."""
    if isinstance(value, Fraction) and value >= 0:
        num, den = math.isqrt(value.numerator), math.isqrt(value.denominator)
        if num * num == value.numerator and den * den == value.denominator:
            return Fraction(num, den)
    return math.sqrt(float(value))


def _identity(n: int) -> np.ndarray:
    return np.array([[Fraction(int(r == c)) for c in range(n)] for r in range(n)], dtype=object)


def _projector(vector: list[int]) -> np.ndarray:
    """|u⟩⟨u| / ⟨u|u⟩ for an integer vector u, exactly."""
    norm = sum(x * x for x in vector)
    return np.array([[Fraction(x * y, norm) for y in vector] for x in vector], dtype=object)


def _check_unit(name: str, value: Scalar) -> None:
    if not 0 <= value <= 1:
        raise DomainError(f"{name}={value} outside [0, 1]")


def _check_dim(d: int) -> None:
    if d < 2:
        raise DomainError(f"dimension must be >= 2, got {d}")


def _as_state(d: int, entries: np.ndarray) -> DensityMatrix:
    return DensityMatrix(BipartiteDims(d, d), entries.astype(np.float64).astype(np.complex128))


def flip_operator(d: int) -> np.ndarray:
    """
    Swap operator V = Σ_{i,j} |ij⟩⟨ji|, including the i = j terms.

    :param d: Local dimension.
    :return: d² × d² integer matrix.
    """
    _check_dim(d)
    flip = np.zeros((d * d, d * d), dtype=int)
    for i in range(d):
        for j in range(d):
            flip[i * d + j, j * d + i] = 1
    return flip


def max_entangled(d: int) -> Ket:
    """|ψ₊⟩ = Σ_i |ii⟩ / √d."""
    _check_dim(d)
    amplitudes = np.zeros(d * d)
    amplitudes[[i * (d + 1) for i in range(d)]] = 1 / math.sqrt(d)
    return Ket(amplitudes)


def _max_entangled_projector(d: int) -> np.ndarray:
    return _projector([int(r // d == r % d) for r in range(d * d)])


def _werner_entries(d: int, eta: Scalar) -> np.ndarray:
    flip = flip_operator(d).astype(object)
    return (d - 1 + eta) / (d - 1) * _identity(d * d) / (d * d) - eta / (d - 1) * flip / d


def werner(d: int, eta) -> DensityMatrix:
    """
    Werner state ((d−1+η)/(d−1))·I/d² − (η/(d−1))·V/d.

    :param d: Local dimension.
    :param eta: η in [0, 1]; η = 0 is separable, η = 1 the antisymmetric projector.
    :return: d² × d² state.
    """
    _check_dim(d)
    eta = _scalar(eta)
    _check_unit("eta", eta)
    return _as_state(d, _werner_entries(d, eta))


def _isotropic_entries(d: int, alpha: Scalar) -> np.ndarray:
    return (1 - alpha) / (d * d) * _identity(d * d) + alpha * _max_entangled_projector(d)


def isotropic(d: int, alpha) -> DensityMatrix:
    """
    Isotropic state ((1−α)/d²)·I + α|ψ₊⟩⟨ψ₊|.

    :param d: Local dimension.
    :param alpha: α in [0, 1].
    :return: d² × d² state.
    """
    _check_dim(d)
    alpha = _scalar(alpha)
    _check_unit("alpha", alpha)
    return _as_state(d, _isotropic_entries(d, alpha))


def _basis_projector(i: int, j: int, d: int = 3) -> np.ndarray:
    return _projector([int(r == i * d + j) for r in range(d * d)])


def _insep_entries() -> np.ndarray:
    # e1, e2, e3 are |0>, |1>, |2>
    removed = sum((_basis_projector(i, i) for i in range(3)), start=_basis_projector(2, 0))
    q = _identity(9) - removed
    psi = _max_entangled_projector(3)
    return Fraction(3, 8) * psi + Fraction(1, 8) * q


def horodecki_insep() -> DensityMatrix:
    """
    The 3⊗3 state (3/8)·P_Ψ + (1/8)·Q.

    Q = I − (P_{e1}⊗P_{e1} + P_{e2}⊗P_{e2} + P_{e3}⊗P_{e3} + P_{e3}⊗P_{e1}) has trace 5.

    :return: 9 × 9 state violating the separability inequality (3/4 > 5/8).
    """
    return _as_state(3, _insep_entries())


def _phi_entries(a: Scalar) -> np.ndarray:
    # Φ_a = e3 ⊗ (√((1+a)/2) e1 + √((1−a)/2) e3): flat indices 6 and 8
    entries = np.array([[Fraction(0)] * 9 for _ in range(9)], dtype=object)
    entries[6, 6] = (1 + a) / 2
    entries[8, 8] = (1 - a) / 2
    entries[6, 8] = entries[8, 6] = _sqrt(1 - a * a) / 2
    return entries


def _horodecki_entries(a: Scalar, p: Scalar) -> np.ndarray:
    rho_a = 8 * a / (8 * a + 1) * _insep_entries() + 1 / (8 * a + 1) * _phi_entries(a)
    return (1 - p) * rho_a + p * _max_entangled_projector(3)


def horodecki_state(a) -> DensityMatrix:
    """
    ρ_a = (8a/(8a+1))·ρ_insep + (1/(8a+1))·P_{Φ_a}.

    :param a: a in [0, 1].
    :return: 9 × 9 state.
    """
    return horodecki_mixture(a, 0)


def horodecki_mixture(a, p) -> DensityMatrix:
    """
    ρ_p = (1−p)·ρ_a + p·P₊ on 3⊗3.

    :param a: a in [0, 1].
    :param p: Weight of P₊ in [0, 1].
    :return: 9 × 9 state.
    """
    a, p = _scalar(a), _scalar(p)
    _check_unit("a", a)
    _check_unit("p", p)
    if isinstance(a, Fraction):
        a = a if isinstance(_sqrt(1 - a * a), Fraction) else float(a)
    return _as_state(3, _horodecki_entries(a, p))


_TILES = (
    ([1, 0, 0], [1, -1, 0]),
    ([1, -1, 0], [0, 0, 1]),
    ([0, 0, 1], [0, 1, -1]),
    ([0, 1, -1], [1, 0, 0]),
    ([1, 1, 1], [1, 1, 1]),
)


def _tiles_integer_vectors() -> list[list[int]]:
    return [[x * y for x in first for y in second] for first, second in _TILES]


def tiles_vectors() -> tuple[Ket, ...]:
    """
    The five tiles product vectors ξ₀..ξ₄.

    ξ₀ = |0⟩(|0⟩−|1⟩)/√2, ξ₁ = (|0⟩−|1⟩)|2⟩/√2, ξ₂ = |2⟩(|1⟩−|2⟩)/√2,
    ξ₃ = (|1⟩−|2⟩)|0⟩/√2, ξ₄ = (|0⟩+|1⟩+|2⟩)(|0⟩+|1⟩+|2⟩)/3.

    :return: Orthonormal kets on 3⊗3.
    """
    kets = []
    for vector in _tiles_integer_vectors():
        amplitudes = np.array(vector, dtype=float)
        kets.append(Ket(amplitudes / np.linalg.norm(amplitudes)))
    return tuple(kets)


def _tiles_entries() -> np.ndarray:
    removed = sum((_projector(v) for v in _tiles_integer_vectors()[1:]), start=_projector(_tiles_integer_vectors()[0]))
    return (_identity(9) - removed) / 4


def tiles_state() -> DensityMatrix:
    """
    (I − Σ_i |ξ_i⟩⟨ξ_i|)/4, PPT yet entangled.

    :return: 9 × 9 state.
    """
    return _as_state(3, _tiles_entries())


def _upb_entries(p: Scalar) -> np.ndarray:
    return (1 - p) * _tiles_entries() + p * _max_entangled_projector(3)


def upb_mixture(p) -> DensityMatrix:
    """
    (1−p)·ρ_tiles + p·P₊.

    :param p: Weight of P₊ in [0, 1].
    :return: 9 × 9 state.
    """
    p = _scalar(p)
    _check_unit("p", p)
    return _as_state(3, _upb_entries(p))


def bell(a: complex, b: complex) -> DensityMatrix:
    """
    Pure state a|00⟩ + b|11⟩.

    :param a: Amplitude of |00⟩.
    :param b: Amplitude of |11⟩.
    :return: 4 × 4 pure state.
    """
    norm = abs(a) ** 2 + abs(b) ** 2
    if abs(norm - 1) > BELL_NORM_TOL:
        raise NormError(f"|a|^2 + |b|^2 = {norm:.12g}, expected 1")
    return pure_from_ket(Ket(np.array([a, 0, 0, b], dtype=np.complex128)), BipartiteDims(2, 2))


def product(rho1, rho2) -> DensityMatrix:
    """
    Product of two single-system states.

    :param rho1: First factor, d1 × d1.
    :param rho2: Second factor, d2 × d2.
    :return: ρ1 ⊗ ρ2.
    """
    first, second = np.asarray(rho1), np.asarray(rho2)
    return product_state(first, second, BipartiteDims(first.shape[0], second.shape[0]))


def basis_product(d: int, i: int = 0, j: int = 0) -> DensityMatrix:
    """
    Computational product state |i⟩⟨i| ⊗ |j⟩⟨j|.

    :param d: Local dimension.
    :param i: Basis label on subsystem 1.
    :param j: Basis label on subsystem 2.
    :return: d² × d² state.
    """
    _check_dim(d)
    if not (0 <= i < d and 0 <= j < d):
        raise DomainError(f"basis labels ({i}, {j}) outside 0..{d - 1}")
    return _as_state(d, _basis_projector(i, j, d))


_EXACT_BUILDERS: dict[FamilyKind, Callable[[FamilySpec], np.ndarray]] = {
    FamilyKind.WERNER: lambda spec: _werner_entries(spec.d, _scalar(spec.parameters["eta"])),
    FamilyKind.ISOTROPIC: lambda spec: _isotropic_entries(spec.d, _scalar(spec.parameters["alpha"])),
    FamilyKind.HORODECKI: lambda spec: _horodecki_entries(_scalar(spec.parameters["a"]), _scalar(spec.parameters["p"])),
    FamilyKind.UPB: lambda spec: _upb_entries(_scalar(spec.parameters["p"])),
    FamilyKind.PRODUCT: lambda spec: _basis_projector(
        int(spec.parameters.get("i", 0)), int(spec.parameters.get("j", 0)), spec.d
    ),
}


def exact_matrix(spec: FamilySpec) -> np.ndarray:
    """
    Exact rational matrix of a family member.

    :param spec: Family member with rational parameters.
    :return: Object array of :class:`~fractions.Fraction`.
    """
    builder = _EXACT_BUILDERS.get(spec.kind)
    if builder is None or not spec.is_rational:
        raise DomainError(f"{spec.kind.value} with parameters {spec.parameters} has no exact rational form")
    entries = builder(spec)
    if not all(isinstance(x, Fraction) for x in entries.flat):
        raise DomainError(f"{spec.kind.value} with parameters {spec.parameters} has irrational entries")
    return entries


_BUILDERS: dict[FamilyKind, Callable[[FamilySpec], DensityMatrix]] = {
    FamilyKind.WERNER: lambda spec: werner(spec.d, spec.parameters["eta"]),
    FamilyKind.ISOTROPIC: lambda spec: isotropic(spec.d, spec.parameters["alpha"]),
    FamilyKind.HORODECKI: lambda spec: horodecki_mixture(spec.parameters["a"], spec.parameters["p"]),
    FamilyKind.UPB: lambda spec: upb_mixture(spec.parameters["p"]),
    FamilyKind.BELL: lambda spec: bell(spec.parameters["a"], spec.parameters["b"]),
    FamilyKind.PRODUCT: lambda spec: basis_product(
        spec.d, int(spec.parameters.get("i", 0)), int(spec.parameters.get("j", 0))
    ),
}


def build(spec: FamilySpec) -> DensityMatrix:
    """
    Constructs the state a :class:`FamilySpec` describes.

    :param spec: Family member.
    :return: Density matrix.
    """
    _LOGGER.debug("Building %s state d=%d with %s.", spec.kind.value, spec.d, spec.parameters)
    return _BUILDERS[spec.kind](spec)
