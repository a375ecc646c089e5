"""Defines parametrized state-family descriptors."""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from numbers import Real

from evmsep.models.errors import DomainError

__all__ = ["FamilyKind", "FamilySpec", "FAMILY_PARAMETERS", "OPTIONAL_PARAMETERS"]


class FamilyKind(Enum):
    """
    Enumeration of the state families.

    WERNER: W_d^η, flip-operator mixture.
    ISOTROPIC: maximally mixed + maximally entangled mixture.
    HORODECKI: PPT entangled ρ_a mixed with P₊ (d = 3).
    UPB: tiles bound entangled state mixed with P₊ (d = 3).
    BELL: a|00⟩ + b|11⟩.
    PRODUCT: ρ1 ⊗ ρ2 of two single-system states.
    """

    WERNER = "werner"
    ISOTROPIC = "isotropic"
    HORODECKI = "horodecki"
    UPB = "upb"
    BELL = "bell"
    PRODUCT = "product"


#: Named real parameters per family, in axis order.
FAMILY_PARAMETERS: dict[FamilyKind, tuple[str, ...]] = {
    FamilyKind.WERNER: ("eta",),
    FamilyKind.ISOTROPIC: ("alpha",),
    FamilyKind.HORODECKI: ("a", "p"),
    FamilyKind.UPB: ("p",),
    FamilyKind.BELL: ("a", "b"),
    FamilyKind.PRODUCT: (),
}

#: Parameters a family accepts but does not require.
OPTIONAL_PARAMETERS: dict[FamilyKind, tuple[str, ...]] = {FamilyKind.PRODUCT: ("i", "j")}

_UNIT_INTERVAL = {"eta", "alpha", "a", "p"}


@dataclass(slots=True, frozen=True)
class FamilySpec:
    """
    A family member: kind, dimension and named parameters.

    :param kind: Which family.
    :param d: Local dimension (3 is forced for HORODECKI/UPB, 2 for BELL).
    :param parameters: Named parameters; η, α, a, p must lie in [0, 1]. Names the family does not use are rejected.
    """

    kind: FamilyKind
    d: int = 2
    parameters: dict[str, Real | complex] = field(default_factory=dict)

    def __post_init__(self):
        if self.d < 2:
            raise DomainError(f"dimension must be >= 2, got {self.d}")
        if self.kind in (FamilyKind.HORODECKI, FamilyKind.UPB) and self.d != 3:
            raise DomainError(f"{self.kind.value} is a 3x3 family, got d={self.d}")
        if self.kind is FamilyKind.BELL and self.d != 2:
            raise DomainError(f"bell is a 2x2 family, got d={self.d}")
        for name in FAMILY_PARAMETERS[self.kind]:
            if name not in self.parameters:
                raise DomainError(f"{self.kind.value} requires parameter {name!r}")
        accepted = FAMILY_PARAMETERS[self.kind] + OPTIONAL_PARAMETERS.get(self.kind, ())
        if unused := sorted(set(self.parameters) - set(accepted)):
            raise DomainError(f"{self.kind.value} has no parameter(s) {unused}; accepts {list(accepted)}")
        if self.kind is not FamilyKind.BELL:
            for name, value in self.parameters.items():
                if name in _UNIT_INTERVAL and not 0 <= value <= 1:
                    raise DomainError(f"{name}={value} outside [0, 1] for {self.kind.value}")

    @property
    def is_rational(self) -> bool:
        """True when every parameter is an int or Fraction (exact construction possible)."""
        return all(isinstance(v, (int, Fraction)) for v in self.parameters.values())

    def provenance(self) -> dict:
        """
        Provenance header written alongside serialized states.

        :return: ``{"kind": ..., "d": ..., "parameters": {...}}`` with float/str values.
        """
        params: dict[str, float | str] = {}
        for name, value in self.parameters.items():
            params[name] = str(value) if isinstance(value, (Fraction, complex)) else float(value)
        return {"kind": self.kind.value, "d": self.d, "parameters": params}
