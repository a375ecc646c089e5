"""
Scannable state families.

Each family declares its axes and knows how to evaluate one grid point,
either on the matrix path (build ρ, evaluate the separability inequality and
optionally PPT) or on the closed-form path (scalar formulas only, no d²×d²
matrix). Classes register themselves by ``kind`` when defined.
"""

import abc
from types import MappingProxyType
from typing import ClassVar, Mapping

from evmsep import criteria, families
from evmsep.models.criteria import DEFAULT_TOLERANCES, Tolerances
from evmsep.models.errors import DomainError
from evmsep.models.family import FamilyKind, FamilySpec
from evmsep.models.scan import EvaluationPath, ScanAxis, ScanRecord

__all__ = [
    "DEFAULT_MATRIX_PATH_MAX_D",
    "Point",
    "ScanFamily",
    "WernerScan",
    "IsotropicScan",
    "HorodeckiScan",
    "UpbScan",
    "family_registry",
    "get_scan_family",
]

DEFAULT_MATRIX_PATH_MAX_D = 8

Point = tuple[tuple[str, float], ...]


class ScanFamily(abc.ABC):
    """
    Base of the scannable families.

    Only classes that declare ``kind`` in their own namespace register.
    """

    family_registry: ClassVar[dict[FamilyKind, type["ScanFamily"]]] = {}

    kind: ClassVar[FamilyKind]
    axis_names: ClassVar[tuple[str, ...]]
    witness_name: ClassVar[str | None] = None

    def __init_subclass__(cls):
        if "kind" in cls.__dict__:
            cls.family_registry[cls.kind] = cls
        return super().__init_subclass__()

    @abc.abstractmethod
    def spec(self, point: Mapping[str, float]) -> FamilySpec:
        """
        Family member at a grid point.

        :param point: Axis name → value.
        :return: Validated family descriptor.
        """

    def closed_form(self, point: Mapping[str, float]) -> tuple[float, float] | None:
        """(lhs, rhs) of the separability inequality without building ρ, if known."""
        return None

    def witness(self, point: Mapping[str, float]) -> float | None:
        """Scalar witness value (p or q), if the family has one."""
        return None

    def uses_matrix_path(self, point: Mapping[str, float], matrix_max_d: int) -> bool:
        """
        Chooses the evaluation path for a point.

        :param point: Axis name → value.
        :param matrix_max_d: Largest local dimension evaluated on the matrix path.
        :return: True for the matrix path.
        """
        if self.closed_form(point) is None:
            return True
        return int(point.get("d", 3)) <= matrix_max_d

    def check_axes(self, axes: tuple[ScanAxis, ...]) -> None:
        """
        Ensures the axes match this family's parameters, in order.

        :param axes: Scan axes.
        :raises DomainError: On missing, extra or reordered axes.
        """
        names = tuple(axis.name for axis in axes)
        if names != self.axis_names:
            raise DomainError(f"{self.kind.value} scans over axes {self.axis_names}, got {names}")

    def evaluate(
        self,
        point: Point,
        tolerances: Tolerances = DEFAULT_TOLERANCES,
        matrix_max_d: int = DEFAULT_MATRIX_PATH_MAX_D,
        with_ppt: bool = True,
    ) -> ScanRecord:
        """
        Evaluates one grid point.

        :param point: (axis name, value) pairs in axis order.
        :param tolerances: Tolerances for the verdicts.
        :param matrix_max_d: Largest local dimension evaluated on the matrix path.
        :param with_ppt: Run the PPT test on the matrix path.
        :return: Record for the point.
        """
        values = dict(point)
        witness = self.witness(values)
        if not self.uses_matrix_path(values, matrix_max_d):
            lhs, rhs = self.closed_form(values)
            violated = lhs > rhs + tolerances.violation
            return ScanRecord(point, witness, lhs, rhs, violated, None, EvaluationPath.CLOSED_FORM)
        rho = families.build(self.spec(values))
        cond = criteria.cond_inequality(rho, tolerances.violation)
        npt = criteria.ppt_test(rho, tolerances.npt, tolerances.hermitian).npt if with_ppt else None
        return ScanRecord(point, witness, cond.lhs, cond.rhs, cond.violated, npt, EvaluationPath.MATRIX)


class WernerScan(ScanFamily):
    """W_d^η over (d, η)."""

    kind = FamilyKind.WERNER
    axis_names = ("d", "eta")
    witness_name = "p"

    def spec(self, point: Mapping[str, float]) -> FamilySpec:
        return FamilySpec(self.kind, int(point["d"]), {"eta": point["eta"]})

    def closed_form(self, point: Mapping[str, float]) -> tuple[float, float]:
        return criteria.werner_cond_terms(int(point["d"]), point["eta"])

    def witness(self, point: Mapping[str, float]) -> float:
        return criteria.werner_p(int(point["d"]), point["eta"])


class IsotropicScan(ScanFamily):
    """Isotropic states over (d, α)."""

    kind = FamilyKind.ISOTROPIC
    axis_names = ("d", "alpha")
    witness_name = "q"

    def spec(self, point: Mapping[str, float]) -> FamilySpec:
        return FamilySpec(self.kind, int(point["d"]), {"alpha": point["alpha"]})

    def closed_form(self, point: Mapping[str, float]) -> tuple[float, float]:
        return criteria.isotropic_cond_terms(int(point["d"]), point["alpha"])

    def witness(self, point: Mapping[str, float]) -> float:
        return criteria.isotropic_q(int(point["d"]), point["alpha"])


class HorodeckiScan(ScanFamily):
    """(1−p)·ρ_a + p·P₊ over (a, p); always on the matrix path."""

    kind = FamilyKind.HORODECKI
    axis_names = ("a", "p")

    def spec(self, point: Mapping[str, float]) -> FamilySpec:
        return FamilySpec(self.kind, 3, {"a": point["a"], "p": point["p"]})


class UpbScan(ScanFamily):
    """(1−p)·ρ_tiles + p·P₊ over p; always on the matrix path."""

    kind = FamilyKind.UPB
    axis_names = ("p",)

    def spec(self, point: Mapping[str, float]) -> FamilySpec:
        return FamilySpec(self.kind, 3, {"p": point["p"]})


_FAMILY_REGISTRY: Mapping[FamilyKind, type[ScanFamily]] = MappingProxyType(dict(ScanFamily.family_registry))


def family_registry() -> Mapping[FamilyKind, type[ScanFamily]]:
    """Returns the immutable kind-to-scan-family registry."""
    return _FAMILY_REGISTRY


def get_scan_family(kind: FamilyKind | str) -> ScanFamily:
    """
    Instantiates the scan family of a kind.

    :param kind: Family kind or its value (``"werner"``, ...).
    :return: Scan family.
    :raises DomainError: If the family cannot be scanned.
    """
    try:
        kind = FamilyKind(kind)
    except ValueError as exc:
        raise DomainError(f"unknown family {kind!r}") from exc
    if cls_ := _FAMILY_REGISTRY.get(kind):
        return cls_()
    raise DomainError(f"family {kind.value!r} cannot be scanned; choose one of {[k.value for k in _FAMILY_REGISTRY]}")
