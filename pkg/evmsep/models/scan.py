"""
Defines grid-scan data structures.

Provides axis descriptors, per-point records, boundary estimates and the
aggregated scan result consumed by the CSV exporter.
"""

import math
from dataclasses import dataclass, field
from enum import Enum

from evmsep.models.family import FamilyKind

__all__ = ["ScanAxis", "ScanRecord", "Boundary", "ScanResult", "EvaluationPath", "ReproduceTarget"]


class ReproduceTarget(Enum):
    """
    Enumeration of the reproduction bundles.

    FIG1A: Werner (d, η) mask and threshold-vs-d table.
    FIG1B: isotropic (d, α) mask and threshold-vs-d table.
    EX3: Horodecki-mixture (a, p) mask with undetected points listed.
    EX4: tiles-mixture p scan and bisected boundary.
    """

    FIG1A = "fig1a"
    FIG1B = "fig1b"
    EX3 = "ex3"
    EX4 = "ex4"


class EvaluationPath:
    """How a grid point was evaluated."""

    MATRIX = "matrix"
    CLOSED_FORM = "closed_form"


@dataclass(slots=True, frozen=True)
class ScanAxis:
    """
    One sorted parameter axis.

    :param name: Parameter name (``d``, ``eta``, ``alpha``, ``a``, ``p``).
    :param values: Sorted grid values.
    :param step: Grid resolution (0 for integer or single-point axes).
    """

    name: str
    values: tuple[float, ...]
    step: float = 0.0

    def __post_init__(self):
        if list(self.values) != sorted(self.values):
            raise ValueError(f"axis {self.name} values must be sorted")

    def __len__(self) -> int:
        return len(self.values)


@dataclass(slots=True, frozen=True)
class ScanRecord:
    """
    Verdicts at one grid point.

    :param parameters: Axis name → value, in axis order.
    :param witness: p/q value, or None for families without one.
    :param cond_lhs: Left side of the separability inequality.
    :param cond_rhs: Right side of the separability inequality.
    :param violated: Separability inequality verdict.
    :param ppt_npt: NPT verdict; None on the closed-form path.
    :param path: :class:`EvaluationPath` used.
    """

    parameters: tuple[tuple[str, float], ...]
    witness: float | None
    cond_lhs: float
    cond_rhs: float
    violated: bool
    ppt_npt: bool | None = None
    path: str = EvaluationPath.MATRIX

    def value(self, name: str) -> float:
        """Parameter value by axis name."""
        return dict(self.parameters)[name]


@dataclass(slots=True, frozen=True)
class Boundary:
    """
    Detection boundary along the last axis for one setting of the others.

    :param group: Fixed values of the leading axes (e.g. ``(("d", 4),)``).
    :param lower: Grid point on the undetected side.
    :param upper: Grid point on the detected side.
    :param estimate: Refined crossing (bisection) or bracket midpoint.
    :param resolution: Uncertainty of ``estimate``.
    :param method: ``"bisection"`` or ``"bracket"``.
    """

    group: tuple[tuple[str, float], ...]
    lower: float
    upper: float
    estimate: float
    resolution: float
    method: str


@dataclass(slots=True)
class ScanResult:
    """
    Complete outcome of a family grid scan.

    :param family: Scanned family.
    :param axes: Grid axes; the last axis is the one boundaries are searched along.
    :param records: One record per grid point in lexicographic axis order.
    :param boundaries: Detection boundaries per group.
    :param metadata: Free-form ``key → value`` lines written into output headers.
    """

    family: FamilyKind
    axes: tuple[ScanAxis, ...]
    records: list[ScanRecord] = field(default_factory=list)
    boundaries: list[Boundary] = field(default_factory=list)
    metadata: dict[str, str] = field(default_factory=dict)

    @property
    def expected_size(self) -> int:
        """Product of the axis lengths."""
        return math.prod(len(axis) for axis in self.axes)

    @property
    def detected_count(self) -> int:
        """Number of grid points where the separability inequality is violated."""
        return sum(1 for record in self.records if record.violated)
