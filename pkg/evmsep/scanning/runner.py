"""
Evaluates family grids, optionally across worker processes.

Every grid point is independent. Results are gathered in grid order, never
in completion order, so output does not depend on the worker count.
"""

import itertools
import logging
import multiprocessing
from typing import Iterator

from evmsep.models.criteria import DEFAULT_TOLERANCES, Tolerances
from evmsep.models.family import FamilyKind
from evmsep.models.scan import EvaluationPath, ScanAxis, ScanRecord, ScanResult
from evmsep.scanning.boundary import DEFAULT_BISECTION_TOL, find_boundaries
from evmsep.scanning.registry import DEFAULT_MATRIX_PATH_MAX_D, Point, get_scan_family

__all__ = ["GridScanner", "grid_points"]

_LOGGER = logging.getLogger(__name__)

# A single picklable unit of work handed to a multiprocessing worker.
_WorkItem = tuple[FamilyKind, Point, Tolerances, int, bool]


def _worker_entry_point(args: _WorkItem) -> ScanRecord:
    """
    Worker process entry point for grid evaluation.

    :param args: Tuple of (family kind, point, tolerances, matrix_max_d, with_ppt).
    :return: Record for the point.
    """
    kind, point, tolerances, matrix_max_d, with_ppt = args
    return get_scan_family(kind).evaluate(point, tolerances, matrix_max_d, with_ppt)


def grid_points(axes: tuple[ScanAxis, ...]) -> Iterator[Point]:
    """
    Grid points in lexicographic axis order (last axis fastest).

    :param axes: Scan axes.
    :return: Iterator of (name, value) tuples.
    """
    names = [axis.name for axis in axes]
    for values in itertools.product(*(axis.values for axis in axes)):
        yield tuple(zip(names, values))


def _describe_axis(axis: ScanAxis) -> str:
    if len(axis) == 1:
        return f"{axis.values[0]:.12g}"
    if axis.step:
        return f"{axis.values[0]:.12g}:{axis.values[-1]:.12g}:{axis.step:.12g} ({len(axis)} points)"
    return f"{len(axis)} values in [{axis.values[0]:.12g}, {axis.values[-1]:.12g}]"


class GridScanner:
    """
    Scans one family over a parameter grid.

    The matrix path is used up to ``matrix_max_d``; families with a closed form
    switch to it beyond that dimension.
    """

    def __init__(
        self,
        family: FamilyKind | str,
        axes: tuple[ScanAxis, ...],
        tolerances: Tolerances = DEFAULT_TOLERANCES,
        matrix_max_d: int = DEFAULT_MATRIX_PATH_MAX_D,
        with_ppt: bool = True,
    ):
        """
        :param family: Family to scan.
        :param axes: Axes in the family's parameter order.
        :param tolerances: Verdict tolerances.
        :param matrix_max_d: Largest local dimension evaluated on the matrix path.
        :param with_ppt: Run the PPT test on matrix-path points.
        """
        self.family = get_scan_family(family)
        self.family.check_axes(axes)
        self.axes = axes
        self.tolerances = tolerances
        self.matrix_max_d = matrix_max_d
        self.with_ppt = with_ppt

    def metadata(self) -> dict[str, str]:
        """Header lines describing the scan."""
        meta = {"family": self.family.kind.value}
        for axis in self.axes:
            meta[f"axis {axis.name}"] = _describe_axis(axis)
        meta["tolerance"] = f"{self.tolerances.violation:.3g}"
        if self.family.closed_form({axis.name: axis.values[0] for axis in self.axes}) is None:
            meta["path"] = EvaluationPath.MATRIX
        else:
            meta["path"] = f"{EvaluationPath.MATRIX} for d <= {self.matrix_max_d}, {EvaluationPath.CLOSED_FORM} above"
        meta["ppt"] = "matrix path only" if self.with_ppt else "off"
        if self.family.witness_name:
            meta["witness"] = self.family.witness_name
        return meta

    def run(
        self, num_workers: int = 1, refine: bool = True, bisection_tol: float = DEFAULT_BISECTION_TOL
    ) -> ScanResult:
        """
        Evaluates every grid point and estimates the detection boundaries.

        :param num_workers: Worker processes; 1 evaluates inline.
        :param refine: Bisect each bracketed boundary instead of reporting the bracket midpoint.
        :param bisection_tol: Bisection resolution on the matrix path.
        :return: Records in grid order plus boundaries.
        """
        work_items: list[_WorkItem] = [
            (self.family.kind, point, self.tolerances, self.matrix_max_d, self.with_ppt)
            for point in grid_points(self.axes)
        ]
        _LOGGER.info(
            "Scanning %s over %d points with %d worker(s).", self.family.kind.value, len(work_items), num_workers
        )
        if num_workers > 1:
            with multiprocessing.Pool(processes=num_workers) as pool:
                chunksize = max(1, len(work_items) // (8 * num_workers))
                records = list(pool.imap(_worker_entry_point, work_items, chunksize=chunksize))
        else:
            records = [_worker_entry_point(item) for item in work_items]

        result = ScanResult(self.family.kind, self.axes, records, metadata=self.metadata())
        result.boundaries = find_boundaries(
            result, self.tolerances, self.matrix_max_d, refine=refine, bisection_tol=bisection_tol
        )
        _LOGGER.info(
            "Scan finished: %d of %d points detected, %d boundar%s.",
            result.detected_count,
            len(records),
            len(result.boundaries),
            "y" if len(result.boundaries) == 1 else "ies",
        )
        return result
