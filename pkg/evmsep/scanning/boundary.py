"""
Estimates detection boundaries from scan records.

Along the last axis of every group (fixed values of the leading axes) the
first undetected→detected transition between adjacent grid points brackets
the boundary. The bracket is either reported as is or bisected using the same
evaluation path as the grid, so the estimate always lies between the two
grid points.
"""

import itertools
import logging

from evmsep.criteria import DEFAULT_THRESHOLD_TOL, bisect_detection
from evmsep.models.criteria import Tolerances
from evmsep.models.scan import Boundary, EvaluationPath, ScanRecord, ScanResult
from evmsep.scanning.registry import get_scan_family

__all__ = ["DEFAULT_BISECTION_TOL", "find_boundaries"]

_LOGGER = logging.getLogger(__name__)

DEFAULT_BISECTION_TOL = 1e-4


def _groups(result: ScanResult) -> list[tuple[tuple[tuple[str, float], ...], list[ScanRecord]]]:
    lead = len(result.axes) - 1
    return [
        (key, list(records))
        for key, records in itertools.groupby(result.records, key=lambda record: record.parameters[:lead])
    ]


def find_boundaries(
    result: ScanResult,
    tolerances: Tolerances,
    matrix_max_d: int,
    refine: bool = True,
    bisection_tol: float = DEFAULT_BISECTION_TOL,
) -> list[Boundary]:
    """
    Locates the detection boundary of each group.

    :param result: Scan with records in grid order.
    :param tolerances: Tolerances the grid was evaluated with.
    :param matrix_max_d: Matrix-path dimension limit the grid was evaluated with.
    :param refine: Bisect inside the bracket.
    :param bisection_tol: Bisection resolution on the matrix path; the closed-form path bisects to 1e-12.
    :return: One boundary per group that crosses, in group order.
    """
    family = get_scan_family(result.family)
    name = result.axes[-1].name
    boundaries = []
    for group, records in _groups(result):
        crossing = next(
            ((lower, upper) for lower, upper in itertools.pairwise(records) if not lower.violated and upper.violated),
            None,
        )
        if crossing is None:
            _LOGGER.debug("No detection crossing for %s.", group or "the scan")
            continue
        lower, upper = crossing
        lo, hi = lower.value(name), upper.value(name)
        if later := [r for r in records if r.value(name) > hi and not r.violated]:
            _LOGGER.debug("Verdict returns to undetected at %s=%g in %s.", name, later[0].value(name), group)
        if not refine:
            boundaries.append(Boundary(group, lo, hi, (lo + hi) / 2, (hi - lo) / 2, "bracket"))
            continue

        def detected(x: float, group=group) -> bool:
            return family.evaluate(group + ((name, x),), tolerances, matrix_max_d, with_ppt=False).violated

        tol = DEFAULT_THRESHOLD_TOL if upper.path == EvaluationPath.CLOSED_FORM else bisection_tol
        left, right = bisect_detection(detected, lo, hi, tol)
        boundaries.append(Boundary(group, lo, hi, (left + right) / 2, (right - left) / 2, "bisection"))
    return boundaries
