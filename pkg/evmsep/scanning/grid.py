"""
Parses scan axis specifications.

Real axes are written ``LO:HI:STEP`` (inclusive of HI when it lies on the
grid) or as a single value; integer axes as ``A..B`` or a single integer.
Grid values are computed as ``LO + i·STEP`` and rounded to 12 decimals so
repeated runs and CSV output stay stable.
"""

import math
import re

from evmsep.models.errors import DomainError
from evmsep.models.scan import ScanAxis

__all__ = [
    "DEFAULT_STEP_1D",
    "DEFAULT_STEP_2D",
    "MAX_AXIS_POINTS",
    "parse_range",
    "parse_int_range",
    "unit_axis",
    "with_values",
]

DEFAULT_STEP_1D = 0.005
DEFAULT_STEP_2D = 0.02
#: Largest number of values a parsed real axis may hold.
MAX_AXIS_POINTS = 100_000

_GRID_DECIMALS = 12
_GRID_SLACK = 1e-9
_UNIT_AXES = frozenset({"eta", "alpha", "a", "p"})
_INT_RANGE = re.compile(r"^\s*(\d+)\s*(?:\.\.\s*(\d+)\s*)?$")


def _check_unit(name: str, values: tuple[float, ...]) -> None:
    if name in _UNIT_AXES:
        for value in values:
            if not 0 <= value <= 1:
                raise DomainError(f"{name}={value} outside [0, 1]")


def parse_range(name: str, text: str) -> ScanAxis:
    """
    Parses a real axis.

    :param name: Axis name.
    :param text: ``LO:HI:STEP`` or a single number.
    :return: Sorted axis.
    :raises DomainError: On malformed text, non-finite numbers, a non-positive step, too many points or
        out-of-range values.
    """
    parts = text.split(":")
    try:
        numbers = [float(part) for part in parts]
    except ValueError as exc:
        raise DomainError(f"cannot parse {name} axis {text!r}; expected LO:HI:STEP") from exc
    if not all(math.isfinite(number) for number in numbers):
        raise DomainError(f"{name} axis {text!r} has a non-finite value")
    if len(numbers) == 1:
        axis = ScanAxis(name, (numbers[0],))
    elif len(numbers) == 3:
        lo, hi, step = numbers
        if step <= 0 or hi < lo:
            raise DomainError(f"{name} axis {text!r} needs LO <= HI and STEP > 0")
        intervals = (hi - lo) / step + _GRID_SLACK
        if not intervals < MAX_AXIS_POINTS:
            raise DomainError(f"{name} axis {text!r} has more than {MAX_AXIS_POINTS} points")
        count = math.floor(intervals) + 1
        axis = ScanAxis(name, tuple(round(lo + i * step, _GRID_DECIMALS) for i in range(count)), step)
    else:
        raise DomainError(f"cannot parse {name} axis {text!r}; expected LO:HI:STEP")
    _check_unit(name, axis.values)
    return axis


def parse_int_range(name: str, text: str) -> ScanAxis:
    """
    Parses an integer axis.

    :param name: Axis name (``d``).
    :param text: ``A..B`` or a single integer.
    :return: Axis A, A+1, ..., B.
    :raises DomainError: On malformed text, B < A or a dimension below 2.
    """
    match = _INT_RANGE.match(text)
    if match is None:
        raise DomainError(f"cannot parse {name} axis {text!r}; expected A..B")
    lo = int(match.group(1))
    hi = int(match.group(2)) if match.group(2) is not None else lo
    if hi < lo:
        raise DomainError(f"{name} axis {text!r} is empty")
    if name == "d" and lo < 2:
        raise DomainError(f"dimension must be >= 2, got {lo}")
    return ScanAxis(name, tuple(range(lo, hi + 1)), 1 if hi > lo else 0)


def unit_axis(name: str, step: float, lo: float = 0.0) -> ScanAxis:
    """Default ``lo:1:step`` axis for a parameter in [0, 1]."""
    return parse_range(name, f"{lo}:1:{step}")


def with_values(axis: ScanAxis, extra: tuple[float, ...]) -> ScanAxis:
    """
    Adds sample values to an axis.

    :param axis: Base axis.
    :param extra: Values to merge in.
    :return: Sorted axis without duplicates; the step is kept for reporting.
    """
    _check_unit(axis.name, extra)
    return ScanAxis(axis.name, tuple(sorted(set(axis.values) | set(extra))), axis.step)
