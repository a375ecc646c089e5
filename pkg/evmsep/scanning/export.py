"""
CSV output for scans and reproduction tables.

Files start with ``# key: value`` metadata lines, then one header row.
Reals are written with 12 significant digits, booleans as 0/1 and missing
values as empty cells.
"""

import csv
import logging
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from evmsep.models.scan import ScanResult

__all__ = ["CSV_FORMAT", "format_cell", "write_table", "write_scan", "write_boundaries", "boundaries_path"]

_LOGGER = logging.getLogger(__name__)

CSV_FORMAT = ".12g"

_RECORD_COLUMNS = ("witness", "cond_lhs", "cond_rhs", "violated", "ppt_npt")
_BOUNDARY_COLUMNS = ("lower", "upper", "estimate", "resolution", "method")


def format_cell(value) -> str:
    """
    Formats one CSV cell.

    :param value: None, bool, int, float or str.
    :return: Cell text.
    """
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, (float, np.floating)):
        return format(float(value), CSV_FORMAT)
    return str(value)


def write_table(
    path: str | Path, header: Sequence[str], rows: Iterable[Sequence], metadata: dict[str, str] | None = None
) -> Path:
    """
    Writes a CSV table with optional metadata lines.

    :param path: Destination.
    :param header: Column names.
    :param rows: Row values, formatted with :func:`format_cell`.
    :param metadata: ``# key: value`` lines written before the header.
    :return: The written path.
    """
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as handle:
        for key, value in (metadata or {}).items():
            handle.write(f"# {key}: {value}\n")
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        count = 0
        for row in rows:
            writer.writerow([format_cell(value) for value in row])
            count += 1
    _LOGGER.info("Wrote %d row(s) to %s.", count, path)
    return path


def write_scan(result: ScanResult, path: str | Path) -> Path:
    """
    Writes the per-point records of a scan.

    :param result: Scan result.
    :param path: Destination.
    :return: The written path.
    """
    header = [axis.name for axis in result.axes] + list(_RECORD_COLUMNS)
    rows = (
        [value for _, value in record.parameters]
        + [record.witness, record.cond_lhs, record.cond_rhs, record.violated, record.ppt_npt]
        for record in result.records
    )
    return write_table(path, header, rows, result.metadata)


def boundaries_path(path: str | Path) -> Path:
    """``<stem>.boundaries.csv`` next to a scan file."""
    path = Path(path)
    return path.with_name(f"{path.stem}.boundaries.csv")


def write_boundaries(result: ScanResult, path: str | Path) -> Path:
    """
    Writes the boundary table of a scan.

    :param result: Scan result.
    :param path: Destination.
    :return: The written path.
    """
    header = [axis.name for axis in result.axes[:-1]] + [f"{result.axes[-1].name}_{c}" for c in _BOUNDARY_COLUMNS]
    rows = (
        [value for _, value in boundary.group]
        + [boundary.lower, boundary.upper, boundary.estimate, boundary.resolution, boundary.method]
        for boundary in result.boundaries
    )
    return write_table(path, header, rows, result.metadata)
