"""
Shared encoding helpers for the state and EVM containers.

Matrices are stored row-major as ``[[[re, im], ...], ...]``. Reals are
written with 17 significant digits and read back through :class:`decimal.Decimal`
so parsing is exact up to the final rounding to binary floating point.
"""

import math
from decimal import Decimal, InvalidOperation
from pathlib import Path

import numpy as np

from evmsep.models.errors import StateFileError

__all__ = ["REAL_FORMAT", "format_real", "encode_matrix", "decode_matrix", "json_safe"]

REAL_FORMAT = ".17g"


def format_real(value: float) -> str:
    """
    Formats a real as a JSON number with 17 significant digits.

    :param value: Finite real.
    :return: Text such as ``0.48`` or ``-1.0000000000000001e-20``.
    """
    return format(float(value), REAL_FORMAT)


def encode_matrix(matrix: np.ndarray, indent: str = "  ") -> str:
    """
    Encodes a complex matrix as JSON text, one row per line.

    :param matrix: 2-D complex array.
    :param indent: Prefix of each row line.
    :return: JSON array text.
    """
    rows = []
    for row in np.asarray(matrix, dtype=np.complex128):
        cells = ", ".join(f"[{format_real(z.real)}, {format_real(z.imag)}]" for z in row)
        rows.append(f"{indent}  [{cells}]")
    return "[\n" + ",\n".join(rows) + f"\n{indent}]"


def _real(value, path: Path) -> float:
    if not isinstance(value, Decimal):
        raise StateFileError(path, f"expected a number, got {value!r}")
    try:
        return float(value)
    except (InvalidOperation, OverflowError) as exc:
        raise StateFileError(path, f"unreadable number {value!r}") from exc


def decode_matrix(raw, size: int, path: Path) -> np.ndarray:
    """
    Decodes a ``[[[re, im], ...], ...]`` table.

    :param raw: Parsed JSON value (numbers as :class:`Decimal`).
    :param size: Expected number of rows and columns.
    :param path: Source file, for error messages.
    :return: size × size complex array.
    """
    if not isinstance(raw, list) or len(raw) != size:
        raise StateFileError(path, f"matrix must have {size} rows")
    out = np.empty((size, size), dtype=np.complex128)
    for r, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != size:
            raise StateFileError(path, f"row {r} must have {size} entries")
        for c, cell in enumerate(row):
            if not isinstance(cell, list) or len(cell) != 2:
                raise StateFileError(path, f"entry ({r}, {c}) must be a [re, im] pair")
            out[r, c] = complex(_real(cell[0], path), _real(cell[1], path))
    return out


def json_safe(value):
    """
    Replaces non-finite floats by strings so the document stays strict JSON.

    :param value: Nested dict/list of plain values.
    :return: Same structure with ``inf``/``nan`` as ``"inf"``/``"nan"``.
    """
    if isinstance(value, dict):
        return {key: json_safe(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [json_safe(item) for item in value]
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    return value
