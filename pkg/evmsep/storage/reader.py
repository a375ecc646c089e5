"""
Reads state and EVM container files.

Parsing and validation are separate phases: :func:`load_document` only checks
the container structure, while :func:`read_state` and :func:`read_evm` also
enforce the density-matrix invariants.
"""

import json
import logging
from decimal import Decimal
from pathlib import Path

from evmsep.evm import evm_labels, evm_to_density
from evmsep.models.errors import DimMismatchError, StateFileError
from evmsep.models.format import ContainerKind, StateDocument
from evmsep.models.operators import ExpectationValueMatrix
from evmsep.models.state import BipartiteDims, DensityMatrix
from evmsep.states import DEFAULT_STATE_TOL, validate
from evmsep.storage.common import decode_matrix

__all__ = ["load_document", "read_state", "read_evm"]

_LOGGER = logging.getLogger(__name__)


def _dims(raw, path: Path) -> BipartiteDims:
    if not isinstance(raw, list) or len(raw) != 2:
        raise StateFileError(path, "dims must be a [d1, d2] pair")
    if any(not isinstance(d, Decimal) or d != d.to_integral_value() for d in raw):
        raise StateFileError(path, f"dims must be integers, got {raw}")
    try:
        return BipartiteDims(int(raw[0]), int(raw[1]))
    except DimMismatchError as exc:
        raise StateFileError(path, str(exc)) from exc


def _labels(raw, size: int, path: Path) -> tuple[tuple[str, ...], ...]:
    if not isinstance(raw, list) or len(raw) != size:
        raise StateFileError(path, f"labels must have {size} rows")
    table = []
    for r, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != size or not all(isinstance(x, str) for x in row):
            raise StateFileError(path, f"label row {r} must hold {size} strings")
        table.append(tuple(row))
    return tuple(table)


def load_document(path: str | Path) -> StateDocument:
    """
    Parses a container file without validating the matrix.

    :param path: File to read.
    :return: Parsed document.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise StateFileError(path, f"cannot read file: {exc.strerror}") from exc
    try:
        raw = json.loads(text, parse_float=Decimal, parse_int=Decimal)
    except json.JSONDecodeError as exc:
        raise StateFileError(path, f"invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(raw, dict):
        raise StateFileError(path, "top level must be an object")

    try:
        kind = ContainerKind(raw.get("format", ContainerKind.STATE.value))
    except ValueError as exc:
        raise StateFileError(path, f"unknown format {raw.get('format')!r}") from exc
    for required in ("dims", "matrix"):
        if required not in raw:
            raise StateFileError(path, f"missing field {required!r}")

    dims = _dims(raw["dims"], path)
    document = StateDocument(
        kind=kind,
        dims=dims,
        matrix=decode_matrix(raw["matrix"], dims.size, path),
        provenance=_plain(raw.get("provenance")),
        report=_plain(raw.get("report")),
    )
    if kind is ContainerKind.EVM:
        if "labels" not in raw:
            raise StateFileError(path, "EVM file without a labels table")
        document.labels = _labels(raw["labels"], dims.size, path)
    _LOGGER.debug("Loaded %s document %s with dims (%d, %d).", kind.value, path, dims.d1, dims.d2)
    return document


def _plain(value):
    """Converts Decimal leaves of an optional header object to int/float."""
    if isinstance(value, dict):
        return {key: _plain(item) for key, item in value.items()}
    if isinstance(value, list):
        return [_plain(item) for item in value]
    if isinstance(value, Decimal):
        return int(value) if value == value.to_integral_value() and "." not in str(value) else float(value)
    return value


def read_state(path: str | Path, tol: float = DEFAULT_STATE_TOL) -> tuple[DensityMatrix, StateDocument]:
    """
    Reads and validates a state file.

    An EVM file is accepted too and mapped back to its density matrix.

    :param path: File to read.
    :param tol: Validation tolerance.
    :return: The validated state and the parsed document.
    """
    document = load_document(path)
    if document.kind is ContainerKind.EVM:
        return evm_to_density(_to_evm(document, Path(path)), tol), document
    return validate(document.matrix, document.dims, tol), document


def _to_evm(document: StateDocument, path: Path) -> ExpectationValueMatrix:
    expected = evm_labels(document.dims)
    for r, row in enumerate(document.labels or ()):
        for c, label in enumerate(row):
            if label != expected[r][c]:
                raise StateFileError(path, f"label at ({r}, {c}) is {label!r}, expected {expected[r][c]!r}")
    return ExpectationValueMatrix(document.dims, document.matrix, expected)


def read_evm(path: str | Path) -> ExpectationValueMatrix:
    """
    Reads an EVM file, checking that every label is canonical for its position.

    :param path: File to read.
    :return: Expectation value matrix (not validated as a state).
    """
    path = Path(path)
    document = load_document(path)
    if document.kind is not ContainerKind.EVM:
        raise StateFileError(path, f"expected an EVM file, got {document.kind.value}")
    return _to_evm(document, path)
