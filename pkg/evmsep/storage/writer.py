"""Writes state and EVM container files."""

import json
import logging
from pathlib import Path

from evmsep.models.format import ContainerKind
from evmsep.models.operators import ExpectationValueMatrix
from evmsep.models.state import BipartiteDims, DensityMatrix
from evmsep.storage.common import encode_matrix, json_safe

__all__ = ["dumps_state", "dumps_evm", "write_state", "write_evm"]

_LOGGER = logging.getLogger(__name__)


def _dumps(
    kind: ContainerKind,
    dims: BipartiteDims,
    matrix,
    provenance: dict | None = None,
    report: dict | None = None,
    labels: tuple[tuple[str, ...], ...] | None = None,
) -> str:
    fields = [f'"format": {json.dumps(kind.value)}', f'"dims": [{dims.d1}, {dims.d2}]']
    if provenance is not None:
        fields.append(f'"provenance": {json.dumps(json_safe(provenance), ensure_ascii=False)}')
    if report is not None:
        fields.append(f'"report": {json.dumps(json_safe(report), ensure_ascii=False)}')
    fields.append(f'"matrix": {encode_matrix(matrix)}')
    if labels is not None:
        rows = ",\n".join(f"    {json.dumps(list(row), ensure_ascii=False)}" for row in labels)
        fields.append(f'"labels": [\n{rows}\n  ]')
    return "{\n" + ",\n".join(f"  {f}" for f in fields) + "\n}\n"


def dumps_state(rho: DensityMatrix, provenance: dict | None = None, report: dict | None = None) -> str:
    """
    Serializes a state.

    :param rho: State.
    :param provenance: Family header, see :meth:`FamilySpec.provenance`.
    :param report: Analysis report, see :meth:`CriterionReport.as_dict`.
    :return: JSON document text.
    """
    return _dumps(ContainerKind.STATE, rho.dims, rho.mat, provenance, report)


def dumps_evm(evm: ExpectationValueMatrix, provenance: dict | None = None) -> str:
    """Serializes an expectation value matrix with its label table."""
    return _dumps(ContainerKind.EVM, evm.dims, evm.entries, provenance, labels=evm.word_labels)


def write_state(
    path: str | Path, rho: DensityMatrix, provenance: dict | None = None, report: dict | None = None
) -> Path:
    """
    Writes a state file.

    :param path: Destination.
    :param rho: State.
    :param provenance: Optional family header.
    :param report: Optional analysis report.
    :return: The written path.
    """
    path = Path(path)
    path.write_text(dumps_state(rho, provenance, report), encoding="utf-8")
    _LOGGER.info("Wrote state to %s.", path)
    return path


def write_evm(path: str | Path, evm: ExpectationValueMatrix, provenance: dict | None = None) -> Path:
    """
    Writes an EVM file.

    :param path: Destination.
    :param evm: Expectation value matrix.
    :param provenance: Optional family header.
    :return: The written path.
    """
    path = Path(path)
    path.write_text(dumps_evm(evm, provenance), encoding="utf-8")
    _LOGGER.info("Wrote expectation value matrix to %s.", path)
    return path
