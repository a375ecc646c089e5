"""Defines the serialized state container."""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from evmsep.models.state import BipartiteDims

__all__ = ["ContainerKind", "StateDocument"]


class ContainerKind(Enum):
    """
    Enumeration of supported container documents.

    STATE: a density matrix, optionally with provenance and an analysis report.
    EVM: an expectation value matrix with its word-label table.
    """

    STATE = "evmsep-state"
    EVM = "evmsep-evm"


@dataclass(slots=True)
class StateDocument:
    """
    Parsed contents of a state or EVM file.

    :param kind: Container kind.
    :param dims: Subsystem dimensions.
    :param matrix: Complex matrix, unvalidated.
    :param provenance: ``{"kind": ..., "d": ..., "parameters": {...}}`` when the state came from a family.
    :param report: Analysis report attached by ``analyze --json``.
    :param labels: Word-label table (EVM files only).
    """

    kind: ContainerKind
    dims: BipartiteDims
    matrix: np.ndarray
    provenance: dict | None = None
    report: dict | None = None
    labels: tuple[tuple[str, ...], ...] | None = field(default=None)
