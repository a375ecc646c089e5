"""
Data models for bipartite states, operator words, criteria and scans.

Re-exports the complete public model surface from all submodules so consumers
can import from ``evmsep.models`` without knowing the internal layout.
"""

from evmsep.models.criteria import (
    DEFAULT_TOLERANCES,
    CondResult,
    CriterionReport,
    PairTerm,
    PPTResult,
    Tolerances,
    WitnessValue,
)
from evmsep.models.errors import (
    ConvergenceError,
    DimMismatchError,
    DomainError,
    EvmsepError,
    IndexOutOfRangeError,
    NonSquareError,
    NormError,
    NotHermitianError,
    NotPSDError,
    NotPureError,
    NotSquareBipartiteError,
    StateFileError,
    StateValidationError,
    TraceNotOneError,
    ViolationType,
    WeightError,
)
from evmsep.models.family import FAMILY_PARAMETERS, OPTIONAL_PARAMETERS, FamilyKind, FamilySpec
from evmsep.models.format import ContainerKind, StateDocument
from evmsep.models.operators import DAGGER, ExpectationValueMatrix, OperatorWord, TransitionOperator
from evmsep.models.scan import Boundary, EvaluationPath, ReproduceTarget, ScanAxis, ScanRecord, ScanResult
from evmsep.models.state import KET_RENORM_WARN, BipartiteDims, ComplexMatrix, DensityMatrix, Ket

__all__ = [
    # criteria
    "Tolerances",
    "DEFAULT_TOLERANCES",
    "PPTResult",
    "CondResult",
    "PairTerm",
    "WitnessValue",
    "CriterionReport",
    # errors
    "EvmsepError",
    "ViolationType",
    "StateValidationError",
    "NotHermitianError",
    "TraceNotOneError",
    "NotPSDError",
    "NonSquareError",
    "DimMismatchError",
    "IndexOutOfRangeError",
    "WeightError",
    "NormError",
    "NotPureError",
    "NotSquareBipartiteError",
    "DomainError",
    "ConvergenceError",
    "StateFileError",
    # family
    "FamilyKind",
    "FamilySpec",
    "FAMILY_PARAMETERS",
    "OPTIONAL_PARAMETERS",
    # format
    "ContainerKind",
    "StateDocument",
    # operators
    "TransitionOperator",
    "OperatorWord",
    "ExpectationValueMatrix",
    "DAGGER",
    # scan
    "ScanAxis",
    "ScanRecord",
    "Boundary",
    "ScanResult",
    "EvaluationPath",
    "ReproduceTarget",
    # state
    "ComplexMatrix",
    "BipartiteDims",
    "Ket",
    "DensityMatrix",
    "KET_RENORM_WARN",
]
