"""
evmsep: bipartite entanglement detection from expectation value matrices.

Builds density matrices and their transition-operator expectation value
matrices, and runs the purity, pure-product, PPT and separability-inequality
criteria on single states and on parametrized state families.
"""

from evmsep.criteria import analyze
from evmsep.evm import build_evm, evm_to_density
from evmsep.families import build
from evmsep.models.criteria import CriterionReport, Tolerances
from evmsep.models.family import FamilyKind, FamilySpec
from evmsep.models.state import BipartiteDims, DensityMatrix, Ket
from evmsep.states import validate
from evmsep.storage import read_evm, read_state, write_evm, write_state

__all__ = [
    "analyze",
    "build_evm",
    "evm_to_density",
    "build",
    "validate",
    "read_state",
    "read_evm",
    "write_state",
    "write_evm",
    "CriterionReport",
    "Tolerances",
    "FamilyKind",
    "FamilySpec",
    "BipartiteDims",
    "DensityMatrix",
    "Ket",
]
