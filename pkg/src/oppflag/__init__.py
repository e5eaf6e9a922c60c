"""Eigenvalues of opposition and EKR bounds for flags of projective and polar spaces."""

from .budget import BudgetExceeded
from .chars import BiPartitionLabel, induce_trivial
from .hecke import (
    BoundReport,
    OppositionEigenvalue,
    StructureConstants,
    count_flags,
    eigenvalues_partial,
    ekr_bound,
    polar_single_type_spectrum,
)
from .weyl import SignedPermutation, WeylDescriptor

__version__ = "0.1.0"

__all__ = [
    "BiPartitionLabel",
    "BoundReport",
    "BudgetExceeded",
    "OppositionEigenvalue",
    "SignedPermutation",
    "StructureConstants",
    "WeylDescriptor",
    "count_flags",
    "eigenvalues_partial",
    "ekr_bound",
    "induce_trivial",
    "polar_single_type_spectrum",
]
