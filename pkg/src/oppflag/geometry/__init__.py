"""Brute-force oracle: small projective and polar spaces, flags and opposition graphs."""

from .checks import (
    CheckReport,
    construction_kinds,
    construction_vertices,
    relation_matrices,
    sharp_construction,
    verify_construction,
    verify_equitable_blowup,
    verify_hecke_relations,
)
from .coclique import CocliqueResult, max_coclique
from .flags import Flag, enumerate_flags, flag_opposite
from .graph import OppositionGraph, build_opposition_graph
from .field import GF, field
from .space import Geometry, GeometrySpec, Subspace, enumerate_subspaces, geometry, is_opposite, spec_from_name
from .spectrum import SpectrumReport, predicted_for, verify_spectrum

__all__ = [
    "CheckReport",
    "CocliqueResult",
    "Flag",
    "GF",
    "Geometry",
    "GeometrySpec",
    "OppositionGraph",
    "SpectrumReport",
    "Subspace",
    "build_opposition_graph",
    "construction_kinds",
    "construction_vertices",
    "enumerate_flags",
    "enumerate_subspaces",
    "field",
    "flag_opposite",
    "geometry",
    "is_opposite",
    "max_coclique",
    "predicted_for",
    "relation_matrices",
    "sharp_construction",
    "spec_from_name",
    "verify_construction",
    "verify_equitable_blowup",
    "verify_hecke_relations",
    "verify_spectrum",
]
