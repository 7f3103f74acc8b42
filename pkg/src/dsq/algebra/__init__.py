"""Finite operation tables and exhaustive checks of the axiom systems."""
from .tables import (
    DisingquandleTable,
    GFamily,
    Group,
    OperationTable,
    StructureError,
    cyclic_group,
    symmetric_group,
)
from .checks import (
    AxiomReport,
    InvalidStructureError,
    Violation,
    check_disingquandle,
    check_g_family,
    check_involutive_quandle,
    check_quandle,
    check_singquandle,
    induced_quandle,
)
from .morphisms import (
    StructureMap,
    check_homomorphism,
    enumerate_homs,
    image_substructure,
    is_isomorphism,
    is_sub_disingquandle,
)
from .search import enumerate_disingquandles, search_affine
from .io import ParseError, format_gfamily, format_structure, parse_gfamily, parse_structure

__all__ = [
    "AxiomReport", "DisingquandleTable", "GFamily", "Group", "InvalidStructureError",
    "OperationTable", "ParseError", "StructureError", "StructureMap", "Violation",
    "check_disingquandle", "check_g_family", "check_homomorphism", "check_involutive_quandle",
    "check_quandle", "check_singquandle", "cyclic_group", "enumerate_disingquandles",
    "enumerate_homs", "format_gfamily", "format_structure", "image_substructure",
    "induced_quandle", "is_isomorphism", "is_sub_disingquandle", "parse_gfamily",
    "parse_structure", "search_affine", "symmetric_group",
]
