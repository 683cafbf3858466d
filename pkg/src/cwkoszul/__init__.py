"""Koszulity of layered-graph dual algebras, decided by exact cellular cohomology."""

__version__ = "0.1.0"

from .bigraded import (
    cellular_cohomology,
    hx_table,
    koszul_obstructions,
    relative_cohomology,
)
from .catalog import catalog, catalog_names
from .cw import RegularCWComplex, complex_from_dict
from .dualalg import (
    annihilator_check,
    comparison_iso_check,
    graded_dims,
    koszul_decide,
)
from .layered import LayeredGraph, graph_from_dict
from .linalg import GF, QQ, ZZ, SparseExactMatrix, field_from_spec

__all__ = [
    "GF",
    "QQ",
    "ZZ",
    "LayeredGraph",
    "RegularCWComplex",
    "SparseExactMatrix",
    "annihilator_check",
    "catalog",
    "catalog_names",
    "cellular_cohomology",
    "comparison_iso_check",
    "complex_from_dict",
    "field_from_spec",
    "graded_dims",
    "graph_from_dict",
    "hx_table",
    "koszul_decide",
    "koszul_obstructions",
    "relative_cohomology",
]
