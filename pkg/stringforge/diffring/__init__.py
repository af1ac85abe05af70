"""The differential ring of u, z and their x-derivatives."""

from .expr import D_expr, DiffExpr, factor_poly, poly_dx, poly_text
from .grading import NON_HOMOGENEOUS, NonHomogeneous, denominator_exponent, diff_weight, poly_degree
from .jets import JetRing, JetVariable, jet_name, jet_ring, jets_to_symbols
from .logcombo import LogCombo, d_x

__all__ = [
    "DiffExpr",
    "D_expr",
    "LogCombo",
    "JetRing",
    "JetVariable",
    "NonHomogeneous",
    "NON_HOMOGENEOUS",
    "d_x",
    "denominator_exponent",
    "diff_weight",
    "factor_poly",
    "jet_name",
    "jet_ring",
    "jets_to_symbols",
    "poly_degree",
    "poly_dx",
    "poly_text",
]
