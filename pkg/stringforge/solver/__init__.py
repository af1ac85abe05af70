"""Continuum string equations and their genus-by-genus solution."""

from .assembly import Backend, LinearEquation, StringEquations, SymbolicBackend, continuum_equation, residual, string_source
from .genus import build_table, check_backsubstitution, grading_check, odd_relation, odd_u, solve_genus
from .table import GenusTable

__all__ = [
    "Backend",
    "GenusTable",
    "LinearEquation",
    "StringEquations",
    "SymbolicBackend",
    "build_table",
    "check_backsubstitution",
    "continuum_equation",
    "grading_check",
    "odd_relation",
    "odd_u",
    "residual",
    "solve_genus",
    "string_source",
]
