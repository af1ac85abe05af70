"""
StringForge

Exact string equations of asymmetric one-matrix potentials, their genus
corrections and free energies, and the map counts those generate.
"""

__version__ = "0.1.0"
__author__ = "StringForge Developers"

# Configuration
from .config import EngineConfig, get_default_config, resolve_config, set_default_config

# Exceptions
from .exceptions import (
    GenerationError,
    InputError,
    PotentialSyntaxError,
    SeriesError,
    StringForgeError,
    TooLarge,
    VerificationFailure,
    exit_code_for,
)

# Logging
from .logging import get_logger, setup_logging, time_operation

# Differential ring
from .diffring import D_expr, DiffExpr, JetRing, LogCombo, jet_ring

# String operators
from .motzkin import enumerate_paths, modified_string_poly, path_count
from .stringpoly import StringTable, generate_table, string_operator, verify_table
from .phipsi import check_unwinding, phi_psi

# Genus expansion
from .solver import GenusTable, build_table, check_backsubstitution, grading_check, solve_genus
from .genfun import FreeEnergy, cumulant, free_energy, free_energy_relation, verify_closed_form
from .closed_forms import closed_form

# Concrete potentials and map counts
from .specialize import CouplingSeries, Potential, free_energy_series, leading_order_series, map_count
from .oracle import compare, count_by_faces, enumerate_maps

# Verification
from .verify import run_verification

__all__ = [
    # Version info
    "__version__",
    "__author__",
    # Configuration
    "EngineConfig",
    "get_default_config",
    "resolve_config",
    "set_default_config",
    # Exceptions
    "StringForgeError",
    "InputError",
    "PotentialSyntaxError",
    "TooLarge",
    "GenerationError",
    "SeriesError",
    "VerificationFailure",
    "exit_code_for",
    # Logging
    "get_logger",
    "setup_logging",
    "time_operation",
    # Differential ring
    "DiffExpr",
    "D_expr",
    "JetRing",
    "LogCombo",
    "jet_ring",
    # String operators
    "enumerate_paths",
    "modified_string_poly",
    "path_count",
    "StringTable",
    "generate_table",
    "string_operator",
    "verify_table",
    "check_unwinding",
    "phi_psi",
    # Genus expansion
    "GenusTable",
    "build_table",
    "check_backsubstitution",
    "grading_check",
    "solve_genus",
    "FreeEnergy",
    "cumulant",
    "free_energy",
    "free_energy_relation",
    "verify_closed_form",
    "closed_form",
    # Concrete potentials
    "CouplingSeries",
    "Potential",
    "free_energy_series",
    "leading_order_series",
    "map_count",
    "compare",
    "count_by_faces",
    "enumerate_maps",
    # Verification
    "run_verification",
]
