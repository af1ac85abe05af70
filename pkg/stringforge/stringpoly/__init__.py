"""String polynomials: operators in ds, dr and their generation."""

from .generation import AnsatzBounds, StringTable, generate_table, string_operator, verify_table
from .golden import GOLDEN_ROWS, compare_with_golden, golden_entries
from .identities import check_identities
from .operators import OperatorPoly, apply, generator, laurent_to_poly, reduce_mod_I, rho_laurent
from .partitions import EMPTY, Partition, partition_pairs, partitions_of

__all__ = [
    "AnsatzBounds",
    "EMPTY",
    "GOLDEN_ROWS",
    "OperatorPoly",
    "Partition",
    "StringTable",
    "apply",
    "check_identities",
    "compare_with_golden",
    "generate_table",
    "generator",
    "golden_entries",
    "laurent_to_poly",
    "partition_pairs",
    "partitions_of",
    "reduce_mod_I",
    "rho_laurent",
    "string_operator",
    "verify_table",
]
