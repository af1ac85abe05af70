"""StringForge report models."""

from .base import StringForgeModel
from .reports import (
    CheckResult,
    ClosedFormCheck,
    ComparisonEntry,
    ComparisonReport,
    GradingEntry,
    GradingReport,
    MapCountRecord,
    OperatorRow,
    OperatorTerm,
    SeriesTerm,
    SolveReport,
    SpecializeReport,
    TableReport,
    VerificationReport,
)

__all__ = [
    "StringForgeModel",
    "CheckResult",
    "ClosedFormCheck",
    "ComparisonEntry",
    "ComparisonReport",
    "GradingEntry",
    "GradingReport",
    "MapCountRecord",
    "OperatorRow",
    "OperatorTerm",
    "SeriesTerm",
    "SolveReport",
    "SpecializeReport",
    "TableReport",
    "VerificationReport",
]
