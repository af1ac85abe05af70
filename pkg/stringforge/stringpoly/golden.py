"""The printed table of string polynomials up to weight 3, as data.

Each row is ``(lambda, eta, P_a, P_b)`` with operators given as
``(coeff, e_half, ds, dr)`` tuples; ``None`` marks a zero entry.
"""

from typing import Dict, List, Optional, Sequence, Tuple

from .operators import OperatorPoly
from .partitions import Partition

TermSpec = Tuple[str, int, int, int]
RowSpec = Tuple[str, str, Optional[Sequence[TermSpec]], Optional[Sequence[TermSpec]]]

GOLDEN_MAX_WEIGHT = 3

GOLDEN_ROWS: List[RowSpec] = [
    ("φ", "φ", [("1", 0, 0, 0)], None),
    ("1", "φ", None, [("-1/2", 2, 0, 1)]),
    ("φ", "1", [("1/2", 0, 0, 1)], None),
    ("2", "φ", [("1/6", 2, 1, 1)], [("1/6", 2, 2, 0), ("1/12", 2, 0, 1)]),
    ("1+1", "φ", [("1/12", 2, 2, 1)], [("1/12", 2, 3, 0), ("1/12", 2, 1, 1)]),
    ("1", "1", [("1/6", 0, 3, 0)], [("1/6", 2, 2, 1)]),
    ("φ", "2", [("1/6", 0, 2, 0), ("1/12", 0, 0, 1)], [("1/6", 2, 1, 1)]),
    ("φ", "1+1", [("1/12", -2, 2, 0), ("-1/12", -2, 0, 1), ("1/12", 0, 2, 1)], [("1/12", 0, 3, 0), ("-1/12", 0, 1, 1)]),
    ("3", "φ", None, [("-1/12", 2, 2, 0)]),
    ("2+1", "φ", None, [("-1/6", 2, 3, 0)]),
    ("1+1+1", "φ", None, [("-1/24", 2, 4, 0)]),
    ("2", "1", [("1/12", 0, 3, 0)], [("-1/12", 2, 2, 1)]),
    ("1+1", "1", [("1/24", 0, 4, 0)], [("-1/12", 2, 3, 1)]),
    ("1", "2", [("1/12", 0, 3, 0)], [("-1/12", 2, 2, 1)]),
    ("1", "1+1", [("1/12", 0, 3, 1)], [("-1/24", 0, 4, 0), ("1/24", 0, 2, 1)]),
    ("φ", "3", [("1/12", 0, 2, 0)], None),
    ("φ", "2+1", [("1/6", 0, 2, 1)], None),
    ("φ", "1+1+1", [("1/24", -2, 4, 0), ("-1/24", -2, 2, 1)], None),
]

CellKey = Tuple[Partition, Partition, str]


def _operator(spec: Optional[Sequence[TermSpec]]) -> OperatorPoly:
    if not spec:
        return OperatorPoly.zero()
    return OperatorPoly.from_terms(spec)


def golden_entries() -> Dict[CellKey, OperatorPoly]:
    """Every printed cell keyed by ``(lambda, eta, variant)``."""
    entries: Dict[CellKey, OperatorPoly] = {}
    for lam_text, eta_text, p_a, p_b in GOLDEN_ROWS:
        lam, eta = Partition.from_text(lam_text), Partition.from_text(eta_text)
        entries[(lam, eta, "a")] = _operator(p_a)
        entries[(lam, eta, "b")] = _operator(p_b)
    return entries


def compare_with_golden(entries: Dict[CellKey, OperatorPoly]) -> List[str]:
    """Describe every printed cell the given entries disagree with.

    Cells absent from ``entries`` are skipped, so a table generated to a
    smaller weight compares on its own rows only.
    """
    mismatches: List[str] = []
    for key, expected in golden_entries().items():
        if key not in entries:
            continue
        actual = entries[key]
        if actual != expected:
            lam, eta, variant = key
            mismatches.append(
                f"P^({variant})[{lam}, {eta}]: expected {expected.to_text()}, got {actual.to_text()}"
            )
    return mismatches


__all__ = ["GOLDEN_ROWS", "GOLDEN_MAX_WEIGHT", "golden_entries", "compare_with_golden"]
