"""Genus-by-genus solution of the continuum string equations."""

from fractions import Fraction
from math import factorial
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..algebra.rational import bernoulli
from ..diffring import NON_HOMOGENEOUS, D_expr, DiffExpr, JetRing, denominator_exponent, diff_weight, jet_ring, poly_degree
from ..logging import get_logger, time_operation
from ..models import GradingEntry, GradingReport
from ..utils.serializers import format_fraction
from .assembly import OperatorSource, StringEquations, SymbolicBackend, check_prerequisites, string_source
from .table import GenusTable

logger = get_logger(__name__)


def solve_genus(g: int, table: GenusTable, operators: Optional[OperatorSource] = None) -> Tuple[DiffExpr, DiffExpr]:
    """``(z_g, u_2g)`` from the order ``N^-2g`` equations of both variants."""
    if g < 1:
        raise ValueError("genus must be at least 1")
    check_prerequisites(g, table)
    equations = StringEquations(SymbolicBackend(table), operators or string_source(2 * g))
    with time_operation("solve_genus", {"genus": g}):
        z_g, u_2g = equations.solve(g)
    logger.info("Solved genus", genus=g, z_terms=len(z_g.num), u_terms=len(u_2g.num))
    return z_g, u_2g


def odd_relation(lower: Sequence[Any]) -> Any:
    """``u_n = -sum_{m=1}^{n} B_m/m! d^m u_{n-m}`` given ``lower = [u_0, ..., u_{n-1}]``.

    Works for any values with ``d_x`` and rational scaling.
    """
    n = len(lower)
    total = None
    for m in range(1, n + 1):
        weight = bernoulli(m) / factorial(m)
        if not weight:
            continue
        value = lower[n - m]
        for _ in range(m):
            value = value.d_x()
        term = value * (-weight)
        total = term if total is None else total + term
    return total


def odd_u(g: int, table: GenusTable) -> DiffExpr:
    """``u_{2g+1}`` from ``u_0, ..., u_2g``; ``u_1 = u'/2``."""
    if g < 0:
        raise ValueError("genus must be non-negative")
    return odd_relation([table.get_u(k) for k in range(2 * g + 1)])


def build_table(
    max_genus: int,
    jets: Optional[JetRing] = None,
    operators: Optional[OperatorSource] = None,
    workers: int = 1,
) -> GenusTable:
    """``u_1`` and then ``z_g, u_2g, u_{2g+1}`` for ``g = 1..max_genus``."""
    table = GenusTable(jets=jets or jet_ring())
    table.u[1] = odd_u(0, table)
    if max_genus < 1:
        return table
    operators = operators or string_source(2 * max_genus, workers)
    for g in range(1, max_genus + 1):
        z_g, u_2g = solve_genus(g, table, operators)
        table.z[g] = z_g
        table.u[2 * g] = u_2g
        table.u[2 * g + 1] = odd_u(g, table)
    return table


def check_backsubstitution(table: GenusTable, operators: Optional[OperatorSource] = None) -> Dict[str, bool]:
    """Residuals of both variants at every order the table covers.

    Keys look like ``"N^-2 a"``; a value is True when the residual is 0.
    """
    top = 2 * table.max_genus + 1
    operators = operators or string_source(top)
    equations = StringEquations(SymbolicBackend(table), operators)
    results: Dict[str, bool] = {}
    for order in range(top + 1):
        for variant in ("a", "b"):
            results[f"N^-{order} {variant}"] = not equations.residual(order, variant)
    return results


def _grade_text(value: Any) -> Optional[str]:
    if value is None:
        return None
    if value is NON_HOMOGENEOUS:
        return "non-homogeneous"
    return format_fraction(value)


def _bounds(key: str) -> Tuple[Fraction, int, int]:
    """Expected ``(degree, weight, denominator bound)`` for an entry key."""
    index = int(key[1:])
    if key[0] == "z":
        return Fraction(1), 2 * index, 8 * index - 3
    g = index // 2
    if index % 2 == 0:
        return Fraction(1, 2), index, 8 * g - 3
    return Fraction(1, 2), index, max(0, 8 * g - 2)


def grading_check(table: GenusTable) -> GradingReport:
    """Degrees, weights and powers of ``D`` in the denominators of every entry."""
    D = D_expr(table.jets)
    entries: List[GradingEntry] = []
    for key in table.keys():
        e = table.entry(key)
        degree_bound, weight_bound, den_bound = _bounds(key)
        if not e:
            entries.append(GradingEntry(key=key, denominator_bound=den_bound, passed=True))
            continue
        degree, weight = poly_degree(e), diff_weight(e)
        exponent = denominator_exponent(e, D)
        passed = degree == degree_bound and weight == weight_bound and exponent is not None and exponent <= den_bound
        entries.append(
            GradingEntry(
                key=key,
                degree=_grade_text(degree),
                weight=_grade_text(weight),
                denominator_exponent=-1 if exponent is None else exponent,
                denominator_bound=den_bound,
                passed=passed,
            )
        )
        if not passed:
            logger.warning("Grading violation", key=key, degree=degree, weight=weight, denominator_exponent=exponent)
    return GradingReport(entries=entries)


__all__ = ["build_table", "check_backsubstitution", "grading_check", "odd_relation", "odd_u", "solve_genus"]
