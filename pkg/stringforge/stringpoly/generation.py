"""String operators by undetermined coefficients.

For each cell ``(lambda, eta, variant)`` the operator is the unique
combination of ``r^(e/2) ds^a dr^b`` with ``b <= 1`` whose action on
``[h^0](h + s + r/h)^(J-1)`` reproduces the modified string polynomial for
every J. Rows for J = 1, 2, ... are added to an exact linear system until its
rank is full (or a cap on J is reached); the fitted operator is then checked
on five further values of J.
"""

from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, List, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from ..algebra.laurent import LaurentPoly
from ..algebra.rational import as_fraction
from ..exceptions import AnsatzExhausted, AnsatzRankDeficient, InputError
from ..logging import get_logger, increment_counter, time_operation
from ..models import OperatorRow, OperatorTerm, TableReport
from ..motzkin import modified_string_poly
from ..utils.helpers import parallel_map
from .golden import CellKey, compare_with_golden
from .operators import Key, OperatorPoly, apply, apply_term, generator, rho_laurent
from .partitions import EMPTY, Partition, partition_pairs

logger = get_logger(__name__)

VARIANTS = ("a", "b")
VERIFY_EXTRA = 5
MAX_WIDENINGS = 3


@dataclass(frozen=True)
class AnsatzBounds:
    """Limits on the ansatz: ``a <= max_ds`` and ``e_min <= e <= e_max``."""

    max_ds: int
    e_min: int
    e_max: int

    @classmethod
    def initial(cls, lam: Partition, eta: Partition) -> "AnsatzBounds":
        return cls(
            max_ds=lam.size + eta.size + lam.length + eta.length,
            e_min=-2,
            e_max=2 * (eta.length + 1),
        )

    def widened(self, step: int = 2) -> "AnsatzBounds":
        return replace(self, max_ds=self.max_ds + step, e_min=self.e_min - step, e_max=self.e_max + step)


def r_exponent(lam: Partition, eta: Partition, variant: str, ds: int, dr: int) -> int:
    """Exponent of ``r^(1/2)`` forced by homogeneity (s counts 1, r counts 2)."""
    return ds + 2 * dr - lam.length - 2 * eta.length + (1 if variant == "b" else 0)


def ansatz_basis(lam: Partition, eta: Partition, variant: str, bounds: AnsatzBounds) -> List[Key]:
    basis: List[Key] = []
    for dr in (0, 1):
        for ds in range(bounds.max_ds + 1):
            e = r_exponent(lam, eta, variant, ds, dr)
            if bounds.e_min <= e <= bounds.e_max:
                basis.append((e, ds, dr))
    return basis


def target(lam: Partition, eta: Partition, J: int, variant: str) -> LaurentPoly:
    """The modified string polynomial as a Laurent polynomial in ``r^(1/2)``."""
    return rho_laurent(modified_string_poly(lam.parts, eta.parts, J, variant))


def _row_entries(value: LaurentPoly) -> Dict[Tuple[int, int], Any]:
    entries: Dict[Tuple[int, int], Any] = {}
    for k, coeff in value.items():
        for (i, _), c in coeff.iterterms():
            entries[(k, i)] = c
    return entries


def _sample_rows(lam: Partition, eta: Partition, variant: str, basis: List[Key], J: int) -> List[List[Any]]:
    """Coefficient rows ``[basis columns | target]`` contributed by one value of J."""
    columns = [_row_entries(apply_term(key, J)) for key in basis]
    rhs = _row_entries(target(lam, eta, J, variant))
    monomials = set(rhs)
    for col in columns:
        monomials.update(col)
    return [[col.get(monomial, QQ.zero) for col in columns] + [rhs.get(monomial, QQ.zero)] for monomial in sorted(monomials)]


def fit_window(ncols: int, bounds: AnsatzBounds) -> Tuple[int, int]:
    """First J at which the rank is inspected and the last J sampled.

    High ``ds`` powers annihilate ``[h^0](h + s + r/h)^(J-1)`` for small J, so
    the window grows with ``max_ds`` as well as with the number of columns.
    """
    j_min = ncols + bounds.max_ds + 3
    return j_min, j_min + 2 * ncols + bounds.max_ds


def _fit(lam: Partition, eta: Partition, variant: str, bounds: AnsatzBounds) -> OperatorPoly:
    basis = ansatz_basis(lam, eta, variant, bounds)
    ncols = len(basis)
    j_min, j_cap = fit_window(ncols, bounds)
    details = {"lambda": str(lam), "eta": str(eta), "variant": variant, "columns": ncols}

    rows: List[List[Any]] = []
    solution: Dict[Key, Fraction] = {}
    J = 0
    while True:
        J += 1
        rows.extend(_sample_rows(lam, eta, variant, basis, J))
        if J < j_min or not rows:
            if J >= j_cap:
                break
            continue
        reduced, pivots = DomainMatrix(rows, (len(rows), ncols + 1), QQ).rref()
        if ncols in pivots:
            raise AnsatzExhausted("No operator in the ansatz reproduces the target", details={**details, "J": J})
        if len(pivots) == ncols:
            values = reduced.to_list()
            solution = {basis[col]: as_fraction(values[i][ncols]) for i, col in enumerate(pivots)}
            break
        if J >= j_cap:
            raise AnsatzRankDeficient(
                "Undetermined coefficients are not unique",
                details={**details, "J": J},
                free_columns=ncols - len(pivots),
            )

    op = OperatorPoly(solution)
    for J_check in range(J + 1, J + VERIFY_EXTRA + 1):
        if apply(op, J_check) != target(lam, eta, J_check, variant):
            raise AnsatzExhausted("Fitted operator fails on a verification value of J", details={**details, "J": J_check})
    return op


@lru_cache(maxsize=None)
def string_operator(lam: Partition, eta: Partition, variant: str, max_widenings: int = MAX_WIDENINGS) -> OperatorPoly:
    """The string polynomial ``P^(variant)_{lam, eta}`` with ``dr`` degree at most 1.

    The variant-b cell at ``(φ, φ)`` is 0: that term of the second string
    equation is the residue ``[h^-1]V'`` itself. If the ansatz is too small
    its bounds are widened up to ``max_widenings`` times.
    """
    if variant not in VARIANTS:
        raise InputError("Variant must be a or b", details={"variant": variant})
    if variant == "b" and lam.is_empty() and eta.is_empty():
        return OperatorPoly.zero()

    bounds = AnsatzBounds.initial(lam, eta)
    for attempt in range(max_widenings + 1):
        try:
            with time_operation("string_operator", {"lambda": str(lam), "eta": str(eta), "variant": variant}):
                op = _fit(lam, eta, variant, bounds)
            logger.debug("Fitted string operator", lam=str(lam), eta=str(eta), variant=variant, operator=op)
            return op
        except AnsatzExhausted:
            if attempt == max_widenings:
                raise
            logger.warning(
                "Ansatz exhausted, widening bounds",
                lam=str(lam),
                eta=str(eta),
                variant=variant,
                max_ds=bounds.max_ds,
                e_min=bounds.e_min,
                e_max=bounds.e_max,
            )
            increment_counter("ansatz_widenings")
            bounds = bounds.widened()
    raise AnsatzExhausted("Ansatz exhausted", details={"lambda": str(lam), "eta": str(eta)})


def _fit_cell(cell: CellKey) -> Tuple[CellKey, OperatorPoly]:
    lam, eta, variant = cell
    return cell, string_operator(lam, eta, variant)


@dataclass
class StringTable:
    """Generated string operators for every cell up to ``max_weight``."""

    max_weight: int
    entries: Dict[CellKey, OperatorPoly] = field(default_factory=dict)

    def get(self, lam: Partition, eta: Partition, variant: str) -> OperatorPoly:
        try:
            return self.entries[(lam, eta, variant)]
        except KeyError:
            raise InputError(
                "Cell outside the generated table",
                details={"lambda": str(lam), "eta": str(eta), "variant": variant, "max_weight": self.max_weight},
            ) from None

    def pairs(self) -> List[Tuple[Partition, Partition]]:
        seen: List[Tuple[Partition, Partition]] = []
        for lam, eta, _ in self.entries:
            if (lam, eta) not in seen:
                seen.append((lam, eta))
        return seen

    def cells(self) -> List[Tuple[Partition, Partition, OperatorPoly, OperatorPoly]]:
        return [(lam, eta, self.get(lam, eta, "a"), self.get(lam, eta, "b")) for lam, eta in self.pairs()]

    def golden_mismatches(self) -> List[str]:
        return compare_with_golden(self.entries)

    def to_report(self) -> TableReport:
        rows: List[OperatorRow] = []
        for lam, eta, p_a, p_b in self.cells():
            for variant, op in (("a", p_a), ("b", p_b)):
                rows.append(
                    OperatorRow(
                        lambda_=str(lam),
                        eta=str(eta),
                        variant=variant,
                        terms=[OperatorTerm(**record) for record in op.to_records()],
                        text=op.to_text(),
                    )
                )
        return TableReport(max_weight=self.max_weight, rows=rows, golden_mismatches=self.golden_mismatches())

    def to_text(self) -> str:
        """Aligned columns ``lambda | eta | P^(a) | P^(b)``."""
        body = [(str(lam), str(eta), p_a.to_text(), p_b.to_text()) for lam, eta, p_a, p_b in self.cells()]
        header = ("lambda", "eta", "P^(a)", "P^(b)")
        widths = [max(len(row[i]) for row in body + [header]) for i in range(4)]
        lines = [" | ".join(cell.ljust(w) for cell, w in zip(header, widths)).rstrip()]
        lines.append("-+-".join("-" * w for w in widths))
        for row in body:
            lines.append(" | ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
        return "\n".join(lines)


def generate_table(max_weight: int, workers: int = 1) -> StringTable:
    """Every cell with ``|lambda| + |eta| <= max_weight``, fitted in parallel."""
    if max_weight < 0:
        raise InputError("max_weight must be non-negative", details={"max_weight": max_weight})
    cells: List[CellKey] = [(lam, eta, v) for lam, eta in partition_pairs(max_weight) for v in VARIANTS]
    logger.info("Generating string table", max_weight=max_weight, cells=len(cells), workers=workers)
    with time_operation("generate_table", {"max_weight": max_weight}):
        results = parallel_map(_fit_cell, cells, workers)
    return StringTable(max_weight=max_weight, entries=dict(results))


def verify_table(table: StringTable, max_J: int = 12) -> List[str]:
    """Check every cell against the path sums for ``J = 1..max_J``; returns failures."""
    failures: List[str] = []
    for (lam, eta, variant), op in table.entries.items():
        for J in range(1, max_J + 1):
            if variant == "b" and lam == EMPTY and eta == EMPTY:
                expected = rho_laurent(generator(J, -1))
                ok = target(lam, eta, J, variant) == expected and not op
            else:
                ok = apply(op, J) == target(lam, eta, J, variant)
            if not ok:
                failures.append(f"P^({variant})[{lam}, {eta}] at J={J}")
                break
    return failures


__all__ = [
    "AnsatzBounds",
    "StringTable",
    "ansatz_basis",
    "fit_window",
    "generate_table",
    "r_exponent",
    "string_operator",
    "target",
    "verify_table",
]
