"""The identity and property suite behind ``stringforge verify``.

Checks run in a fixed order and share one lazily built genus table. A check
that raises an engine error counts as failed; the report names the first
failure.
"""

import random
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .closed_forms import f2_closed_form
from .diffring import D_expr, DiffExpr, JetRing, jet_ring
from .exceptions import InputError, StringForgeError
from .genfun import free_energy
from .logging import get_logger, time_operation
from .models import CheckResult, VerificationReport
from .oracle import DEFAULT_MAX_DARTS, compare
from .phipsi import check_unwinding, phi_psi, phi_psi_explicit
from .solver import GenusTable, build_table, check_backsubstitution, grading_check, string_source
from .specialize import Potential, cross_mode_check, evaluate, leading_order_series
from .stringpoly import StringTable, check_identities, generate_table, verify_table

logger = get_logger(__name__)

QUARTIC = "0.5*l^2 + t4*l^4"
CUBIC = "0.5*l^2 + t3*l^3"

# (potential, genus, max_vertices)
ORACLE_SWEEP: Tuple[Tuple[str, int, int], ...] = (
    (QUARTIC, 0, 3),
    (QUARTIC, 1, 2),
    (CUBIC, 0, 4),
    (CUBIC, 1, 4),
)


@dataclass
class VerifyContext:
    max_genus: int = 2
    m: int = 5
    seed: int = 0
    workers: int = 1
    max_darts: int = DEFAULT_MAX_DARTS
    jets: JetRing = field(default_factory=jet_ring)
    _strings: Optional[StringTable] = None
    _table: Optional[GenusTable] = None

    @property
    def strings(self) -> StringTable:
        if self._strings is None:
            self._strings = generate_table(max(3, 2 * self.max_genus + 1), self.workers)
        return self._strings

    @property
    def table(self) -> GenusTable:
        if self._table is None:
            self._table = build_table(self.max_genus, self.jets, self.strings.get)
        return self._table


Outcome = Tuple[bool, str]


def _failures(items: Sequence[str]) -> Outcome:
    return (not items, "; ".join(items))


def check_identity_suite(ctx: VerifyContext) -> Outcome:
    failing = {name: Js for name, Js in check_identities(10).items() if Js}
    return _failures([f"{name} at J={Js}" for name, Js in failing.items()])


def check_table(ctx: VerifyContext) -> Outcome:
    table = generate_table(3, ctx.workers)
    return _failures(table.golden_mismatches() + verify_table(table))


def check_unwinding_suite(ctx: VerifyContext) -> Outcome:
    return _failures([f"m={m}" for m in range(1, ctx.m + 1) if not check_unwinding(m, ctx.jets)])


def _random_expr(rng: random.Random, jets: JetRing) -> DiffExpr:
    atoms = [DiffExpr.x(jets)] + [DiffExpr.u(k, jets) for k in range(3)] + [DiffExpr.z(k, jets) for k in range(3)]
    terms = []
    for _ in range(rng.randint(1, 3)):
        term = DiffExpr.constant(rng.randint(-4, 4) or 1, jets)
        for _ in range(rng.randint(0, 3)):
            term = term * rng.choice(atoms)
        terms.append(term)
    value = DiffExpr.sum(terms, jets)
    if rng.random() < 0.5:
        value = value / rng.choice([DiffExpr.z(0, jets), D_expr(jets), DiffExpr.z(1, jets)])
    return value


def check_ring_axioms(ctx: VerifyContext, rounds: int = 25) -> Outcome:
    """Distributivity, Leibniz and quotient rules on random expressions."""
    rng = random.Random(ctx.seed)
    failures: List[str] = []
    for i in range(rounds):
        a, b, c = (_random_expr(rng, ctx.jets) for _ in range(3))
        if (a + b) * c != a * c + b * c:
            failures.append(f"distributivity #{i}")
        if (a * b).d_x() != a.d_x() * b + a * b.d_x():
            failures.append(f"leibniz #{i}")
        if b and (a / b).d_x() != (a.d_x() * b - a * b.d_x()) / b ** 2:
            failures.append(f"quotient #{i}")
    return _failures(failures)


def check_backsubstitution_suite(ctx: VerifyContext) -> Outcome:
    results = check_backsubstitution(ctx.table, ctx.strings.get)
    return _failures([key for key, ok in results.items() if not ok])


def check_grading(ctx: VerifyContext) -> Outcome:
    report = grading_check(ctx.table)
    return _failures([entry.key for entry in report.entries if not entry.passed])


def check_closed_forms(ctx: VerifyContext) -> Outcome:
    failures = [f"F{g}" for g in range(1, min(2, ctx.max_genus) + 1) if not free_energy(g, ctx.table).verified]
    if f2_closed_form(ctx.jets).rational.at_gaussian():
        failures.append("F2 at t=0")
    return _failures(failures)


def _phi_psi_mismatches(potential: Potential, order: int, jets: JetRing, max_m: int = 3) -> List[int]:
    """Indices where the recurrence disagrees with the residues of the potential."""
    u, z = leading_order_series(potential, order)
    bad = []
    for m in range(max_m + 1):
        pair = phi_psi(m, jets)
        explicit = phi_psi_explicit(potential, m, u, z)
        if (evaluate(pair.phi, u, z), evaluate(pair.psi, u, z)) != explicit:
            bad.append(m)
    return bad


def check_cross_mode(ctx: VerifyContext) -> Outcome:
    failures = []
    for text in (QUARTIC, CUBIC):
        results = cross_mode_check(Potential.parse(text), 4, ctx.table, string_source(2, table=ctx.strings))
        failures.extend(f"{key} for {text}" for key, ok in results.items() if not ok)
        failures.extend(f"phi/psi m={m} for {text}" for m in _phi_psi_mismatches(Potential.parse(text), 4, ctx.jets))
    return _failures(failures)


def check_oracle(ctx: VerifyContext) -> Outcome:
    failures = []
    for text, genus, max_vertices in ORACLE_SWEEP:
        report = compare(Potential.parse(text), genus, max_vertices, ctx.max_darts, ctx.workers)
        failures.extend(
            f"{text} g={genus} {entry.profile} faces={entry.faces}: {entry.series_count} vs {entry.oracle_count}"
            for entry in report.mismatches
        )
    return _failures(failures)


CHECKS: Dict[str, Callable[[VerifyContext], Outcome]] = {
    "identities": check_identity_suite,
    "table": check_table,
    "unwinding": check_unwinding_suite,
    "ring-axioms": check_ring_axioms,
    "backsubstitution": check_backsubstitution_suite,
    "grading": check_grading,
    "closed-forms": check_closed_forms,
    "cross-mode": check_cross_mode,
    "oracle": check_oracle,
}


def run_verification(
    only: Optional[Sequence[str]] = None,
    m: int = 5,
    seed: int = 0,
    max_genus: int = 2,
    workers: int = 1,
    max_darts: int = DEFAULT_MAX_DARTS,
    jets: Optional[JetRing] = None,
) -> VerificationReport:
    """Run the selected checks (all of them by default) in suite order."""
    names = list(only) if only else list(CHECKS)
    unknown = [name for name in names if name not in CHECKS]
    if unknown:
        raise InputError("Unknown check", details={"checks": ", ".join(unknown), "known": ", ".join(CHECKS)})
    ctx = VerifyContext(max_genus=max_genus, m=m, seed=seed, workers=workers, max_darts=max_darts, jets=jets or jet_ring())

    results: List[CheckResult] = []
    for name in (n for n in CHECKS if n in names):
        logger.info("Running check", check=name)
        try:
            with time_operation(f"verify.{name}"):
                passed, detail = CHECKS[name](ctx)
        except StringForgeError as exc:
            passed, detail = False, str(exc)
        if not passed:
            logger.warning("Check failed", check=name, detail=detail)
        results.append(CheckResult(name=name, passed=passed, detail=detail))
    return VerificationReport(seed=seed, checks=results)


__all__ = ["CHECKS", "ORACLE_SWEEP", "VerifyContext", "run_verification"]
