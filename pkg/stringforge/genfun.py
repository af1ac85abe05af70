"""Free energies from the genus table.

The cumulants ``zt_g`` are the coefficients of the formal logarithm

    log(z/x) + log(1 + sum_{h>=1} (z_h/z) e^h) = sum_g zt_g e^g

and the free energies satisfy

    d_x^2 F_g = sum_{m=0}^{g} (1 - 2m) B_2m / (2m)! d_x^2m zt_{g-m}.

No antiderivatives are taken symbolically: a closed form is accepted when
its second derivative reproduces the right-hand side exactly.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import TYPE_CHECKING, Any, Dict, List, Optional, Union

from .algebra.rational import bernoulli
from .closed_forms import closed_form
from .diffring import DiffExpr, LogCombo, d_x
from .logging import get_logger, time_operation
from .models import ClosedFormCheck
from .utils.helpers import generate_hash

if TYPE_CHECKING:
    from .solver import GenusTable

logger = get_logger(__name__)

Expression = Union[DiffExpr, LogCombo]


@dataclass(frozen=True)
class IntegralForm:
    """``d_x^-depth integrand`` with zero lower limits."""

    integrand: LogCombo
    depth: int = 2

    def to_text(self) -> str:
        return f"d_x^-{self.depth}({self.integrand.to_text()})"


@dataclass(frozen=True)
class FreeEnergy:
    genus: int
    relation: Expression
    closed_form: Optional[Union[LogCombo, IntegralForm]] = None
    verified: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return {
            "genus": self.genus,
            "second_derivative": self.relation.to_text(),
            "closed_form": self.closed_form.to_text() if self.closed_form is not None else None,
            "verified": self.verified,
        }


def cumulant(g: int, table: "GenusTable") -> Expression:
    """``zt_0 = log(z/x)`` and, for ``g >= 1``, the rational ``zt_g``."""
    if g < 0:
        raise ValueError("genus must be non-negative")
    jets = table.jets
    z = DiffExpr.z(0, jets)
    if g == 0:
        return LogCombo.log(z) - LogCombo.log(DiffExpr.x(jets))

    # coefficients of w = sum (z_h/z) e^h, then log(1 + w) up to e^g
    w: Dict[int, DiffExpr] = {h: table.get_z(h) / z for h in range(1, g + 1)}
    power: Dict[int, DiffExpr] = dict(w)
    total: List[DiffExpr] = []
    for k in range(1, g + 1):
        if g in power:
            total.append(power[g] * Fraction((-1) ** (k + 1), k))
        nxt: Dict[int, DiffExpr] = {}
        for e1, c1 in power.items():
            for e2, c2 in w.items():
                if e1 + e2 <= g:
                    nxt[e1 + e2] = nxt[e1 + e2] + c1 * c2 if e1 + e2 in nxt else c1 * c2
        power = nxt
    return DiffExpr.sum(total, jets)


def _relation_weight(m: int) -> Fraction:
    return (1 - 2 * m) * bernoulli(2 * m) / factorial(2 * m)


def free_energy_relation(g: int, table: "GenusTable") -> Expression:
    """``d_x^2 F_g``; a LogCombo for ``g = 0``, rational for ``g >= 1``."""
    if g == 0:
        return cumulant(0, table)
    pieces: List[DiffExpr] = []
    for m in range(g + 1):
        value = d_x(cumulant(g - m, table), 2 * m)
        if isinstance(value, LogCombo):
            value = value.rational
        pieces.append(value * _relation_weight(m))
    return DiffExpr.sum(pieces, table.jets)


def _second_derivative(candidate: Expression) -> Expression:
    return d_x(candidate, 2)


def verify_closed_form(g: int, candidate: Expression, table: "GenusTable") -> bool:
    """True iff ``d_x^2 candidate`` equals :func:`free_energy_relation`."""
    with time_operation("verify_closed_form", {"genus": g}):
        lhs = _second_derivative(candidate)
        rhs = free_energy_relation(g, table)
    return lhs == rhs


def closed_form_check(g: int, candidate: Expression, table: "GenusTable") -> ClosedFormCheck:
    lhs = _second_derivative(candidate)
    rhs = free_energy_relation(g, table)
    equal = lhs == rhs
    if not equal:
        logger.warning("Closed form does not match the free-energy relation", genus=g)
    return ClosedFormCheck(
        genus=g,
        lhs_hash=generate_hash(lhs.to_text()),
        rhs_hash=generate_hash(rhs.to_text()),
        equal=equal,
    )


def free_energy(g: int, table: "GenusTable") -> FreeEnergy:
    """``F_0`` as a double integral, ``F_1`` and ``F_2`` as verified closed forms.

    From genus 3 on only the second derivative is known.
    """
    relation = free_energy_relation(g, table)
    if g == 0:
        return FreeEnergy(genus=0, relation=relation, closed_form=IntegralForm(relation), verified=True)
    candidate = closed_form(g, table.jets)
    if candidate is None:
        return FreeEnergy(genus=g, relation=relation)
    if table.symmetric_only:
        candidate = candidate.symmetric()
    verified = _second_derivative(candidate) == relation
    logger.info("Free energy", genus=g, verified=verified)
    return FreeEnergy(genus=g, relation=relation, closed_form=candidate, verified=verified)


__all__ = [
    "FreeEnergy",
    "IntegralForm",
    "bernoulli",
    "closed_form_check",
    "cumulant",
    "free_energy",
    "free_energy_relation",
    "verify_closed_form",
]
