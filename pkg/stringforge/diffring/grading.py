"""Polynomial degree and differential weight.

z-jets have degree 1, u-jets degree 1/2, x degree 0. A jet of order m has
weight m and x has weight -1. Both gradings add over products and subtract
over quotients.
"""

from fractions import Fraction
from typing import Callable, Optional, Tuple, Union

from sympy.polys.rings import PolyElement

from .expr import DiffExpr
from .jets import JetRing


class NonHomogeneous:
    """Marker for an expression without a common grade."""

    _instance: Optional["NonHomogeneous"] = None

    def __new__(cls) -> "NonHomogeneous":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "NonHomogeneous"

    def __bool__(self) -> bool:
        return False


NON_HOMOGENEOUS = NonHomogeneous()

Grade = Union[Fraction, NonHomogeneous, None]


def monomial_degree(monom: Tuple[int, ...], jets: JetRing) -> Fraction:
    degree = Fraction(0)
    for i, e in enumerate(monom):
        if not e or i == 0:
            continue
        jet = jets.describe(i)
        degree += e if jet.base == "z" else Fraction(e, 2)
    return degree


def monomial_weight(monom: Tuple[int, ...], jets: JetRing) -> Fraction:
    weight = Fraction(0)
    for i, e in enumerate(monom):
        if not e:
            continue
        if i == 0:
            weight -= e
        else:
            weight += jets.describe(i).order * e
    return weight


def _poly_grade(p: PolyElement, jets: JetRing, grade: Callable[[Tuple[int, ...], JetRing], Fraction]) -> Grade:
    values = {grade(m, jets) for m in p.itermonoms()}
    if not values:
        return None
    if len(values) > 1:
        return NON_HOMOGENEOUS
    return values.pop()


def _expr_grade(e: DiffExpr, grade: Callable[[Tuple[int, ...], JetRing], Fraction]) -> Grade:
    total = _poly_grade(e.num, e.jets, grade)
    if total is None or total is NON_HOMOGENEOUS:
        return total
    for f, exponent in e.den.items():
        g = _poly_grade(f, e.jets, grade)
        if g is NON_HOMOGENEOUS or g is None:
            return NON_HOMOGENEOUS
        total -= g * exponent
    return total


def poly_degree(e: DiffExpr) -> Grade:
    """Common polynomial degree; ``None`` for zero, ``NON_HOMOGENEOUS`` if mixed."""
    return _expr_grade(e, monomial_degree)


def diff_weight(e: DiffExpr) -> Grade:
    """Common differential weight; ``None`` for zero, ``NON_HOMOGENEOUS`` if mixed."""
    return _expr_grade(e, monomial_weight)


def denominator_exponent(e: DiffExpr, factor: DiffExpr) -> Optional[int]:
    """Exponent of ``factor`` in the denominator of ``e``.

    Returns None when the denominator holds any other factor.
    """
    target = next(iter(factor.inverse().den), None)
    exponent = 0
    for f, k in e.den.items():
        if f != target:
            return None
        exponent = k
    return exponent


__all__ = [
    "NonHomogeneous",
    "NON_HOMOGENEOUS",
    "poly_degree",
    "diff_weight",
    "denominator_exponent",
    "monomial_degree",
    "monomial_weight",
]
