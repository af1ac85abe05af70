"""Truncated power series in the couplings ``t_j`` with explicit x-powers.

A term is ``coeff * prod t_j^(n_j) * x^a`` with an exact rational exponent
``a``; the series keeps every term whose total coupling degree
``sum n_j`` is at most ``order``.
"""

from fractions import Fraction
from math import lcm
from typing import Any, Dict, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

from sympy import QQ
from sympy.polys.orderings import lex
from sympy.polys.ring_series import rs_log, rs_series_inversion
from sympy.polys.rings import PolyElement, ring

from ..algebra.rational import as_fraction, to_qq
from ..exceptions import DivisionByZeroSeries, NonIntegrableMonomial
from ..models import SeriesTerm
from ..utils.serializers import format_fraction

Monomial = Tuple[Tuple[int, int], ...]
Key = Tuple[Monomial, Fraction]
Scalar = Union[int, Fraction]

ONE_MONOMIAL: Monomial = ()


def monomial(**exponents: int) -> Monomial:
    """``monomial(t4=2)`` is ``t_4^2``."""
    pairs = [(int(name[1:]), n) for name, n in exponents.items() if n]
    return tuple(sorted(pairs))


def monomial_degree(mono: Monomial) -> int:
    return sum(n for _, n in mono)


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    merged: Dict[int, int] = dict(a)
    for j, n in b:
        merged[j] = merged.get(j, 0) + n
    return tuple(sorted(merged.items()))


def monomial_text(mono: Monomial) -> str:
    if not mono:
        return "1"
    return "*".join(f"t{j}" if n == 1 else f"t{j}^{n}" for j, n in mono)


def _exponent_text(a: Fraction) -> str:
    return format_fraction(a)


class _UnitRing:
    """Polynomial image of a unit part ``w`` for sympy's ring series.

    Generators are ``eps, t_j..., X, Y``: ``eps`` counts the total coupling
    degree and is the truncation variable, ``X^i Y^k`` stands for
    ``x^((i - k)/q)`` with ``q`` the common denominator of the x-exponents.
    ``X`` and ``Y`` are never reduced against each other; decoding takes
    ``i - k``.
    """

    def __init__(self, w: "CouplingSeries"):
        self.couplings = sorted({j for mono, _ in w.terms for j, _ in mono})
        self.q = lcm(1, *(a.denominator for _, a in w.terms))
        names = ["eps"] + [f"t{j}" for j in self.couplings] + ["X", "Y"]
        self.ring, self.eps, *_ = ring(names, QQ, lex)
        self.slot = {j: i + 1 for i, j in enumerate(self.couplings)}
        self.poly = self._encode(w)

    def _encode(self, w: "CouplingSeries") -> PolyElement:
        terms = {}
        for (mono, a), c in w.terms.items():
            expv = [0] * self.ring.ngens
            expv[0] = monomial_degree(mono)
            for j, n in mono:
                expv[self.slot[j]] = n
            scaled = int(a * self.q)
            expv[-2], expv[-1] = max(scaled, 0), max(-scaled, 0)
            terms[tuple(expv)] = to_qq(c)
        return self.ring.from_dict(terms)

    def decode(self, p: PolyElement, order: int) -> "CouplingSeries":
        terms: Dict[Key, Fraction] = {}
        for expv, c in p.terms():
            mono = tuple((j, n) for j, n in zip(self.couplings, expv[1:-2]) if n)
            key = (mono, Fraction(expv[-2] - expv[-1], self.q))
            terms[key] = terms.get(key, Fraction(0)) + as_fraction(c)
        return CouplingSeries(terms, order)


class CouplingSeries:
    """Exact truncated series ``sum c * t^n * x^a``; immutable."""

    __slots__ = ("terms", "order")

    def __init__(self, terms: Optional[Mapping[Key, Scalar]] = None, order: int = 0):
        self.order = order
        self.terms: Dict[Key, Fraction] = {}
        for (mono, a), c in (terms or {}).items():
            if c and monomial_degree(mono) <= order:
                self.terms[(mono, Fraction(a))] = Fraction(c)

    # -- construction -------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> "CouplingSeries":
        return cls({}, order)

    @classmethod
    def constant(cls, value: Scalar, order: int) -> "CouplingSeries":
        return cls({(ONE_MONOMIAL, Fraction(0)): value}, order)

    @classmethod
    def one(cls, order: int) -> "CouplingSeries":
        return cls.constant(1, order)

    @classmethod
    def x_power(cls, exponent: Scalar, order: int, coeff: Scalar = 1) -> "CouplingSeries":
        return cls({(ONE_MONOMIAL, Fraction(exponent)): coeff}, order)

    @classmethod
    def coupling(cls, j: int, order: int, coeff: Scalar = 1) -> "CouplingSeries":
        """``coeff * t_j``."""
        return cls({(((j, 1),), Fraction(0)): coeff}, order)

    # -- inspection -----------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CouplingSeries.constant(other, self.order)
        if not isinstance(other, CouplingSeries):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def items(self) -> Iterator[Tuple[Monomial, Fraction, Fraction]]:
        """``(monomial, x_exponent, coeff)`` in canonical order."""
        for (mono, a), c in sorted(self.terms.items(), key=lambda item: (monomial_degree(item[0][0]), item[0][0], item[0][1])):
            yield mono, a, c

    def coefficient(self, mono: Monomial) -> Dict[Fraction, Fraction]:
        """x-exponent to coefficient for one coupling monomial."""
        return {a: c for (m, a), c in self.terms.items() if m == mono}

    def leading(self) -> "CouplingSeries":
        """The coupling-free part."""
        return CouplingSeries({k: c for k, c in self.terms.items() if not k[0]}, self.order)

    def drop_constant(self) -> "CouplingSeries":
        """Remove every coupling-free term."""
        return CouplingSeries({k: c for k, c in self.terms.items() if k[0]}, self.order)

    def truncate(self, order: int) -> "CouplingSeries":
        return CouplingSeries(self.terms, min(order, self.order))

    def max_degree(self) -> int:
        return max((monomial_degree(m) for m, _ in self.terms), default=0)

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other: Any) -> Optional["CouplingSeries"]:
        if isinstance(other, CouplingSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return CouplingSeries.constant(other, self.order)
        return None

    def __neg__(self) -> "CouplingSeries":
        return CouplingSeries({k: -c for k, c in self.terms.items()}, self.order)

    def __add__(self, other: Any) -> "CouplingSeries":
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        terms = dict(self.terms)
        for k, c in coerced.terms.items():
            terms[k] = terms.get(k, Fraction(0)) + c
        return CouplingSeries(terms, min(self.order, coerced.order))

    __radd__ = __add__

    def __sub__(self, other: Any) -> "CouplingSeries":
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        return self + (-coerced)

    def __rsub__(self, other: Any) -> "CouplingSeries":
        return (-self) + other

    def __mul__(self, other: Any) -> "CouplingSeries":
        if isinstance(other, (int, Fraction)):
            return CouplingSeries({k: c * other for k, c in self.terms.items()}, self.order)
        if not isinstance(other, CouplingSeries):
            return NotImplemented
        order = min(self.order, other.order)
        terms: Dict[Key, Fraction] = {}
        for (m1, a1), c1 in self.terms.items():
            d1 = monomial_degree(m1)
            for (m2, a2), c2 in other.terms.items():
                if d1 + monomial_degree(m2) > order:
                    continue
                key = (monomial_mul(m1, m2), a1 + a2)
                terms[key] = terms.get(key, Fraction(0)) + c1 * c2
        return CouplingSeries(terms, order)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "CouplingSeries":
        if n < 0:
            return self.inverse() ** (-n)
        result = CouplingSeries.one(self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def _split_unit(self) -> Tuple[Fraction, Fraction, "CouplingSeries"]:
        """Write the series as ``c x^a (1 + w)`` with ``w`` free of coupling-free terms."""
        lead = self.leading()
        if len(lead.terms) != 1:
            raise DivisionByZeroSeries(
                "Leading part is not a single monomial",
                details={"leading": lead.to_text()},
            )
        (_, a), c = next(iter(lead.terms.items()))
        scaled = self * CouplingSeries.x_power(-a, self.order, 1 / c)
        return c, a, scaled - 1

    def inverse(self) -> "CouplingSeries":
        c, a, w = self._split_unit()
        unit = _UnitRing(w)
        inverted = rs_series_inversion(1 + unit.poly, unit.eps, self.order + 1)
        return unit.decode(inverted, self.order) * CouplingSeries.x_power(-a, self.order, 1 / c)

    def __truediv__(self, other: Any) -> "CouplingSeries":
        if isinstance(other, (int, Fraction)):
            if not other:
                raise DivisionByZeroSeries("Division by zero")
            return self * (1 / Fraction(other))
        if not isinstance(other, CouplingSeries):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: Any) -> "CouplingSeries":
        return self.inverse() * other

    def log_unit(self) -> Tuple["CouplingSeries", Fraction]:
        """``log`` of the series modulo constants.

        Returns ``(log(1 + w), a)`` for the series ``c x^a (1 + w)``; the
        caller accounts for the ``a log x`` part.
        """
        _, a, w = self._split_unit()
        unit = _UnitRing(w)
        return unit.decode(rs_log(1 + unit.poly, unit.eps, self.order + 1), self.order), a

    # -- calculus in x --------------------------------------------------

    def d_x(self) -> "CouplingSeries":
        return CouplingSeries({(m, a - 1): c * a for (m, a), c in self.terms.items() if a}, self.order)

    def integrate_x(self) -> "CouplingSeries":
        """Termwise antiderivative with zero constant of integration."""
        terms: Dict[Key, Fraction] = {}
        for (m, a), c in self.terms.items():
            if a == -1:
                raise NonIntegrableMonomial(
                    "Antiderivative of x^-1 is not a power of x",
                    details={"monomial": monomial_text(m)},
                )
            terms[(m, a + 1)] = c / (a + 1)
        return CouplingSeries(terms, self.order)

    # -- output ---------------------------------------------------------

    def to_records(self) -> List[SeriesTerm]:
        return [
            SeriesTerm(
                t_exponents={f"t{j}": n for j, n in mono},
                x_exponent=_exponent_text(a),
                coeff=format_fraction(c),
            )
            for mono, a, c in self.items()
        ]

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        pieces: List[str] = []
        for mono, a, c in self.items():
            factors = [] if not mono else [monomial_text(mono)]
            if a:
                factors.append("x" if a == 1 else f"x^({_exponent_text(a)})")
            magnitude = abs(c)
            if not factors:
                body = format_fraction(magnitude)
            elif magnitude == 1:
                body = "*".join(factors)
            else:
                body = "*".join([format_fraction(magnitude)] + factors)
            if not pieces:
                pieces.append(f"-{body}" if c < 0 else body)
            else:
                pieces.append(f" - {body}" if c < 0 else f" + {body}")
        return "".join(pieces) + f" + O(t^{self.order + 1})"

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"CouplingSeries({self.to_text()})"


def series_sum(items: Iterable[CouplingSeries], order: int) -> CouplingSeries:
    total = CouplingSeries.zero(order)
    for item in items:
        total = total + item
    return total


__all__ = [
    "CouplingSeries",
    "Monomial",
    "ONE_MONOMIAL",
    "monomial",
    "monomial_degree",
    "monomial_mul",
    "monomial_text",
    "series_sum",
]
