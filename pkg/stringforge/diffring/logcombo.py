"""Rational expressions plus rational multiples of logarithms."""

from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Tuple, Union

from sympy.polys.rings import PolyElement

from ..algebra.rational import to_qq
from .expr import DiffExpr, factor_poly, poly_dx, poly_text
from .jets import JetRing


class LogCombo:
    """``rational + sum_i c_i log(f_i)`` with irreducible normalized ``f_i``.

    Logs are kept modulo additive constants: constant factors of an argument
    are dropped, so ``log(2 z)`` and ``log(z)`` coincide.
    """

    __slots__ = ("rational", "logs")

    def __init__(self, rational: DiffExpr, logs: Optional[Mapping[PolyElement, Fraction]] = None):
        self.rational = rational
        self.logs: Dict[PolyElement, Fraction] = {f: Fraction(c) for f, c in (logs or {}).items() if c}

    @property
    def jets(self) -> JetRing:
        return self.rational.jets

    @classmethod
    def from_rational(cls, rational: DiffExpr) -> "LogCombo":
        return cls(rational)

    @classmethod
    def log(cls, argument: Union[DiffExpr, PolyElement], coeff: Union[int, Fraction] = 1, jets: Optional[JetRing] = None) -> "LogCombo":
        """``coeff * log(argument)`` split over irreducible factors."""
        if isinstance(argument, PolyElement):
            argument = DiffExpr.from_poly(argument, jets)
        if not argument:
            raise ValueError("Logarithm of zero")
        coeff = Fraction(coeff)
        logs: Dict[PolyElement, Fraction] = {}
        _, factors = factor_poly(argument.num)
        for f, m in factors:
            logs[f] = logs.get(f, Fraction(0)) + coeff * m
        for f, e in argument.den.items():
            logs[f] = logs.get(f, Fraction(0)) - coeff * e
        return cls(DiffExpr.zero(argument.jets), logs)

    def _coerce(self, other: Any) -> Optional["LogCombo"]:
        if isinstance(other, LogCombo):
            return other
        if isinstance(other, DiffExpr):
            return LogCombo(other)
        if isinstance(other, (int, Fraction)):
            return LogCombo(DiffExpr.constant(other, self.jets))
        return None

    @property
    def is_rational(self) -> bool:
        return not self.logs

    def log_terms(self) -> List[Tuple[Fraction, PolyElement]]:
        return [(c, f) for f, c in sorted(self.logs.items(), key=lambda item: poly_text(item[0], self.jets))]

    def __bool__(self) -> bool:
        return bool(self.rational) or bool(self.logs)

    def __eq__(self, other: object) -> bool:
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        return self.rational == coerced.rational and self.logs == coerced.logs

    def __hash__(self) -> int:
        return hash((self.rational, frozenset(self.logs.items())))

    def __neg__(self) -> "LogCombo":
        return LogCombo(-self.rational, {f: -c for f, c in self.logs.items()})

    def __add__(self, other: Any) -> "LogCombo":
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        logs = dict(self.logs)
        for f, c in coerced.logs.items():
            logs[f] = logs.get(f, Fraction(0)) + c
        return LogCombo(self.rational + coerced.rational, logs)

    __radd__ = __add__

    def __sub__(self, other: Any) -> "LogCombo":
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        return self + (-coerced)

    def __rsub__(self, other: Any) -> "LogCombo":
        return (-self) + other

    def __mul__(self, other: Any) -> "LogCombo":
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        c = Fraction(other)
        return LogCombo(self.rational * c, {f: v * c for f, v in self.logs.items()})

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "LogCombo":
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return self * (1 / Fraction(other))

    def d_x(self) -> "LogCombo":
        """Derivative: each ``c log f`` contributes ``c f'/f``."""
        pieces = [self.rational.d_x()]
        for f, c in self.logs.items():
            pieces.append(DiffExpr(self.jets, poly_dx(f, self.jets) * self.jets.ring(to_qq(c)), {f: 1}))
        return LogCombo(DiffExpr.sum(pieces, self.jets))

    def symmetric(self) -> "LogCombo":
        """Specialize to u = 0; log arguments are re-split after the substitution."""
        result = LogCombo(self.rational.symmetric())
        for f, c in self.logs.items():
            result = result + LogCombo.log(DiffExpr.from_poly(f, self.jets).symmetric(), c)
        return result

    def to_text(self) -> str:
        pieces: List[str] = []
        if self.rational:
            pieces.append(self.rational.to_text())
        for c, f in self.log_terms():
            body = poly_text(f, self.jets)
            magnitude = abs(c)
            coeff = "" if magnitude == 1 else (f"{magnitude.numerator}/{magnitude.denominator}*" if magnitude.denominator != 1 else f"{magnitude.numerator}*")
            term = f"{coeff}log({body})"
            if not pieces:
                pieces.append(f"-{term}" if c < 0 else term)
            else:
                pieces.append(f"- {term}" if c < 0 else f"+ {term}")
        return " ".join(pieces) if pieces else "0"

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"LogCombo({self.to_text()})"


def d_x(e: Union[DiffExpr, LogCombo], times: int = 1) -> Union[DiffExpr, LogCombo]:
    """Apply the total x-derivative ``times`` times."""
    for _ in range(times):
        e = e.d_x()
    return e


__all__ = ["LogCombo", "d_x"]
