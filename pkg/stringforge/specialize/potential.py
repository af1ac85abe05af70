"""Polynomial potentials ``V = l^2/2 + sum c_j t_j l^j``."""

import re
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional, Tuple

from ..algebra.laurent import LaurentPoly, trinomial_powers
from ..exceptions import PotentialSyntaxError
from .series import CouplingSeries

_TERM = re.compile(r"([+-]?)([^+-]+)")
_COUPLING = re.compile(r"^t(\d+)$")
_POWER = re.compile(r"^l(?:\^(\d+))?$")
_RATIONAL = re.compile(r"^\d+(?:\.\d+)?(?:/\d+)?$")


@dataclass(frozen=True)
class Potential:
    """Couplings ``(j, c_j)`` sorted by j; the quadratic ``l^2/2`` is implicit."""

    couplings: Tuple[Tuple[int, Fraction], ...] = ()
    text: str = "0.5*l^2"

    @classmethod
    def parse(cls, text: str) -> "Potential":
        """Read ``"0.5*l^2 + t3*l^3 - 1/2*t4*l^4"``.

        Every power other than the quadratic one carries a formal coupling
        ``t<j>`` with ``j`` equal to the power; a bare quadratic term must be
        exactly ``1/2 l^2``.
        """
        body = text.replace(" ", "").replace("−", "-")
        if not body:
            raise PotentialSyntaxError("Empty potential", text=text)
        consumed = "".join(m.group(0) for m in _TERM.finditer(body))
        if consumed != body:
            raise PotentialSyntaxError("Unexpected characters", text=text)

        couplings: Dict[int, Fraction] = {}
        quadratic = Fraction(0)
        for match in _TERM.finditer(body):
            sign = -1 if match.group(1) == "-" else 1
            coeff = Fraction(sign)
            coupling: Optional[int] = None
            power: Optional[int] = None
            for factor in match.group(2).split("*"):
                if _RATIONAL.match(factor):
                    coeff *= Fraction(factor)
                elif _COUPLING.match(factor):
                    if coupling is not None:
                        raise PotentialSyntaxError("Two couplings in one term", text=text)
                    coupling = int(_COUPLING.match(factor).group(1))
                elif _POWER.match(factor):
                    if power is not None:
                        raise PotentialSyntaxError("Two powers of l in one term", text=text)
                    power = int(_POWER.match(factor).group(1) or 1)
                else:
                    raise PotentialSyntaxError("Unknown factor", details={"factor": factor}, text=text)
            if power is None or power < 1:
                raise PotentialSyntaxError("Every term needs a power of l", text=text)
            if coupling is None:
                if power != 2:
                    raise PotentialSyntaxError(
                        "Only the quadratic term may come without a coupling",
                        details={"power": power},
                        text=text,
                    )
                quadratic += coeff
                continue
            if coupling != power:
                raise PotentialSyntaxError(
                    "Coupling index must match the power of l",
                    details={"coupling": f"t{coupling}", "power": power},
                    text=text,
                )
            couplings[power] = couplings.get(power, Fraction(0)) + coeff
        if quadratic not in (0, Fraction(1, 2)):
            raise PotentialSyntaxError("Quadratic term must be l^2/2", details={"coefficient": quadratic}, text=text)
        return cls(tuple(sorted((j, c) for j, c in couplings.items() if c)), text.strip())

    @classmethod
    def gaussian(cls) -> "Potential":
        return cls()

    @property
    def coupling_map(self) -> Dict[int, Fraction]:
        return dict(self.couplings)

    @property
    def degree(self) -> int:
        return max([2] + [j for j, _ in self.couplings])

    def is_even(self) -> bool:
        return all(j % 2 == 0 for j, _ in self.couplings)

    def derivative_series(self, k: int, order: int) -> Dict[int, CouplingSeries]:
        """Coefficients of ``V^(k)(l)`` as a polynomial in ``l``."""
        coeffs: Dict[int, CouplingSeries] = {}
        if k == 1:
            coeffs[1] = CouplingSeries.one(order)
        elif k == 2:
            coeffs[0] = CouplingSeries.one(order)
        for j, c in self.couplings:
            if j >= k:
                coeffs[j - k] = coeffs.get(j - k, CouplingSeries.zero(order)) + CouplingSeries.coupling(
                    j, order, c * factorial(j) / factorial(j - k)
                )
        return coeffs

    def evaluate_derivative(self, k: int, u: CouplingSeries, z: CouplingSeries, powers: Optional[List[LaurentPoly]] = None) -> LaurentPoly:
        """``V^(k)(h + u + z/h)`` as a Laurent polynomial in ``h``."""
        order = min(u.order, z.order)
        zero = CouplingSeries.zero(order)
        coeffs = self.derivative_series(k, order)
        if not coeffs:
            return LaurentPoly({}, zero=zero)
        top = max(coeffs)
        if powers is None or len(powers) <= top:
            powers = list(trinomial_powers(CouplingSeries.one(order), u, z, top, zero=zero))
        total = LaurentPoly({}, zero=zero)
        for n, c in coeffs.items():
            total = total + powers[n] * c
        return total

    def residue(self, k: int, q: int, u: CouplingSeries, z: CouplingSeries) -> CouplingSeries:
        """``[h^q] V^(k)(h + u + z/h)``."""
        return self.evaluate_derivative(k, u, z).coeff(q)

    def __str__(self) -> str:
        return self.text


__all__ = ["Potential"]
