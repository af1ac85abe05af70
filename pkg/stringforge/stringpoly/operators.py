"""Normal-ordered operators in the s- and r-derivatives.

An ``OperatorPoly`` is a finite sum of terms ``c * r^(e/2) * ds^a * dr^b``
with every coefficient to the left of every derivative. Multiplication
honours the commutator ``dr * r = r * dr + 1``; ``ds`` commutes with r.
"""

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Any, Dict, Iterable, List, Optional, Tuple, Union

from sympy.polys.rings import PolyElement

from ..algebra.laurent import LaurentPoly, trinomial_powers
from ..algebra.rational import falling_factorial, to_qq
from ..exceptions import HalfIntegerExponent, InputError
from ..motzkin import R_GEN, S_GEN, S_RING
from ..utils.serializers import format_fraction

Key = Tuple[int, int, int]


class OperatorPoly:
    """Sum of ``coeff * r^(e_half/2) * ds^ds * dr^dr`` keyed by ``(e_half, ds, dr)``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Key, Union[int, Fraction]]] = None):
        self.terms: Dict[Key, Fraction] = {}
        for key, c in (terms or {}).items():
            e, a, b = key
            if a < 0 or b < 0:
                raise InputError("Derivative powers must be non-negative", details={"term": key})
            if c:
                self.terms[(int(e), int(a), int(b))] = Fraction(c)

    @classmethod
    def zero(cls) -> "OperatorPoly":
        return cls()

    @classmethod
    def identity(cls) -> "OperatorPoly":
        return cls({(0, 0, 0): Fraction(1)})

    @classmethod
    def term(cls, coeff: Union[int, Fraction, str], e_half: int = 0, ds: int = 0, dr: int = 0) -> "OperatorPoly":
        return cls({(e_half, ds, dr): Fraction(coeff)})

    @classmethod
    def from_terms(cls, terms: Iterable[Tuple[Union[int, Fraction, str], int, int, int]]) -> "OperatorPoly":
        """Build from ``(coeff, e_half, ds, dr)`` tuples."""
        result = cls()
        for coeff, e_half, ds, dr in terms:
            result = result + cls.term(coeff, e_half, ds, dr)
        return result

    @property
    def max_dr(self) -> int:
        return max((b for _, _, b in self.terms), default=0)

    def sorted_terms(self) -> List[Tuple[Key, Fraction]]:
        return sorted(self.terms.items(), key=lambda item: (item[0][0], item[0][2], -item[0][1]))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OperatorPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "OperatorPoly") -> "OperatorPoly":
        terms = dict(self.terms)
        for key, c in other.terms.items():
            terms[key] = terms.get(key, Fraction(0)) + c
        return OperatorPoly(terms)

    def __neg__(self) -> "OperatorPoly":
        return OperatorPoly({key: -c for key, c in self.terms.items()})

    def __sub__(self, other: "OperatorPoly") -> "OperatorPoly":
        return self + (-other)

    def __mul__(self, other: Any) -> "OperatorPoly":
        if isinstance(other, (int, Fraction)):
            return OperatorPoly({key: c * other for key, c in self.terms.items()})
        if not isinstance(other, OperatorPoly):
            return NotImplemented
        terms: Dict[Key, Fraction] = {}
        for (e1, a1, b1), c1 in self.terms.items():
            for (e2, a2, b2), c2 in other.terms.items():
                beta2 = Fraction(e2, 2)
                for k in range(b1 + 1):
                    weight = comb(b1, k) * falling_factorial(beta2, k)
                    if not weight:
                        continue
                    key = (e1 + e2 - 2 * k, a1 + a2, b1 + b2 - k)
                    terms[key] = terms.get(key, Fraction(0)) + c1 * c2 * weight
        return OperatorPoly(terms)

    def __rmul__(self, other: Any) -> "OperatorPoly":
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        pieces: List[str] = []
        for (e, a, b), c in self.sorted_terms():
            factors = []
            if e:
                factors.append("r" if e == 2 else (f"r^{e // 2}" if e % 2 == 0 else f"r^({e}/2)"))
            if a:
                factors.append("ds" if a == 1 else f"ds^{a}")
            if b:
                factors.append("dr" if b == 1 else f"dr^{b}")
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
        return "".join(pieces)

    def to_records(self) -> List[Dict[str, Any]]:
        return [
            {"r_exp_half": e, "ds": a, "dr": b, "coeff": format_fraction(c)}
            for (e, a, b), c in self.sorted_terms()
        ]

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"OperatorPoly({self.to_text()})"


_R_INVERSE = OperatorPoly({(-2, 0, 0): Fraction(1)})
_SWAP_RHS = OperatorPoly({(0, 2, 0): Fraction(1), (0, 0, 1): Fraction(-1)})


def reduce_mod_I(op: OperatorPoly) -> OperatorPoly:
    """Rewrite ``dr^2`` with ``r dr^2 = ds^2 - dr`` until every term has ``dr`` degree at most 1.

    Each ``dr^b`` with ``b >= 2`` becomes ``dr^(b-2) r^-1 (ds^2 - dr)``,
    normal ordered. The result agrees with ``op`` on every generator
    ``[h^0](h + s + r/h)^J``.
    """
    pending: Dict[Key, Fraction] = dict(op.terms)
    result: Dict[Key, Fraction] = {}
    while pending:
        key, c = pending.popitem()
        if not c:
            continue
        e, a, b = key
        if b <= 1:
            result[key] = result.get(key, Fraction(0)) + c
            continue
        rewritten = OperatorPoly({(e, a, b - 2): c}) * _R_INVERSE * _SWAP_RHS
        for new_key, v in rewritten.terms.items():
            pending[new_key] = pending.get(new_key, Fraction(0)) + v
    return OperatorPoly(result)


@lru_cache(maxsize=None)
def generator_power(J: int) -> LaurentPoly:
    """``(h + s + r/h)^J`` over ``QQ[s, r]``."""
    for j, power in enumerate(trinomial_powers(S_RING.one, S_GEN, R_GEN, J, zero=S_RING.zero)):
        if j == J:
            return power
    raise ValueError("J must be non-negative")


def generator(J: int, p: int = 0) -> PolyElement:
    """``[h^p](h + s + r/h)^(J-1)``, the polynomial an operator acts on."""
    if J < 1:
        raise InputError("J must be at least 1", details={"J": J})
    return generator_power(J - 1).coeff(p)


@lru_cache(maxsize=None)
def _derivative(J: int, ds: int, dr: int) -> PolyElement:
    poly = generator(J)
    for _ in range(ds):
        poly = poly.diff(S_GEN)
    for _ in range(dr):
        poly = poly.diff(R_GEN)
    return poly


def rho_laurent(poly: PolyElement, shift: int = 0) -> LaurentPoly:
    """Rewrite a polynomial in s, r as a Laurent polynomial in ``rho = r^(1/2)``.

    Coefficients are polynomials in s; ``shift`` multiplies by ``rho^shift``.
    """
    acc: Dict[int, Dict[Tuple[int, int], Any]] = {}
    for (i, j), c in poly.iterterms():
        acc.setdefault(2 * j + shift, {})[(i, 0)] = c
    return LaurentPoly({k: S_RING.from_dict(v) for k, v in acc.items()}, zero=S_RING.zero)


def laurent_to_poly(value: LaurentPoly) -> PolyElement:
    """Back from ``rho`` to r; every exponent must be even and non-negative."""
    result = S_RING.zero
    for k, coeff in value.items():
        if k % 2 or k < 0:
            raise HalfIntegerExponent("Result is not a polynomial in r", details={"rho_exponent": k})
        result += coeff * R_GEN ** (k // 2)
    return result


def apply_term(key: Key, J: int) -> LaurentPoly:
    e, a, b = key
    return rho_laurent(_derivative(J, a, b), shift=e)


def apply(op: OperatorPoly, J: int) -> LaurentPoly:
    """Apply ``op`` to ``[h^0](h + s + r/h)^(J-1)``.

    The result is a Laurent polynomial in ``rho = r^(1/2)`` with coefficients
    in ``QQ[s]``; use ``laurent_to_poly`` when it is known to be polynomial.
    """
    if J < 1:
        raise InputError("J must be at least 1", details={"J": J})
    total = LaurentPoly(zero=S_RING.zero)
    for key, c in op.terms.items():
        total = total + apply_term(key, J) * to_qq(c)
    return total


__all__ = [
    "OperatorPoly",
    "reduce_mod_I",
    "apply",
    "apply_term",
    "generator",
    "generator_power",
    "rho_laurent",
    "laurent_to_poly",
]
