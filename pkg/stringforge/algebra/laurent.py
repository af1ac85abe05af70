"""Laurent polynomials in the spectral variable h.

Coefficients are generic: anything with ``+``, ``-``, ``*`` and a truth
value that is false exactly for zero works (Fractions, sympy ring elements,
``DiffExpr``, ``CouplingSeries``).
"""

from typing import Any, Callable, Dict, Iterator, Mapping, Optional, Tuple

Coefficient = Any


class LaurentPoly:
    """Finite Laurent polynomial ``sum_k c_k h^k`` with no stored zeros."""

    __slots__ = ("_terms", "zero")

    def __init__(self, terms: Optional[Mapping[int, Coefficient]] = None, zero: Coefficient = 0):
        self._terms: Dict[int, Coefficient] = {k: c for k, c in (terms or {}).items() if c}
        self.zero = zero

    @classmethod
    def monomial(cls, coeff: Coefficient, exponent: int = 0, zero: Coefficient = 0) -> "LaurentPoly":
        return cls({exponent: coeff}, zero=zero)

    @property
    def terms(self) -> Dict[int, Coefficient]:
        return dict(self._terms)

    def coeff(self, k: int) -> Coefficient:
        return self._terms.get(k, self.zero)

    def support(self) -> Tuple[int, ...]:
        return tuple(sorted(self._terms))

    def items(self) -> Iterator[Tuple[int, Coefficient]]:
        for k in sorted(self._terms, reverse=True):
            yield k, self._terms[k]

    def map_coeffs(self, func: Callable[[Coefficient], Coefficient]) -> "LaurentPoly":
        return LaurentPoly({k: func(c) for k, c in self._terms.items()}, zero=self.zero)

    def shift(self, n: int) -> "LaurentPoly":
        """Multiply by ``h^n``."""
        return LaurentPoly({k + n: c for k, c in self._terms.items()}, zero=self.zero)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        result = dict(self._terms)
        for k, c in other._terms.items():
            result[k] = result[k] + c if k in result else c
        return LaurentPoly(result, zero=self.zero)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({k: -c for k, c in self._terms.items()}, zero=self.zero)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: Any) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return LaurentPoly({k: c * other for k, c in self._terms.items()}, zero=self.zero)
        result: Dict[int, Coefficient] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                k = k1 + k2
                product = c1 * c2
                result[k] = result[k] + product if k in result else product
        return LaurentPoly(result, zero=self.zero)

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("Negative powers of a Laurent polynomial are not supported")
        result = LaurentPoly({0: self._one()}, zero=self.zero)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def _one(self) -> Coefficient:
        if not self._terms:
            return 1
        sample = next(iter(self._terms.values()))
        return sample ** 0

    def to_text(self, var: str = "h") -> str:
        """Terms by descending exponent of h."""
        if not self._terms:
            return "0"
        parts = []
        for k, c in self.items():
            text = c.to_text() if hasattr(c, "to_text") else str(c)
            if k == 0:
                parts.append(f"({text})")
            else:
                parts.append(f"({text})*{var}^{k}" if k != 1 else f"({text})*{var}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_text()})"


def laurent_coeff(p: LaurentPoly, k: int) -> Coefficient:
    """The ``[h^k]`` bracket; the coefficient's zero when absent."""
    return p.coeff(k)


def _unit(*coeffs: Coefficient) -> Coefficient:
    for c in coeffs:
        if c:
            return c ** 0
    return 1


def trinomial_power(a: Coefficient, b: Coefficient, c: Coefficient, J: int, zero: Coefficient = 0) -> LaurentPoly:
    """``(a*h + b + c/h)^J`` expanded; support lies within ``[-J, J]``."""
    if J < 0:
        raise ValueError("J must be non-negative")
    if J == 0:
        return LaurentPoly({0: _unit(a, b, c)}, zero=zero)
    return LaurentPoly({1: a, 0: b, -1: c}, zero=zero) ** J


def trinomial_powers(a: Coefficient, b: Coefficient, c: Coefficient, J: int, zero: Coefficient = 0) -> Iterator[LaurentPoly]:
    """Yield ``(a*h + b + c/h)^j`` for ``j = 0..J`` by repeated multiplication."""
    base = LaurentPoly({1: a, 0: b, -1: c}, zero=zero)
    current = LaurentPoly({0: _unit(a, b, c)}, zero=zero)
    yield current
    for _ in range(J):
        current = current * base
        yield current


__all__ = ["LaurentPoly", "laurent_coeff", "trinomial_power", "trinomial_powers"]
