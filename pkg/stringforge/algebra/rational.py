"""Conversions between Python fractions and sympy's QQ domain."""

from fractions import Fraction
from functools import lru_cache
from typing import Any, Union

from sympy import QQ, Rational
from sympy import bernoulli as _sympy_bernoulli

RationalLike = Union[int, Fraction, str]


def as_fraction(value: Any) -> Fraction:
    """Convert an int, Fraction, QQ element or sympy Rational to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Rational):
        return Fraction(int(value.p), int(value.q))
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return Fraction(int(value.numerator), int(value.denominator))
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"Cannot convert {type(value).__name__} to an exact rational")


def to_qq(value: Any) -> Any:
    """Convert to an element of sympy's QQ domain."""
    frac = as_fraction(value)
    return QQ(frac.numerator, frac.denominator)


def falling_factorial(base: Fraction, k: int) -> Fraction:
    """``base (base - 1) ... (base - k + 1)``; 1 for k = 0."""
    result = Fraction(1)
    for i in range(k):
        result *= base - i
    return result


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Bernoulli number with ``B_1 = -1/2``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 1:
        return Fraction(-1, 2)
    return as_fraction(_sympy_bernoulli(n))


__all__ = ["RationalLike", "as_fraction", "bernoulli", "to_qq", "falling_factorial"]
