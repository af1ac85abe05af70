"""Exact algebra: rationals and Laurent polynomials in h."""

from .laurent import LaurentPoly, laurent_coeff, trinomial_power, trinomial_powers
from .rational import as_fraction, bernoulli, falling_factorial, to_qq

__all__ = [
    "LaurentPoly",
    "laurent_coeff",
    "trinomial_power",
    "trinomial_powers",
    "as_fraction",
    "bernoulli",
    "falling_factorial",
    "to_qq",
]
