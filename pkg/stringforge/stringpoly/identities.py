"""Identities of the generator family ``[h^p](h + s + r/h)^J``.

Each check compares both sides exactly as polynomials in s and r.
"""

from typing import Callable, Dict, List

from ..algebra.laurent import LaurentPoly
from ..motzkin import R_GEN, S_GEN, S_RING
from .operators import generator_power


def _bracket(J: int, p: int):
    return generator_power(J).coeff(p)


def lowering(J: int, p: int) -> bool:
    """``dr [h^p]G = ds [h^(p+1)]G``."""
    return _bracket(J, p).diff(R_GEN) == _bracket(J, p + 1).diff(S_GEN)


def raising(J: int, p: int) -> bool:
    """``(r dr + p) [h^p]G = ds [h^(p-1)]G``."""
    lhs = R_GEN * _bracket(J, p).diff(R_GEN) + p * _bracket(J, p)
    return lhs == _bracket(J, p - 1).diff(S_GEN)


def zeroing(J: int) -> bool:
    """``[h^p]G = 0`` whenever ``|p| > J``."""
    return all(not _bracket(J, p) and not _bracket(J, -p) for p in range(J + 1, J + 4))


def swapping(J: int) -> bool:
    """``r dr^2 [h^0]G = (ds^2 - dr) [h^0]G``."""
    g = _bracket(J, 0)
    return R_GEN * g.diff(R_GEN).diff(R_GEN) == g.diff(S_GEN).diff(S_GEN) - g.diff(R_GEN)


def integration_by_parts(q: int, p: int) -> bool:
    """``ds [h^p](h - r/h)(h + s + r/h)^q = p [h^p](h + s + r/h)^q``."""
    weight = LaurentPoly({1: S_RING.one, -1: -R_GEN}, zero=S_RING.zero)
    lhs = (weight * generator_power(q)).coeff(p).diff(S_GEN)
    return lhs == p * _bracket(q, p)


def reflection(J: int, p: int) -> bool:
    """``[h^-p]G = r^p [h^p]G`` for ``p >= 0``."""
    return _bracket(J, -p) == R_GEN ** p * _bracket(J, p)


IDENTITIES: Dict[str, Callable[[int], bool]] = {
    "lowering": lambda J: all(lowering(J, p) for p in range(-J - 1, J + 1)),
    "raising": lambda J: all(raising(J, p) for p in range(-J, J + 2)),
    "zeroing": zeroing,
    "swapping": swapping,
    "integration_by_parts": lambda J: all(integration_by_parts(J, p) for p in range(-J - 1, J + 2)),
    "reflection": lambda J: all(reflection(J, p) for p in range(0, J + 1)),
}


def check_identities(max_J: int = 10) -> Dict[str, List[int]]:
    """Map each identity to the values of J (``0..max_J``) where it fails."""
    return {name: [J for J in range(max_J + 1) if not check(J)] for name, check in IDENTITIES.items()}


__all__ = [
    "IDENTITIES",
    "check_identities",
    "integration_by_parts",
    "lowering",
    "raising",
    "reflection",
    "swapping",
    "zeroing",
]
