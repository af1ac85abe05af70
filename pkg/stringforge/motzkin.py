"""Bilateral Motzkin paths and their N-graded contributions.

Entries of powers of the tridiagonal recurrence matrix are sums over Motzkin
paths. A path contributes a product of shifted coefficients: an up step
contributes 1, a flat step at height k contributes ``s_{n+k}`` and a down step
leaving height k contributes ``r_{n+k}``. Each shifted coefficient is expanded
in the continuum limit, ``s_{n+k} = sum_m k^m/m! N^-m s^(m)``, so a path
contributes a polynomial in s, r and their x-derivatives graded by powers of
1/N.

The path ring is ``QQ[s, r, s1..sW, r1..rW]`` with ``s_m`` standing for the
m-th derivative of s.
"""

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from sympy import QQ
from sympy.polys.orderings import lex
from sympy.polys.rings import PolyElement, ring

from .exceptions import InputError, JetOrderExceeded
from .logging import get_logger

logger = get_logger(__name__)

PATH_JET_ORDER = 8

_names = ["s", "r"] + [f"s{m}" for m in range(1, PATH_JET_ORDER + 1)] + [f"r{m}" for m in range(1, PATH_JET_ORDER + 1)]
PATH_RING, *_path_gens = ring(_names, QQ, lex)
S_RING, S_GEN, R_GEN = ring("s,r", QQ, lex)


def s_jet(m: int) -> PolyElement:
    """The m-th derivative of s in the path ring."""
    if m > PATH_JET_ORDER:
        raise JetOrderExceeded("Path ring jet order exceeded", details={"order": m})
    return _path_gens[0] if m == 0 else _path_gens[1 + m]


def r_jet(m: int) -> PolyElement:
    if m > PATH_JET_ORDER:
        raise JetOrderExceeded("Path ring jet order exceeded", details={"order": m})
    return _path_gens[1] if m == 0 else _path_gens[1 + PATH_JET_ORDER + m]


class Step(enum.Enum):
    UP = "U"
    FLAT = "F"
    DOWN = "D"

    @property
    def delta(self) -> int:
        return {"U": 1, "F": 0, "D": -1}[self.value]


@dataclass(frozen=True)
class MotzkinPath:
    """A step sequence; heights are unrestricted prefix sums starting at 0."""

    steps: Tuple[Step, ...]

    @classmethod
    def from_text(cls, text: str) -> "MotzkinPath":
        try:
            return cls(tuple(Step(ch) for ch in text.strip().upper()))
        except ValueError as e:
            raise InputError("Paths are strings over U, F, D", details={"path": text}) from e

    @property
    def length(self) -> int:
        return len(self.steps)

    def heights(self) -> List[int]:
        heights = [0]
        for step in self.steps:
            heights.append(heights[-1] + step.delta)
        return heights

    @property
    def end_height(self) -> int:
        return sum(step.delta for step in self.steps)

    def __str__(self) -> str:
        return "".join(step.value for step in self.steps)


def iter_paths(length: int, end_height: int) -> Iterator[MotzkinPath]:
    """Lazily yield every path of ``length`` ending at ``end_height``, in U < F < D order."""
    if length < 0:
        return

    def _walk(prefix: List[Step], height: int, remaining: int) -> Iterator[Tuple[Step, ...]]:
        if remaining == 0:
            if height == end_height:
                yield tuple(prefix)
            return
        for step in (Step.UP, Step.FLAT, Step.DOWN):
            h = height + step.delta
            if abs(end_height - h) <= remaining - 1:
                prefix.append(step)
                yield from _walk(prefix, h, remaining - 1)
                prefix.pop()

    for steps in _walk([], 0, length):
        yield MotzkinPath(steps)


def enumerate_paths(length: int, end_height: int) -> List[MotzkinPath]:
    """All paths from height 0 to ``end_height`` with ``length`` steps."""
    return list(iter_paths(length, end_height))


def path_count(length: int, end_height: int) -> int:
    """Trinomial count of paths: sum of l!/(i! j! k!) over i + j + k = l, i - k = m."""
    total = 0
    for k in range(length + 1):
        i = k + end_height
        j = length - i - k
        if i < 0 or j < 0:
            continue
        total += factorial(length) // (factorial(i) * factorial(j) * factorial(k))
    return total


class NGradedExpr:
    """Finite series ``sum_k N^-k P_k`` with ``P_k`` in the path ring."""

    __slots__ = ("grades", "order")

    def __init__(self, grades: Optional[Mapping[int, PolyElement]] = None, order: int = 0):
        self.order = order
        self.grades: Dict[int, PolyElement] = {k: p for k, p in (grades or {}).items() if p and 0 <= k <= order}

    @classmethod
    def one(cls, order: int) -> "NGradedExpr":
        return cls({0: PATH_RING.one}, order)

    def grade(self, k: int) -> PolyElement:
        return self.grades.get(k, PATH_RING.zero)

    def __add__(self, other: "NGradedExpr") -> "NGradedExpr":
        order = min(self.order, other.order)
        grades = dict(self.grades)
        for k, p in other.grades.items():
            grades[k] = grades[k] + p if k in grades else p
        return NGradedExpr(grades, order)

    def __mul__(self, other: "NGradedExpr") -> "NGradedExpr":
        order = min(self.order, other.order)
        grades: Dict[int, PolyElement] = {}
        for k1, p1 in self.grades.items():
            for k2, p2 in other.grades.items():
                k = k1 + k2
                if k > order:
                    continue
                product = p1 * p2
                grades[k] = grades[k] + product if k in grades else product
        return NGradedExpr(grades, order)

    def prune(self, bounds: Optional[Mapping[int, int]]) -> "NGradedExpr":
        """Drop terms whose jet exponents exceed ``bounds`` (generator index to max exponent)."""
        if bounds is None:
            return self
        grades = {}
        for k, p in self.grades.items():
            kept = {m: c for m, c in p.iterterms() if all(m[i] <= bounds.get(i, 0) for i in range(2, len(m)))}
            grades[k] = PATH_RING.from_dict(kept)
        return NGradedExpr(grades, self.order)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NGradedExpr):
            return NotImplemented
        return self.grades == other.grades

    def to_text(self) -> str:
        if not self.grades:
            return "0"
        return " + ".join(f"N^-{k}*({p.as_expr()})" for k, p in sorted(self.grades.items()))

    def __repr__(self) -> str:
        return f"NGradedExpr({self.to_text()})"


@lru_cache(maxsize=None)
def _shift_factor(kind: str, k: int, order: int) -> NGradedExpr:
    """Continuum expansion of ``s_{n+k}`` or ``r_{n+k}`` to ``order``."""
    jet = s_jet if kind == "s" else r_jet
    grades = {}
    for m in range(order + 1):
        c = Fraction(k) ** m / factorial(m)
        if c:
            grades[m] = jet(m) * QQ(c.numerator, c.denominator)
    return NGradedExpr(grades, order)


def step_factor(step: Step, height: int, order: int) -> NGradedExpr:
    if step is Step.UP:
        return NGradedExpr.one(order)
    if step is Step.FLAT:
        return _shift_factor("s", height, order)
    return _shift_factor("r", height, order)


def contribution(path: MotzkinPath, order: int) -> NGradedExpr:
    """Product of the path's step factors, truncated at ``N^-order``."""
    result = NGradedExpr.one(order)
    for step, height in zip(path.steps, path.heights()):
        if step is not Step.UP:
            result = result * step_factor(step, height, order)
    return result


def _bounds_key(bounds: Optional[Mapping[int, int]]) -> Optional[Tuple[Tuple[int, int], ...]]:
    return None if bounds is None else tuple(sorted(bounds.items()))


@lru_cache(maxsize=4096)
def _path_sum_cached(length: int, end_height: int, order: int, bounds: Optional[Tuple[Tuple[int, int], ...]]) -> NGradedExpr:
    limits = dict(bounds) if bounds is not None else None
    states: Dict[int, NGradedExpr] = {0: NGradedExpr.one(order)}
    for remaining in range(length, 0, -1):
        nxt: Dict[int, NGradedExpr] = {}
        for height, value in states.items():
            for step in (Step.UP, Step.FLAT, Step.DOWN):
                target = height + step.delta
                if abs(end_height - target) > remaining - 1:
                    continue
                moved = value if step is Step.UP else (value * step_factor(step, height, order)).prune(limits)
                nxt[target] = nxt[target] + moved if target in nxt else moved
        states = nxt
    return states.get(end_height, NGradedExpr({}, order))


def path_sum(length: int, end_height: int, order: int, bounds: Optional[Mapping[int, int]] = None) -> NGradedExpr:
    """``sum_p contribution(p, order)`` by dynamic programming over heights.

    ``bounds`` optionally caps the exponent of each jet generator; terms
    beyond the caps are dropped as soon as they appear.
    """
    return _path_sum_cached(length, end_height, order, _bounds_key(bounds))


def jet_bounds(lam: Sequence[int], eta: Sequence[int]) -> Dict[int, int]:
    """Generator caps for extracting the coefficient of ``prod s^(lam_i) prod r^(eta_i)``."""
    bounds: Dict[int, int] = {}
    for part in lam:
        i = PATH_RING.gens.index(s_jet(part))
        bounds[i] = bounds.get(i, 0) + 1
    for part in eta:
        i = PATH_RING.gens.index(r_jet(part))
        bounds[i] = bounds.get(i, 0) + 1
    return bounds


def modified_string_poly(lam: Sequence[int], eta: Sequence[int], J: int, variant: str) -> PolyElement:
    """Coefficient of ``prod s^(lam_i) prod r^(eta_i)`` in the summed path contributions.

    Variant ``a`` sums over paths of length J-1 returning to height 0,
    variant ``b`` over those ending at -1. The result lies in ``QQ[s, r]``.
    """
    if J < 1:
        raise InputError("J must be at least 1", details={"J": J})
    if variant not in ("a", "b"):
        raise InputError("Variant must be a or b", details={"variant": variant})
    end_height = 0 if variant == "a" else -1
    weight = sum(lam) + sum(eta)
    bounds = jet_bounds(lam, eta)
    total = path_sum(J - 1, end_height, weight, bounds).grade(weight)

    acc: Dict[Tuple[int, int], object] = {}
    for monom, coeff in total.iterterms():
        if all(monom[i] == bounds.get(i, 0) for i in range(2, len(monom))):
            acc[(monom[0], monom[1])] = coeff
    return S_RING.from_dict(acc)


__all__ = [
    "PATH_JET_ORDER",
    "PATH_RING",
    "S_RING",
    "S_GEN",
    "R_GEN",
    "Step",
    "MotzkinPath",
    "NGradedExpr",
    "iter_paths",
    "enumerate_paths",
    "path_count",
    "contribution",
    "path_sum",
    "jet_bounds",
    "modified_string_poly",
    "s_jet",
    "r_jet",
]
