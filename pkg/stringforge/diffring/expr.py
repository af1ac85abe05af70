"""Rational functions in x and the jets of u and z.

A ``DiffExpr`` is ``numerator / prod(f_i^e_i)`` where the ``f_i`` are
irreducible polynomials normalized so that their lex-smallest monomial has
coefficient 1 and no ``f_i`` divides the numerator. That makes the
representation canonical: two expressions are equal exactly when their
numerators and factor maps agree.
"""

import threading
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Dict, Iterable, List, Mapping, Optional, Tuple, Union

import sympy
from sympy import Symbol, fraction, sympify, together
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyElement

from ..algebra.rational import as_fraction, to_qq
from ..exceptions import JetOrderExceeded, SingularPivot
from .jets import JetRing, jet_name, jet_ring, jets_to_symbols

Factors = Dict[PolyElement, int]

_factor_lock = threading.RLock()
_factor_cache: Dict[PolyElement, Tuple[Any, Tuple[Tuple[PolyElement, int], ...]]] = {}


def normalize_factor(f: PolyElement) -> Tuple[PolyElement, Any]:
    """Scale ``f`` so its lex-smallest monomial has coefficient 1.

    Returns the normalized polynomial and the scale taken out.
    """
    trailing = min(f.itermonoms())
    scale = f[trailing]
    return f.quo_ground(scale), scale


def factor_poly(poly: PolyElement) -> Tuple[Any, Tuple[Tuple[PolyElement, int], ...]]:
    """Split ``poly`` into a QQ content and normalized irreducible factors."""
    if poly.is_ground:
        return poly.LC if poly else poly.ring.domain.zero, ()
    with _factor_lock:
        cached = _factor_cache.get(poly)
    if cached is not None:
        return cached

    R = poly.ring
    coeff, factors = sympy.factor_list(poly.as_expr())
    content = to_qq(as_fraction(coeff))
    normalized: List[Tuple[PolyElement, int]] = []
    for factor_expr, multiplicity in factors:
        f = R.from_expr(factor_expr)
        if f.is_ground:
            content *= f.LC ** multiplicity
            continue
        f, scale = normalize_factor(f)
        content *= scale ** multiplicity
        normalized.append((f, int(multiplicity)))
    result = (content, tuple(sorted(normalized, key=lambda item: sorted(item[0].itermonoms()))))
    with _factor_lock:
        _factor_cache[poly] = result
    return result


@lru_cache(maxsize=4096)
def _factor_power(f: PolyElement, k: int) -> PolyElement:
    return f ** k


def _reduce(num: PolyElement, den: Mapping[PolyElement, int]) -> Tuple[PolyElement, Factors]:
    """Cancel every denominator factor that divides the numerator."""
    if not num:
        return num, {}
    remaining: Factors = {}
    for f, e in den.items():
        while e > 0:
            try:
                num = num.exquo(f)
            except ExactQuotientFailed:
                break
            e -= 1
        if e:
            remaining[f] = e
    return num, remaining


def poly_dx(p: PolyElement, jets: JetRing) -> PolyElement:
    """Total x-derivative of a polynomial: ``d(x) = 1``, ``d(u_k) = u_{k+1}``."""
    top_u = jets.jet_order + 1
    top_z = 2 * jets.jet_order + 2
    acc: Dict[Tuple[int, ...], Any] = {}
    for monom, coeff in p.iterterms():
        for i, e in enumerate(monom):
            if not e:
                continue
            if i in (top_u, top_z):
                jet = jets.describe(i)
                raise JetOrderExceeded(
                    "Derivative beyond the jet order of the ring",
                    details={"jet": str(jet), "jet_order": jets.jet_order},
                )
            m = list(monom)
            m[i] -= 1
            if i:
                m[i + 1] += 1
            key = tuple(m)
            acc[key] = acc.get(key, 0) + coeff * e
    return jets.ring.from_dict(acc)


def _term_sort_key(monom: Tuple[int, ...]) -> Tuple[int, Tuple[int, ...]]:
    return (-sum(monom), tuple(-e for e in monom))


def _format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def monomial_text(monom: Tuple[int, ...], jets: JetRing) -> str:
    factors = []
    for i, e in enumerate(monom):
        if not e:
            continue
        jet = jets.describe(i)
        name = "x" if jet is None else jet_name(jet.base, jet.order)
        factors.append(name if e == 1 else f"{name}^{e}")
    return "*".join(factors)


def poly_text(p: PolyElement, jets: JetRing) -> str:
    """Canonical text of a polynomial in the jet ring."""
    if not p:
        return "0"
    pieces: List[str] = []
    for monom in sorted(p.itermonoms(), key=_term_sort_key):
        c = as_fraction(p[monom])
        mono = monomial_text(monom, jets)
        magnitude = abs(c)
        if not mono:
            body = _format_rational(magnitude)
        elif magnitude == 1:
            body = mono
        else:
            body = f"{_format_rational(magnitude)}*{mono}"
        if not pieces:
            pieces.append(f"-{body}" if c < 0 else body)
        else:
            pieces.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(pieces)


class DiffExpr:
    """Reduced rational function over QQ in x and the jets of u, z."""

    __slots__ = ("jets", "num", "den", "_hash")

    def __init__(self, jets: JetRing, num: PolyElement, den: Optional[Mapping[PolyElement, int]] = None, reduced: bool = False):
        self.jets = jets
        if reduced:
            self.num, self.den = num, dict(den or {})
        else:
            self.num, self.den = _reduce(num, den or {})
        if not self.num:
            self.den = {}
        self._hash: Optional[int] = None

    # -- construction -------------------------------------------------

    @classmethod
    def from_poly(cls, poly: PolyElement, jets: Optional[JetRing] = None) -> "DiffExpr":
        return cls(jets or jet_ring(), poly, {}, reduced=True)

    @classmethod
    def from_polys(cls, num: PolyElement, den: PolyElement, jets: Optional[JetRing] = None) -> "DiffExpr":
        """``num / den`` with ``den`` factored and normalized."""
        jets = jets or jet_ring()
        if not den:
            raise SingularPivot("Division by the zero polynomial")
        content, factors = factor_poly(den)
        return cls(jets, num.quo_ground(content), dict(factors))

    @classmethod
    def constant(cls, value: Union[int, Fraction], jets: Optional[JetRing] = None) -> "DiffExpr":
        jets = jets or jet_ring()
        return cls(jets, jets.ring(to_qq(value)), {}, reduced=True)

    @classmethod
    def zero(cls, jets: Optional[JetRing] = None) -> "DiffExpr":
        return cls.constant(0, jets)

    @classmethod
    def one(cls, jets: Optional[JetRing] = None) -> "DiffExpr":
        return cls.constant(1, jets)

    @classmethod
    def x(cls, jets: Optional[JetRing] = None) -> "DiffExpr":
        jets = jets or jet_ring()
        return cls.from_poly(jets.x, jets)

    @classmethod
    def u(cls, order: int = 0, jets: Optional[JetRing] = None) -> "DiffExpr":
        jets = jets or jet_ring()
        return cls.from_poly(jets.u(order), jets)

    @classmethod
    def z(cls, order: int = 0, jets: Optional[JetRing] = None) -> "DiffExpr":
        jets = jets or jet_ring()
        return cls.from_poly(jets.z(order), jets)

    @classmethod
    def from_text(cls, text: str, jets: Optional[JetRing] = None) -> "DiffExpr":
        """Parse canonical text (``u''``, ``z^(4)``, ``^`` for powers)."""
        jets = jets or jet_ring()
        source = jets_to_symbols(text).replace("^", "**")
        names = {name: Symbol(name) for name in jets.names}
        expr = sympify(source, locals=names)
        num_expr, den_expr = fraction(together(expr))
        R = jets.ring
        return cls.from_polys(R.from_expr(num_expr), R.from_expr(den_expr), jets)

    @classmethod
    def sum(cls, items: Iterable["DiffExpr"], jets: Optional[JetRing] = None) -> "DiffExpr":
        """Sum over one common denominator with a single reduction."""
        items = [item for item in items if item]
        if not items:
            return cls.zero(jets)
        jets = items[0].jets
        common: Factors = {}
        for item in items:
            for f, e in item.den.items():
                if e > common.get(f, 0):
                    common[f] = e
        num = jets.ring.zero
        for item in items:
            term = item.num
            for f, e in common.items():
                missing = e - item.den.get(f, 0)
                if missing:
                    term = term * _factor_power(f, missing)
            num += term
        return cls(jets, num, common)

    def _coerce(self, other: Any) -> Optional["DiffExpr"]:
        if isinstance(other, DiffExpr):
            return other
        if isinstance(other, (int, Fraction)):
            return DiffExpr.constant(other, self.jets)
        if isinstance(other, PolyElement) and other.ring == self.jets.ring:
            return DiffExpr.from_poly(other, self.jets)
        return None

    # -- inspection ---------------------------------------------------

    @property
    def numerator(self) -> PolyElement:
        return self.num

    @property
    def denominator_factors(self) -> Dict[PolyElement, int]:
        return dict(self.den)

    def denominator(self) -> PolyElement:
        result = self.jets.ring.one
        for f, e in self.den.items():
            result *= _factor_power(f, e)
        return result

    def is_polynomial(self) -> bool:
        return not self.den

    def is_constant(self) -> bool:
        return not self.den and self.num.is_ground

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("Expression is not constant")
        return as_fraction(self.num.LC) if self.num else Fraction(0)

    def generators(self) -> List[int]:
        """Indices of the ring generators that actually occur."""
        used = set()
        for poly in [self.num, *self.den]:
            for monom in poly.itermonoms():
                used.update(i for i, e in enumerate(monom) if e)
        return sorted(used)

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other: object) -> bool:
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        return self.num == coerced.num and self.den == coerced.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, frozenset(self.den.items())))
        return self._hash

    # -- arithmetic ---------------------------------------------------

    def __neg__(self) -> "DiffExpr":
        return DiffExpr(self.jets, -self.num, self.den, reduced=True)

    def __add__(self, other: Any) -> "DiffExpr":
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        if not coerced:
            return self
        if not self:
            return coerced
        return DiffExpr.sum([self, coerced])

    __radd__ = __add__

    def __sub__(self, other: Any) -> "DiffExpr":
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        return self + (-coerced)

    def __rsub__(self, other: Any) -> "DiffExpr":
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        return coerced + (-self)

    def __mul__(self, other: Any) -> "DiffExpr":
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        if not self or not coerced:
            return DiffExpr.zero(self.jets)
        if coerced.is_constant():
            return DiffExpr(self.jets, self.num * coerced.num, self.den, reduced=True)
        if self.is_constant():
            return DiffExpr(self.jets, coerced.num * self.num, coerced.den, reduced=True)
        n1, d2 = _reduce(self.num, coerced.den)
        n2, d1 = _reduce(coerced.num, self.den)
        den = dict(d1)
        for f, e in d2.items():
            den[f] = den.get(f, 0) + e
        return DiffExpr(self.jets, n1 * n2, den, reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "DiffExpr":
        if not self:
            raise SingularPivot("Division by a zero expression")
        content, factors = factor_poly(self.num)
        num = self.jets.ring(1 / content) if content != 1 else self.jets.ring.one
        for f, e in self.den.items():
            num *= _factor_power(f, e)
        return DiffExpr(self.jets, num, dict(factors), reduced=True)

    def __truediv__(self, other: Any) -> "DiffExpr":
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        if coerced.is_constant():
            if not coerced:
                raise SingularPivot("Division by zero")
            return DiffExpr(self.jets, self.num.quo_ground(coerced.num.LC), self.den, reduced=True)
        return self * coerced.inverse()

    def __rtruediv__(self, other: Any) -> "DiffExpr":
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        return coerced * self.inverse()

    def __pow__(self, n: int) -> "DiffExpr":
        if n == 0:
            return DiffExpr.one(self.jets)
        if n < 0:
            return self.inverse() ** (-n)
        den = {f: e * n for f, e in self.den.items()}
        return DiffExpr(self.jets, self.num ** n, den, reduced=True)

    # -- derivation and substitution ------------------------------------

    def d_x(self) -> "DiffExpr":
        """Total x-derivative (quotient rule over the factored denominator)."""
        dnum = poly_dx(self.num, self.jets)
        if not self.den:
            return DiffExpr(self.jets, dnum, {}, reduced=True)
        factors = list(self.den.items())
        product = self.jets.ring.one
        for f, _ in factors:
            product *= f
        num = dnum * product
        for i, (f, e) in enumerate(factors):
            others = self.jets.ring.one
            for j, (g, _) in enumerate(factors):
                if j != i:
                    others *= g
            num -= self.num * poly_dx(f, self.jets) * others * e
        den = {f: e + 1 for f, e in factors}
        return DiffExpr(self.jets, num, den)

    def substitute(self, mapping: Mapping[int, Any]) -> "DiffExpr":
        """Replace generators (by index) with polynomials or rationals."""
        R = self.jets.ring
        pairs = [(self.jets.gens[i], R(to_qq(v)) if isinstance(v, (int, Fraction)) else v) for i, v in sorted(mapping.items())]
        num = self.num.compose(pairs) if pairs else self.num
        den = self.denominator()
        den = den.compose(pairs) if pairs else den
        if not den:
            raise SingularPivot("Substitution sends the denominator to zero")
        return DiffExpr.from_polys(num, den, self.jets)

    def filter_monomials(self, keep: Callable[[Tuple[int, ...]], bool]) -> "DiffExpr":
        """Drop monomials, equivalent to sending some generators to zero."""
        R = self.jets.ring
        num = R.from_dict({m: c for m, c in self.num.iterterms() if keep(m)})
        den = R.from_dict({m: c for m, c in self.denominator().iterterms() if keep(m)})
        if not den:
            raise SingularPivot("Specialization sends the denominator to zero")
        return DiffExpr.from_polys(num, den, self.jets)

    def symmetric(self) -> "DiffExpr":
        """Specialize to u = 0 (every u-jet vanishes)."""
        u_idx = self.jets.u_indices()
        return self.filter_monomials(lambda m: all(m[i] == 0 for i in u_idx))

    def at_gaussian(self) -> "DiffExpr":
        """Specialize to the Gaussian point u = 0, z = x."""
        jets = self.jets
        mapping: Dict[int, Any] = {i: 0 for i in jets.u_indices()}
        z_idx = jets.z_indices()
        mapping[z_idx[0]] = jets.x
        mapping[z_idx[1]] = 1
        for i in z_idx[2:]:
            mapping[i] = 0
        return self.substitute(mapping)

    # -- text -----------------------------------------------------------

    def to_text(self) -> str:
        num = poly_text(self.num, self.jets)
        if not self.den:
            return num
        den_parts = []
        for f, e in sorted(self.den.items(), key=lambda item: poly_text(item[0], self.jets)):
            body = poly_text(f, self.jets)
            if len(f) > 1:
                body = f"({body})"
            den_parts.append(body if e == 1 else f"{body}^{e}")
        if len(self.num) > 1:
            num = f"({num})"
        return f"{num}/({'*'.join(den_parts)})"

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"DiffExpr({self.to_text()})"


def D_expr(jets: Optional[JetRing] = None) -> DiffExpr:
    """The universal denominator ``(z')^2 - z (u')^2``."""
    jets = jets or jet_ring()
    return DiffExpr.from_poly(jets.z(1) ** 2 - jets.z(0) * jets.u(1) ** 2, jets)


__all__ = [
    "DiffExpr",
    "D_expr",
    "factor_poly",
    "normalize_factor",
    "poly_dx",
    "poly_text",
    "monomial_text",
]
