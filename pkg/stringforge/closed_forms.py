"""Closed forms of the genus-1 and genus-2 free energies in u, z and x."""

from functools import lru_cache
from fractions import Fraction
from typing import Callable, Dict, Optional, Union

from .diffring import D_expr, DiffExpr, JetRing, LogCombo, jet_ring

F2_BRACKET = """
- 24*(z')^10 + 96*z*(u')^2*(z')^8 + 24*z*z''*(z')^8 - 8*z^2*z^(3)*(z')^7 - 144*z^2*(u')^4*(z')^6
- 84*z^3*(u'')^2*(z')^6 + 6*z^2*(z'')^2*(z')^6 - 96*z^2*(u')^2*z''*(z')^6 - 120*z^3*u'*u^(3)*(z')^6
+ 20*z^3*z^(4)*(z')^6 - 384*z^3*(u')^3*u''*(z')^5 + 384*z^3*u'*u''*z''*(z')^5
- 84*z^4*u''*u^(3)*(z')^5 + 172*z^3*(u')^2*z^(3)*(z')^5 - 84*z^3*z''*z^(3)*(z')^5
- 40*z^4*u'*u^(4)*(z')^5 + 15*z^3*(u')^6*(z')^4 + 64*z^3*(z'')^3*(z')^4
- 638*z^4*(u')^2*(u'')^2*(z')^4 - 340*z^3*(u')^2*(z'')^2*(z')^4 + 451*z^3*(u')^4*z''*(z')^4
+ 192*z^4*(u'')^2*z''*(z')^4 + 48*z^4*(u')^3*u^(3)*(z')^4 + 252*z^4*u'*z''*u^(3)*(z')^4
+ 252*z^4*u'*u''*z^(3)*(z')^4 - 20*z^4*(u')^2*z^(4)*(z')^4 - 256*z^5*u'*(u'')^3*(z')^3
- 768*z^4*u'*u''*(z'')^2*(z')^3 + 1152*z^4*(u')^3*u''*z''*(z')^3 - 168*z^5*(u')^2*u''*u^(3)*(z')^3
- 152*z^4*(u')^4*z^(3)*(z')^3 - 168*z^4*(u')^2*z''*z^(3)*(z')^3 + 80*z^5*(u')^3*u^(4)*(z')^3
- 7*z^4*(u')^8*(z')^2 + 384*z^4*(u')^2*(z'')^3*(z')^2 - 68*z^5*(u')^4*(u'')^2*(z')^2
- 430*z^4*(u')^4*(z'')^2*(z')^2 - 2*z^4*(u')^6*z''*(z')^2 + 1152*z^5*(u')^2*(u'')^2*z''*(z')^2
+ 96*z^5*(u')^5*u^(3)*(z')^2 - 168*z^5*(u')^3*z''*u^(3)*(z')^2 - 168*z^5*(u')^3*u''*z^(3)*(z')^2
- 20*z^5*(u')^4*z^(4)*(z')^2 - 256*z^6*(u')^3*(u'')^3*z' - 768*z^5*(u')^3*u''*(z'')^2*z'
+ 252*z^6*(u')^4*u''*u^(3)*z' - 12*z^5*(u')^6*z^(3)*z' + 252*z^5*(u')^4*z''*z^(3)*z'
- 40*z^6*(u')^5*u^(4)*z' + 64*z^5*(u')^4*(z'')^3 + 22*z^6*(u')^6*(u'')^2 - 4*z^5*(u')^6*(z'')^2
+ 7*z^5*(u')^8*z'' + 192*z^6*(u')^4*(u'')^2*z'' - 24*z^6*(u')^7*u^(3) - 84*z^6*(u')^5*z''*u^(3)
- 84*z^6*(u')^5*u''*z^(3) + 20*z^6*(u')^6*z^(4)
"""


def f1_closed_form(jets: Optional[JetRing] = None) -> LogCombo:
    """``(1/24) log D - (1/12) log(z/x)``."""
    jets = jets or jet_ring()
    z, x = DiffExpr.z(0, jets), DiffExpr.x(jets)
    return LogCombo.log(D_expr(jets), Fraction(1, 24)) - LogCombo.log(z / x, Fraction(1, 12))


@lru_cache(maxsize=None)
def _f2(jets: JetRing) -> DiffExpr:
    bracket = DiffExpr.from_text(" ".join(F2_BRACKET.split()), jets)
    z, x = DiffExpr.z(0, jets), DiffExpr.x(jets)
    return x ** -2 / 240 + bracket / (z ** 2 * D_expr(jets) ** 4 * 5760)


def f2_closed_form(jets: Optional[JetRing] = None) -> LogCombo:
    """``1/(240 x^2) + bracket / (5760 z^2 D^4)``; purely rational."""
    return LogCombo.from_rational(_f2(jets or jet_ring()))


CLOSED_FORMS: Dict[int, Callable[[Optional[JetRing]], LogCombo]] = {
    1: f1_closed_form,
    2: f2_closed_form,
}


def closed_form(g: int, jets: Optional[JetRing] = None) -> Optional[LogCombo]:
    """The known closed form of genus ``g``, if any."""
    builder = CLOSED_FORMS.get(g)
    return builder(jets) if builder else None


__all__ = ["CLOSED_FORMS", "F2_BRACKET", "closed_form", "f1_closed_form", "f2_closed_form"]
