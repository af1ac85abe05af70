"""The auxiliary functions phi_m, psi_m.

``phi_m`` and ``psi_m`` are the residues ``[h^0]`` and ``[h^-1]`` of
``V^(m+1)(h + u + z/h)`` on the leading-order solution. They do not depend
on the potential: starting from ``phi_0 = 0`` and ``psi_0 = x`` each index
follows from the previous one by

    (phi_{m+1}, psi_{m+1}) = 1/D * [[-z u', z'], [z z', -z u']] (phi_m', psi_m')

with ``D = (z')^2 - z (u')^2``.
"""

from dataclasses import dataclass
from threading import RLock
from typing import Any, Dict, Optional, Tuple

from .diffring import D_expr, DiffExpr, JetRing, jet_ring
from .logging import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class PhiPsiPair:
    """``(phi_m, psi_m)`` as reduced rational expressions."""

    m: int
    phi: DiffExpr
    psi: DiffExpr

    def to_dict(self) -> Dict[str, Any]:
        return {"m": self.m, "phi": self.phi.to_text(), "psi": self.psi.to_text()}


_cache: Dict[Tuple[int, int], PhiPsiPair] = {}
_lock = RLock()


def _step(prev: PhiPsiPair, jets: JetRing) -> PhiPsiPair:
    z, dz, du = DiffExpr.z(0, jets), DiffExpr.z(1, jets), DiffExpr.u(1, jets)
    inv_d = D_expr(jets).inverse()
    dphi, dpsi = prev.phi.d_x(), prev.psi.d_x()
    phi = (dz * dpsi - z * du * dphi) * inv_d
    psi = (z * dz * dphi - z * du * dpsi) * inv_d
    return PhiPsiPair(prev.m + 1, phi, psi)


def phi_psi(m: int, jets: Optional[JetRing] = None) -> PhiPsiPair:
    """The pair of index ``m``, memoized per jet ring."""
    if m < 0:
        raise ValueError("m must be non-negative")
    jets = jets or jet_ring()
    key = (jets.jet_order, m)
    with _lock:
        if key in _cache:
            return _cache[key]
        if m == 0:
            pair = PhiPsiPair(0, DiffExpr.zero(jets), DiffExpr.x(jets))
        else:
            pair = _step(phi_psi(m - 1, jets), jets)
            logger.debug("Built phi/psi pair", m=m, phi_terms=len(pair.phi.num), psi_terms=len(pair.psi.num))
        _cache[key] = pair
        return pair


def phi(m: int, jets: Optional[JetRing] = None) -> DiffExpr:
    return phi_psi(m, jets).phi


def psi(m: int, jets: Optional[JetRing] = None) -> DiffExpr:
    return phi_psi(m, jets).psi


def check_unwinding(m: int, jets: Optional[JetRing] = None) -> bool:
    """``z' phi_m + u' psi_m = psi_{m-1}'`` and ``z u' phi_m + z' psi_m = z phi_{m-1}'``."""
    if m < 1:
        raise ValueError("m must be at least 1")
    jets = jets or jet_ring()
    z, dz, du = DiffExpr.z(0, jets), DiffExpr.z(1, jets), DiffExpr.u(1, jets)
    cur, prev = phi_psi(m, jets), phi_psi(m - 1, jets)
    first = dz * cur.phi + du * cur.psi == prev.psi.d_x()
    second = z * du * cur.phi + dz * cur.psi == z * prev.phi.d_x()
    return first and second


def phi_psi_explicit(potential: Any, m: int, u_series: Any, z_series: Any) -> Tuple[Any, Any]:
    """``([h^0], [h^-1]) V^(m+1)(h + u + z/h)`` for a concrete potential.

    ``potential`` is a :class:`stringforge.specialize.Potential`; the series
    are the leading-order coupling series.
    """
    if m < 0:
        raise ValueError("m must be non-negative")
    return potential.residue(m + 1, 0, u_series, z_series), potential.residue(m + 1, -1, u_series, z_series)


def clear_cache() -> None:
    with _lock:
        _cache.clear()


__all__ = ["PhiPsiPair", "phi_psi", "phi", "psi", "check_unwinding", "phi_psi_explicit", "clear_cache"]
