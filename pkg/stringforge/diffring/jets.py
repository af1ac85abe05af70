"""Jet variables and the polynomial ring that carries them.

The ring is ``QQ[x, u0..uK, z0..zK]`` where ``u_k`` and ``z_k`` stand for the
k-th x-derivatives of u and z and K is the configured jet order.
"""

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from sympy import QQ
from sympy.polys.orderings import lex
from sympy.polys.rings import PolyElement, PolyRing, ring

from ..config import get_default_config
from ..exceptions import JetOrderExceeded

BASES = ("u", "z")


@dataclass(frozen=True, order=True)
class JetVariable:
    """The ``order``-th x-derivative of ``base`` (``u`` or ``z``)."""

    base: str
    order: int

    def __post_init__(self) -> None:
        if self.base not in BASES:
            raise ValueError(f"Unknown jet base: {self.base}")
        if self.order < 0:
            raise ValueError("Jet order must be non-negative")

    def derivative(self) -> "JetVariable":
        return JetVariable(self.base, self.order + 1)

    def to_text(self) -> str:
        return jet_name(self.base, self.order)

    def __str__(self) -> str:
        return self.to_text()


def jet_name(base: str, order: int) -> str:
    """``u``, ``u'``, ``u''``, ``u'''``, then ``u^(4)`` and up."""
    if order <= 3:
        return base + "'" * order
    return f"{base}^({order})"


_JET_TOKEN = re.compile(r"([uz])(?:\^\((\d+)\)|('*))(?!\d)")


def jets_to_symbols(text: str) -> str:
    """Rewrite printed jets (``u''``, ``z^(4)``) into ring symbols (``u2``, ``z4``)."""

    def _replace(match: "re.Match[str]") -> str:
        base, explicit, primes = match.group(1), match.group(2), match.group(3)
        order = int(explicit) if explicit is not None else len(primes or "")
        return f"{base}{order}"

    return _JET_TOKEN.sub(_replace, text)


class JetRing:
    """Polynomial ring over QQ in ``x`` and the jets of u and z."""

    def __init__(self, jet_order: int):
        if jet_order < 1:
            raise ValueError("jet_order must be at least 1")
        self.jet_order = jet_order
        names = ["x"] + [f"u{k}" for k in range(jet_order + 1)] + [f"z{k}" for k in range(jet_order + 1)]
        self.ring: PolyRing
        self.ring, *gens = ring(names, QQ, lex)
        self.gens: Tuple[PolyElement, ...] = tuple(gens)
        self.names: Tuple[str, ...] = tuple(names)

    @property
    def ngens(self) -> int:
        return len(self.gens)

    @property
    def x(self) -> PolyElement:
        return self.gens[0]

    def index(self, base: str, order: int) -> int:
        """Generator index of a jet."""
        if order > self.jet_order:
            raise JetOrderExceeded(
                "Derivative beyond the jet order of the ring",
                details={"jet": jet_name(base, order), "jet_order": self.jet_order},
            )
        offset = 1 if base == "u" else self.jet_order + 2
        return offset + order

    def jet(self, base: str, order: int = 0) -> PolyElement:
        return self.gens[self.index(base, order)]

    def u(self, order: int = 0) -> PolyElement:
        return self.jet("u", order)

    def z(self, order: int = 0) -> PolyElement:
        return self.jet("z", order)

    def describe(self, index: int) -> Optional[JetVariable]:
        """The jet behind a generator index; None for x."""
        if index == 0:
            return None
        if index <= self.jet_order + 1:
            return JetVariable("u", index - 1)
        return JetVariable("z", index - self.jet_order - 2)

    def u_indices(self) -> List[int]:
        return list(range(1, self.jet_order + 2))

    def z_indices(self) -> List[int]:
        return list(range(self.jet_order + 2, 2 * self.jet_order + 3))

    def symbol_names(self) -> Dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    def __repr__(self) -> str:
        return f"JetRing(jet_order={self.jet_order})"


def jet_ring(jet_order: Optional[int] = None) -> JetRing:
    """Shared ring for a jet order (default from the engine configuration)."""
    if jet_order is None:
        return _jet_ring_for(get_default_config().jet_order)
    return _jet_ring_for(jet_order)


@lru_cache(maxsize=None)
def _jet_ring_for(jet_order: int) -> JetRing:
    return JetRing(jet_order)


__all__ = ["JetVariable", "JetRing", "jet_ring", "jet_name", "jets_to_symbols", "BASES"]
