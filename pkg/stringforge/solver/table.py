"""Solved corrections ``z_g`` and ``u_k`` keyed by genus and index."""

from dataclasses import dataclass, field
from typing import Dict, List, Optional

from ..diffring import DiffExpr, JetRing, jet_ring
from ..exceptions import MissingLowerGenus


@dataclass
class GenusTable:
    """``z[g]`` for ``g >= 1`` and ``u[k]`` for ``k >= 1``; ``z_0 = z`` and ``u_0 = u``."""

    jets: JetRing = field(default_factory=jet_ring)
    z: Dict[int, DiffExpr] = field(default_factory=dict)
    u: Dict[int, DiffExpr] = field(default_factory=dict)
    symmetric_only: bool = False

    def get_z(self, g: int) -> DiffExpr:
        if g == 0:
            return DiffExpr.z(0, self.jets)
        try:
            return self.z[g]
        except KeyError:
            raise MissingLowerGenus("Genus table lacks a z entry", key=f"z{g}") from None

    def get_u(self, k: int) -> DiffExpr:
        if k == 0:
            return DiffExpr.u(0, self.jets)
        try:
            return self.u[k]
        except KeyError:
            raise MissingLowerGenus("Genus table lacks a u entry", key=f"u{k}") from None

    @property
    def max_genus(self) -> int:
        return max(self.z, default=0)

    def keys(self) -> List[str]:
        """``z1, u1, u2, u3, z2, u4, u5, ...`` grouped by genus."""
        ordered: List[str] = []
        if 1 in self.u:
            ordered.append("u1")
        for g in range(1, self.max_genus + 1):
            for key, present in ((f"z{g}", g in self.z), (f"u{2 * g}", 2 * g in self.u), (f"u{2 * g + 1}", 2 * g + 1 in self.u)):
                if present:
                    ordered.append(key)
        return ordered

    def entry(self, key: str) -> DiffExpr:
        index = int(key[1:])
        return self.get_z(index) if key[0] == "z" else self.get_u(index)

    def symmetric(self) -> "GenusTable":
        """Every entry specialized to ``u = 0``."""
        return GenusTable(
            jets=self.jets,
            z={g: e.symmetric() for g, e in self.z.items()},
            u={k: e.symmetric() for k, e in self.u.items()},
            symmetric_only=True,
        )

    def to_dict(self, keys: Optional[List[str]] = None) -> Dict[str, str]:
        return {key: self.entry(key).to_text() for key in (keys or self.keys())}


__all__ = ["GenusTable"]
