"""Continuum string equations order by order in ``1/N``.

With ``s_n = sum_k u_k N^-k`` and ``r_n = sum_h z_h N^-2h`` the two string
equations read

    0 = sum_{lam, eta} d^lam s d^eta r P^(a)_{lam,eta}(ds, dr) [h^0]V'(h + s + r/h)
    x = [h^-1]V'(h + s + r/h)
        + sum_{lam, eta} d^lam s d^eta r P^(b)_{lam,eta}(ds, dr) [h^0]V'(h + s + r/h)

where every ``d = d/dn`` carries one power of ``1/N``. Each operator term
``c r^(e/2) ds^a dr^b`` turns ``[h^0]V'`` into ``r^(e/2) [h^b]V^(1+a+b)``,
which is Taylor expanded around ``(u, z)``. The residues
``R(p, k) = [h^p]V^(k)(h + u + z/h)`` and the jets of the corrections come
from a backend: ``SymbolicBackend`` expresses them through phi_m, psi_m as
rational functions of the jets, the series backend in
``stringforge.specialize`` evaluates them for a concrete potential.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Any, Callable, Dict, Iterable, List, Optional, Protocol, Tuple

from ..algebra.rational import falling_factorial
from ..diffring import DiffExpr
from ..exceptions import HalfIntegerExponent, SingularPivot
from ..logging import get_logger, time_operation
from ..phipsi import phi, psi
from ..stringpoly import EMPTY, OperatorPoly, Partition, StringTable, generate_table, partition_pairs
from .table import GenusTable

logger = get_logger(__name__)

NSeries = Dict[int, Any]
OperatorSource = Callable[[Partition, Partition, str], OperatorPoly]


class Backend(Protocol):
    """Values of the atoms that enter the string equations."""

    def zero(self) -> Any: ...

    def x(self) -> Any: ...

    def residue(self, p: int, k: int) -> Any: ...

    def z_power(self, n: int) -> Any: ...

    def u_jet(self, k: int, m: int) -> Any: ...

    def z_jet(self, h: int, m: int) -> Any: ...

    def total(self, values: Iterable[Any]) -> Any: ...


class SymbolicBackend:
    """Residues on the leading-order shell, written with phi_m and psi_m.

    ``[h^0]V^(k) = phi_{k-1}``, ``[h^-1]V^(k) = psi_{k-1}``,
    ``[h^1]V^(k) = psi_{k-1}/z`` and, for ``q >= 1``,
    ``[h^(q+1)]V^(k) = ([h^(q-1)]V^(k) - q [h^q]V^(k-1)) / z``.
    Negative indices reflect: ``[h^-q] = z^q [h^q]``.
    """

    def __init__(self, table: GenusTable):
        self.table = table
        self.jets = table.jets
        self._residues: Dict[Tuple[int, int], DiffExpr] = {}
        self._jets: Dict[Tuple[str, int, int], DiffExpr] = {}
        self._z = DiffExpr.z(0, self.jets)

    def zero(self) -> DiffExpr:
        return DiffExpr.zero(self.jets)

    def x(self) -> DiffExpr:
        return DiffExpr.x(self.jets)

    def residue(self, p: int, k: int) -> DiffExpr:
        key = (p, k)
        if key not in self._residues:
            if k < 1 or k <= p:
                raise SingularPivot("Residue outside the on-shell range", details={"p": p, "k": k})
            if p == 0:
                value = phi(k - 1, self.jets)
            elif p == -1:
                value = psi(k - 1, self.jets)
            elif p == 1:
                value = psi(k - 1, self.jets) / self._z
            elif p > 1:
                q = p - 1
                value = (self.residue(q - 1, k) - self.residue(q, k - 1) * q) / self._z
            else:
                value = self._z ** (-p) * self.residue(-p, k)
            self._residues[key] = value
        return self._residues[key]

    def z_power(self, n: int) -> DiffExpr:
        return self._z ** n

    def _jet(self, base: str, index: int, m: int) -> DiffExpr:
        key = (base, index, m)
        if key not in self._jets:
            if index == 0:
                value = DiffExpr.u(m, self.jets) if base == "u" else DiffExpr.z(m, self.jets)
            elif m == 0:
                value = self.table.get_u(index) if base == "u" else self.table.get_z(index)
            else:
                value = self._jet(base, index, m - 1).d_x()
            self._jets[key] = value
        return self._jets[key]

    def u_jet(self, k: int, m: int) -> DiffExpr:
        return self._jet("u", k, m)

    def z_jet(self, h: int, m: int) -> DiffExpr:
        return self._jet("z", h, m)

    def total(self, values: Iterable[DiffExpr]) -> DiffExpr:
        return DiffExpr.sum(values, self.jets)


@dataclass
class LinearEquation:
    """``constant + coeff_u * u_order + coeff_z * z_(order/2) = 0``."""

    order: int
    variant: str
    constant: Any
    coeff_u: Any
    coeff_z: Any

    def to_text(self) -> str:
        h = self.order // 2
        return f"({self.constant.to_text()}) + ({self.coeff_u.to_text()})*u{self.order} + ({self.coeff_z.to_text()})*z{h}"


def _mul(a: NSeries, b: NSeries, order: int) -> NSeries:
    out: NSeries = {}
    for k1, v1 in a.items():
        for k2, v2 in b.items():
            k = k1 + k2
            if k > order:
                continue
            product = v1 * v2
            out[k] = out[k] + product if k in out else product
    return {k: v for k, v in out.items() if v}


class StringEquations:
    """Order-by-order assembly of both string equations for one backend."""

    def __init__(self, backend: Any, operators: OperatorSource):
        self.backend = backend
        self.operators = operators
        self._taylor: Dict[Tuple[int, int, int, int, int, int], Any] = {}

    def _terms(self, lam: Partition, eta: Partition, variant: str) -> List[Tuple[Fraction, int, int, int, int]]:
        """``(coeff, e_half, ds, dr, p0)``; the base residue of variant b has ``p0 = -1``."""
        terms = [(c, e, a, b, b) for (e, a, b), c in self.operators(lam, eta, variant).terms.items()]
        if variant == "b" and lam == EMPTY and eta == EMPTY:
            terms.append((Fraction(1), 0, 0, 0, -1))
        return terms

    def taylor(self, e: int, a: int, b: int, p0: int, i: int, j: int) -> Any:
        """``ds^i dr^j [r^(e/2) R(p0, 1+a+b)]`` at ``(u, z)``."""
        key = (e, a, b, p0, i, j)
        if key not in self._taylor:
            pieces = []
            for l in range(j + 1):
                weight = comb(j, l) * falling_factorial(Fraction(e, 2), l)
                if not weight:
                    continue
                if e % 2:
                    raise HalfIntegerExponent(details={"r_exp_half": e, "ds": a, "dr": b})
                residue = self.backend.residue(p0 + j - l, 1 + a + b + i + j - l)
                if not residue:
                    continue
                factor = residue if e // 2 - l == 0 else self.backend.z_power(e // 2 - l) * residue
                pieces.append(factor * weight)
            self._taylor[key] = self.backend.total(pieces)
        return self._taylor[key]

    def _delta(self, order: int, skip_u: Optional[int], skip_z: Optional[int]) -> Tuple[NSeries, NSeries]:
        du = {k: self.backend.u_jet(k, 0) for k in range(1, order + 1) if k != skip_u}
        dz = {2 * h: self.backend.z_jet(h, 0) for h in range(1, order // 2 + 1) if h != skip_z}
        return {k: v for k, v in du.items() if v}, {k: v for k, v in dz.items() if v}

    def _jet_series(self, lam: Partition, eta: Partition, limit: int) -> NSeries:
        series: NSeries = {0: 1}
        for part in lam:
            factor = {k: self.backend.u_jet(k, part) for k in range(limit + 1)}
            series = _mul(series, {k: v for k, v in factor.items() if v}, limit)
        for part in eta:
            factor = {2 * h: self.backend.z_jet(h, part) for h in range(limit // 2 + 1)}
            series = _mul(series, {k: v for k, v in factor.items() if v}, limit)
        return series

    def assemble(self, order: int, variant: str, skip_u: Optional[int] = None, skip_z: Optional[int] = None) -> Any:
        """The ``N^-order`` coefficient, leaving out the atoms ``u_skip_u`` and ``z_skip_z``."""
        du, dz = self._delta(order, skip_u, skip_z)
        du_powers: List[NSeries] = [{0: 1}]
        dz_powers: List[NSeries] = [{0: 1}]
        for i in range(1, order + 1):
            du_powers.append(_mul(du_powers[-1], du, order))
        for j in range(1, order // 2 + 1):
            dz_powers.append(_mul(dz_powers[-1], dz, order))

        pieces: List[Any] = []
        for lam, eta in partition_pairs(order):
            w = lam.size + eta.size
            terms = self._terms(lam, eta, variant)
            if not terms:
                continue
            remaining = order - w
            jets = self._jet_series(lam, eta, remaining)
            for i in range(remaining + 1):
                for j in range((remaining - i) // 2 + 1):
                    shifts = _mul(du_powers[i], dz_powers[j], remaining)
                    if not shifts:
                        continue
                    combined = _mul(jets, shifts, remaining).get(remaining)
                    if combined is None:
                        continue
                    scale = Fraction(1, factorial(i) * factorial(j))
                    for c, e, a, b, p0 in terms:
                        value = self.taylor(e, a, b, p0, i, j)
                        if not value:
                            continue
                        term = value * (c * scale)
                        pieces.append(term * combined)
        return self.backend.total(pieces)

    def _unknown_coefficient(self, variant: str, i: int, j: int) -> Any:
        return self.backend.total(
            [self.taylor(e, a, b, p0, i, j) * c for c, e, a, b, p0 in self._terms(EMPTY, EMPTY, variant)]
        )

    def linear_equation(self, order: int, variant: str) -> LinearEquation:
        h = order // 2 if order % 2 == 0 else None
        with time_operation("assemble_equation", {"order": order, "variant": variant}):
            constant = self.assemble(order, variant, skip_u=order, skip_z=h)
        return LinearEquation(
            order=order,
            variant=variant,
            constant=constant,
            coeff_u=self._unknown_coefficient(variant, 1, 0),
            coeff_z=self._unknown_coefficient(variant, 0, 1) if h else self.backend.zero(),
        )

    def residual(self, order: int, variant: str) -> Any:
        """Full ``N^-order`` coefficient; 0 when every atom solves the equations."""
        value = self.assemble(order, variant)
        if order == 0 and variant == "b":
            value = value - self.backend.x()
        return value

    def solve(self, g: int) -> Tuple[Any, Any]:
        """``(z_g, u_2g)`` from the order ``N^-2g`` equations.

        ``z u' E_a + z' E_b`` is free of ``u_2g`` and ``z' E_a + u' E_b`` is
        free of ``z_g``; any leftover coefficient is a singular pivot.
        """
        order = 2 * g
        eq_a = self.linear_equation(order, "a")
        eq_b = self.linear_equation(order, "b")
        z0, dz, du = self.backend.z_jet(0, 0), self.backend.z_jet(0, 1), self.backend.u_jet(0, 1)
        zdu = z0 * du

        stray = zdu * eq_a.coeff_u + dz * eq_b.coeff_u
        if stray:
            raise SingularPivot("u coefficient survives the z isolation", details={"genus": g})
        pivot_z = zdu * eq_a.coeff_z + dz * eq_b.coeff_z
        if not pivot_z:
            raise SingularPivot("Vanishing pivot for z", details={"genus": g})
        z_g = -(zdu * eq_a.constant + dz * eq_b.constant) / pivot_z

        stray = dz * eq_a.coeff_z + du * eq_b.coeff_z
        if stray:
            raise SingularPivot("z coefficient survives the u isolation", details={"genus": g})
        pivot_u = dz * eq_a.coeff_u + du * eq_b.coeff_u
        if not pivot_u:
            raise SingularPivot("Vanishing pivot for u", details={"genus": g})
        u_2g = -(dz * eq_a.constant + du * eq_b.constant) / pivot_u
        return z_g, u_2g


def string_source(max_weight: int, workers: int = 1, table: Optional[StringTable] = None) -> OperatorSource:
    """Operator lookup backed by a table generated up to ``max_weight``."""
    strings = table if table is not None and table.max_weight >= max_weight else generate_table(max_weight, workers)
    return strings.get


def continuum_equation(
    g: int,
    variant: str,
    table: GenusTable,
    backend: Optional[Any] = None,
    operators: Optional[OperatorSource] = None,
) -> LinearEquation:
    """The order ``N^-2g`` equation, linear in ``u_2g`` and ``z_g``.

    ``g = 0`` gives the leading equations ``phi_0 = 0`` and ``psi_0 = x``.
    """
    equations = StringEquations(backend or SymbolicBackend(table), operators or string_source(2 * g))
    equation = equations.linear_equation(2 * g, variant)
    if g == 0 and variant == "b":
        equation.constant = equation.constant - equations.backend.x()
    return equation


def residual(order: int, variant: str, table: GenusTable, operators: Optional[OperatorSource] = None) -> DiffExpr:
    """Full assembly at ``order`` with every atom taken from ``table``."""
    equations = StringEquations(SymbolicBackend(table), operators or string_source(order))
    return equations.residual(order, variant)


def check_prerequisites(g: int, table: GenusTable) -> None:
    for h in range(1, g):
        table.get_z(h)
    for k in range(1, 2 * g):
        table.get_u(k)


__all__ = [
    "Backend",
    "LinearEquation",
    "StringEquations",
    "SymbolicBackend",
    "check_prerequisites",
    "continuum_equation",
    "residual",
    "string_source",
]
