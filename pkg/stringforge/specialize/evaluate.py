"""Concrete-potential mode.

The leading-order solution ``(u, z)`` of a potential is computed as a
truncated coupling series; valence-independent expressions in the jets of
u and z are then evaluated on it, and the coefficients of the free energies
are read off as map counts.
"""

from fractions import Fraction
from math import factorial
from typing import Any, Dict, Iterable, Mapping, Optional, Tuple, Union

from ..algebra.laurent import LaurentPoly
from ..algebra.rational import as_fraction
from ..closed_forms import closed_form
from ..diffring import DiffExpr, LogCombo
from ..exceptions import InputError, MissingLowerGenus, NoConvergence, NonCancellingLogarithm, TruncationExceeded
from ..logging import get_logger, time_operation
from ..solver import GenusTable, StringEquations, build_table, odd_relation, string_source
from ..solver.assembly import OperatorSource
from .potential import Potential
from .series import CouplingSeries, monomial_degree, series_sum

logger = get_logger(__name__)

Profile = Mapping[int, int]


def leading_order_series(potential: Potential, order: int) -> Tuple[CouplingSeries, CouplingSeries]:
    """Solve ``[h^0]V'(Y) = 0`` and ``[h^-1]V'(Y) = x`` for ``Y = h + u + z/h``.

    Each Picard round fixes one more coupling degree, so ``order + 2``
    rounds always suffice for a polynomial potential.
    """
    if order < 0:
        raise InputError("order must be non-negative", details={"order": order})
    x = CouplingSeries.x_power(1, order)
    u, z = CouplingSeries.zero(order), x
    with time_operation("leading_order_series", {"potential": potential.text, "order": order}):
        for rounds in range(1, order + 3):
            forcing = potential.evaluate_derivative(1, u, z) - _identity_part(u, z)
            new_u = -forcing.coeff(0)
            new_z = x - forcing.coeff(-1)
            if new_u == u and new_z == z:
                logger.debug("Leading order converged", rounds=rounds, order=order)
                return u, z
            u, z = new_u, new_z
    raise NoConvergence(details={"potential": potential.text, "order": order}, rounds=order + 2)


def _identity_part(u: CouplingSeries, z: CouplingSeries) -> LaurentPoly:
    """``Y`` itself, the contribution of the quadratic term to ``V'(Y)``."""
    order = min(u.order, z.order)
    return LaurentPoly({1: CouplingSeries.one(order), 0: u, -1: z}, zero=CouplingSeries.zero(order))


class _Substitution:
    """Values of the ring generators on a pair of series."""

    def __init__(self, jets: Any, u: CouplingSeries, z: CouplingSeries):
        self.jets = jets
        self.order = min(u.order, z.order)
        self._values: Dict[int, CouplingSeries] = {0: CouplingSeries.x_power(1, self.order)}
        self._derivatives = {"u": [u], "z": [z]}
        self._powers: Dict[Tuple[int, int], CouplingSeries] = {}

    def generator(self, index: int) -> CouplingSeries:
        if index not in self._values:
            jet = self.jets.describe(index)
            chain = self._derivatives[jet.base]
            while len(chain) <= jet.order:
                chain.append(chain[-1].d_x())
            self._values[index] = chain[jet.order]
        return self._values[index]

    def power(self, index: int, n: int) -> CouplingSeries:
        key = (index, n)
        if key not in self._powers:
            self._powers[key] = self.generator(index) ** n
        return self._powers[key]

    def poly(self, p: Any) -> CouplingSeries:
        pieces = []
        for monom, coeff in p.iterterms():
            term = CouplingSeries.constant(as_fraction(coeff), self.order)
            for i, e in enumerate(monom):
                if e:
                    term = term * self.power(i, e)
            pieces.append(term)
        return series_sum(pieces, self.order)

    def rational(self, e: DiffExpr) -> CouplingSeries:
        value = self.poly(e.num)
        for f, k in e.den.items():
            value = value * self.poly(f).inverse() ** k
        return value


def evaluate(e: Union[DiffExpr, LogCombo], u: CouplingSeries, z: CouplingSeries) -> CouplingSeries:
    """Substitute the series and their x-derivatives into ``e``.

    Logarithms are expanded as ``log(1 + w)`` after pulling out
    ``c x^a``; the ``log x`` parts must cancel and the constants are dropped.
    """
    sub = _Substitution(e.jets, u, z)
    if isinstance(e, DiffExpr):
        return sub.rational(e)
    total = sub.rational(e.rational)
    log_x = Fraction(0)
    for f, c in e.logs.items():
        expansion, a = sub.poly(f).log_unit()
        total = total + expansion * c
        log_x += a * c
    if log_x:
        raise NonCancellingLogarithm(details={"log_x_coefficient": log_x, "expression": e.to_text()})
    return total


def f0_series(u: CouplingSeries, z: CouplingSeries, order: Optional[int] = None) -> CouplingSeries:
    """``F_0 = int_0^x int_0^x1 log(z/x2)`` termwise."""
    order = min(u.order, z.order) if order is None else order
    ratio = z.truncate(order) * CouplingSeries.x_power(-1, order)
    log_ratio, a = ratio.log_unit()
    if a:
        raise NonCancellingLogarithm(details={"log_x_coefficient": a})
    return log_ratio.integrate_x().integrate_x()


def free_energy_series(potential: Potential, genus: int, order: int) -> CouplingSeries:
    """``F_g`` as a coupling series for ``g <= 2``, without its t-independent part."""
    u, z = leading_order_series(potential, order)
    if genus == 0:
        return f0_series(u, z, order)
    candidate = closed_form(genus)
    if candidate is None:
        raise InputError("No closed form for this genus", details={"genus": genus})
    with time_operation("free_energy_series", {"genus": genus, "order": order}):
        return evaluate(candidate, u, z).drop_constant()


def map_count(series: CouplingSeries, profile: Profile, potential: Potential) -> Dict[int, Fraction]:
    """Face count to number of maps with the vertex profile ``{j: n_j}``.

    The coefficient of ``prod t_j^(n_j) x^F`` is multiplied by
    ``prod n_j!`` and divided by ``prod (-c_j)^(n_j)``.
    """
    mono = tuple(sorted((j, n) for j, n in profile.items() if n))
    if monomial_degree(mono) > series.order:
        raise TruncationExceeded(details={"profile": dict(profile), "order": series.order})
    couplings = potential.coupling_map
    scale = Fraction(1)
    for j, n in mono:
        if j not in couplings:
            return {}
        scale *= Fraction(factorial(n)) / (-couplings[j]) ** n
    counts: Dict[int, Fraction] = {}
    for a, c in series.coefficient(mono).items():
        if a.denominator != 1:
            raise InputError("Face count is not an integer", details={"x_exponent": a})
        counts[int(a)] = c * scale
    return dict(sorted(counts.items()))


class SeriesBackend:
    """Atoms of the string equations evaluated directly from the potential."""

    def __init__(self, potential: Potential, u: CouplingSeries, z: CouplingSeries):
        self.potential = potential
        self.order = min(u.order, z.order)
        self.u_corrections: Dict[int, CouplingSeries] = {0: u}
        self.z_corrections: Dict[int, CouplingSeries] = {0: z}
        self._derivatives: Dict[int, Any] = {}
        self._jets: Dict[Tuple[str, int, int], CouplingSeries] = {}

    def zero(self) -> CouplingSeries:
        return CouplingSeries.zero(self.order)

    def x(self) -> CouplingSeries:
        return CouplingSeries.x_power(1, self.order)

    def residue(self, p: int, k: int) -> CouplingSeries:
        if k not in self._derivatives:
            u, z = self.u_corrections[0], self.z_corrections[0]
            self._derivatives[k] = self.potential.evaluate_derivative(k, u, z)
        return self._derivatives[k].coeff(p)

    def z_power(self, n: int) -> CouplingSeries:
        return self.z_corrections[0] ** n

    def _jet(self, base: str, index: int, m: int) -> CouplingSeries:
        key = (base, index, m)
        if key not in self._jets:
            source = self.u_corrections if base == "u" else self.z_corrections
            if index not in source:
                raise MissingLowerGenus("Series table lacks a correction", key=f"{base}{index}")
            self._jets[key] = source[index] if m == 0 else self._jet(base, index, m - 1).d_x()
        return self._jets[key]

    def u_jet(self, k: int, m: int) -> CouplingSeries:
        return self._jet("u", k, m)

    def z_jet(self, h: int, m: int) -> CouplingSeries:
        return self._jet("z", h, m)

    def total(self, values: Iterable[CouplingSeries]) -> CouplingSeries:
        return series_sum(values, self.order)

    def record(self, g: int, z_g: CouplingSeries, u_2g: CouplingSeries) -> None:
        """Store the genus-g corrections and the odd u that follows from them."""
        self.z_corrections[g] = z_g
        self.u_corrections[2 * g] = u_2g
        self.u_corrections[2 * g + 1] = odd_relation([self.u_corrections[k] for k in range(2 * g + 1)])
        self._jets.clear()


def series_genus_table(
    potential: Potential,
    max_genus: int,
    order: int,
    operators: Optional[OperatorSource] = None,
) -> SeriesBackend:
    """Corrections ``u_k``, ``z_g`` solved directly in series arithmetic."""
    u, z = leading_order_series(potential, order)
    backend = SeriesBackend(potential, u, z)
    backend.u_corrections[1] = odd_relation([u])
    operators = operators or string_source(2 * max_genus)
    for g in range(1, max_genus + 1):
        equations = StringEquations(backend, operators)
        z_g, u_2g = equations.solve(g)
        backend.record(g, z_g, u_2g)
    return backend


def cross_mode_check(
    potential: Potential,
    order: int = 4,
    table: Optional[GenusTable] = None,
    operators: Optional[OperatorSource] = None,
) -> Dict[str, bool]:
    """Evaluated ``z_1``, ``u_2`` against the series-mode solution."""
    operators = operators or string_source(2)
    table = table or build_table(1, operators=operators)
    direct = series_genus_table(potential, 1, order, operators)
    u, z = direct.u_corrections[0], direct.z_corrections[0]
    results = {
        "z1": evaluate(table.get_z(1), u, z) == direct.z_corrections[1],
        "u2": evaluate(table.get_u(2), u, z) == direct.u_corrections[2],
    }
    if not all(results.values()):
        logger.warning("Cross-mode mismatch", potential=potential.text, results=results)
    return results


__all__ = [
    "SeriesBackend",
    "cross_mode_check",
    "evaluate",
    "f0_series",
    "free_energy_series",
    "leading_order_series",
    "map_count",
    "series_genus_table",
]
