"""
Concrete-potential tests: parsing, series arithmetic, leading order and map counts.
"""

from fractions import Fraction

import pytest

from stringforge.diffring import DiffExpr, LogCombo
from stringforge.exceptions import (
    DivisionByZeroSeries,
    InputError,
    NonCancellingLogarithm,
    NonIntegrableMonomial,
    PotentialSyntaxError,
    TruncationExceeded,
)
from stringforge.specialize import (
    CouplingSeries,
    Potential,
    cross_mode_check,
    evaluate,
    f0_series,
    free_energy_series,
    leading_order_series,
    map_count,
    monomial,
)

T4 = monomial(t4=1)

MIXED_POTENTIALS = [
    "0.5*l^2 + t3*l^3 + t4*l^4",
    "0.5*l^2 - 2*t3*l^3 + 1/2*t4*l^4",
    "0.5*l^2 + t3*l^3 + t6*l^6",
    "0.5*l^2 + t4*l^4 + t5*l^5",
]


def scaling_shift(mono):
    """``sum (j/2 - 1) n_j`` for the coupling monomial ``prod t_j^(n_j)``."""
    return sum((Fraction(j, 2) - 1) * n for j, n in mono)


def series(terms, order=2):
    """Build a series from ``{(monomial, x_exponent): coeff}``."""
    return CouplingSeries({(mono, Fraction(a)): Fraction(c) for (mono, a), c in terms.items()}, order)


@pytest.mark.unit
@pytest.mark.specialize
class TestPotential:
    """Potential strings."""

    def test_quartic(self, quartic):
        assert quartic.coupling_map == {4: Fraction(1)}
        assert quartic.degree == 4
        assert quartic.is_even()

    def test_rational_factor_multiplies_coupling(self):
        potential = Potential.parse("0.5*l^2 - 1/2*t4*l^4 + 2*t3*l^3")
        assert potential.coupling_map == {3: Fraction(2), 4: Fraction(-1, 2)}
        assert not potential.is_even()

    def test_gaussian(self, gaussian):
        assert gaussian.couplings == ()
        assert Potential.parse("1/2*l^2").couplings == ()

    @pytest.mark.parametrize(
        "text",
        ["", "l^4", "0.5*l^2 + 2*l^3", "0.5*l^2 + t3*l^4", "l^2", "0.5*l^2 + t4*l^4*y", "0.5*l^2 + t4*t4*l^4", "t4"],
    )
    def test_rejected(self, text):
        with pytest.raises(PotentialSyntaxError) as exc_info:
            Potential.parse(text)
        assert isinstance(exc_info.value, InputError)

    def test_derivative_series(self, quartic):
        coeffs = quartic.derivative_series(1, 2)
        assert coeffs[1] == CouplingSeries.one(2)
        assert coeffs[3] == CouplingSeries.coupling(4, 2, 4)


@pytest.mark.unit
@pytest.mark.specialize
class TestCouplingSeries:
    """Truncated series in the couplings."""

    def test_truncation(self):
        s = CouplingSeries.coupling(4, 1) * CouplingSeries.coupling(4, 1)
        assert not s

    def test_inverse(self):
        s = series({((), 1): 1, (T4, 2): 1})
        expected = series({((), -1): 1, (T4, 0): -1, (monomial(t4=2), 1): 1})
        assert s.inverse() == expected
        assert s * s.inverse() == 1

    def test_inverse_needs_leading_monomial(self):
        with pytest.raises(DivisionByZeroSeries):
            CouplingSeries.coupling(4, 2).inverse()
        with pytest.raises(DivisionByZeroSeries):
            CouplingSeries.one(2) / 0

    def test_log_unit(self):
        s = series({((), 1): 2, (T4, 2): 2})
        log, a = s.log_unit()
        assert a == 1
        assert log == series({(T4, 1): 1, (monomial(t4=2), 2): Fraction(-1, 2)})

    def test_mixed_couplings_with_fractional_exponents(self):
        t3 = monomial(t3=1)
        s = series(
            {((), 1): 1, (t3, Fraction(1, 2)): -6, (T4, 2): -12, (monomial(t3=2), -1): Fraction(1, 3)},
            order=3,
        )
        assert s * s.inverse() == 1
        log_s, a = s.log_unit()
        log_square, a_square = (s * s).log_unit()
        assert (a, a_square) == (1, 2)
        assert log_square == log_s * 2
        assert log_s.coefficient(t3) == {Fraction(-1, 2): Fraction(-6)}

    def test_calculus_in_x(self):
        s = series({((), 2): 3, (T4, Fraction(1, 2)): 1})
        assert s.d_x() == series({((), 1): 6, (T4, Fraction(-1, 2)): Fraction(1, 2)})
        assert s.d_x().integrate_x() == s
        with pytest.raises(NonIntegrableMonomial):
            CouplingSeries.x_power(-1, 2).integrate_x()

    def test_coefficient(self):
        s = series({(T4, 2): -12, (T4, 3): 5})
        assert s.coefficient(T4) == {Fraction(2): Fraction(-12), Fraction(3): Fraction(5)}
        assert s.drop_constant() == s
        assert not s.leading()

    def test_to_text(self):
        assert CouplingSeries.zero(2).to_text() == "0"
        assert CouplingSeries.x_power(1, 2).to_text() == "x + O(t^3)"
        assert series({(T4, 2): -12}).to_text() == "-12*t4*x^(2) + O(t^3)"

    def test_records(self):
        records = series({(T4, 2): -12}).to_records()
        assert records[0].t_exponents == {"t4": 1}
        assert records[0].x_exponent == "2"
        assert records[0].coeff == "-12"


@pytest.mark.unit
@pytest.mark.specialize
class TestLeadingOrder:
    """Leading-order solution of the string equations."""

    def test_quartic(self, quartic):
        u, z = leading_order_series(quartic, 2)
        assert not u
        assert z == series({((), 1): 1, (T4, 2): -12, (monomial(t4=2), 3): 288})

    def test_cubic(self, cubic):
        u, z = leading_order_series(cubic, 2)
        t3 = monomial(t3=1)
        assert u == series({(t3, 1): -6})
        assert z == series({((), 1): 1, (monomial(t3=2), 2): 36})

    def test_gaussian(self, gaussian):
        u, z = leading_order_series(gaussian, 3)
        assert not u
        assert z == CouplingSeries.x_power(1, 3)

    def test_negative_order(self, quartic):
        with pytest.raises(InputError):
            leading_order_series(quartic, -1)

    @pytest.mark.parametrize("text", MIXED_POTENTIALS)
    def test_scaling_exponents(self, text):
        u, z = leading_order_series(Potential.parse(text), 3)
        assert u and z.drop_constant()
        for mono, a, _ in z.items():
            assert a == 1 + scaling_shift(mono)
        for mono, a, _ in u.items():
            assert a == Fraction(1, 2) + scaling_shift(mono)

    @pytest.mark.parametrize("text", MIXED_POTENTIALS)
    def test_residuals_vanish(self, text):
        potential = Potential.parse(text)
        u, z = leading_order_series(potential, 3)
        derivative = potential.evaluate_derivative(1, u, z)
        assert not derivative.coeff(0)
        assert derivative.coeff(-1) == CouplingSeries.x_power(1, 3)

    def test_evaluate_rejects_uncancelled_log(self, jets, quartic):
        u, z = leading_order_series(quartic, 1)
        with pytest.raises(NonCancellingLogarithm):
            evaluate(LogCombo.log(DiffExpr.x(jets)), u, z)

    def test_evaluate_rational(self, jets, quartic):
        u, z = leading_order_series(quartic, 2)
        assert evaluate(DiffExpr.z(0, jets) * 2, u, z) == z * 2


@pytest.mark.integration
@pytest.mark.specialize
class TestMapCounts:
    """Coefficients of the free energies as map counts."""

    def test_planar_quartic(self, quartic):
        f0 = free_energy_series(quartic, 0, 2)
        assert f0.coefficient(T4) == {Fraction(3): Fraction(-2)}
        assert map_count(f0, {4: 1}, quartic) == {3: 2}
        assert map_count(f0, {4: 2}, quartic) == {4: 36}

    def test_planar_from_leading_order(self, quartic):
        u, z = leading_order_series(quartic, 1)
        assert f0_series(u, z) == series({(T4, 3): -2}, order=1)

    def test_genus_one_quartic(self, quartic):
        f1 = free_energy_series(quartic, 1, 2)
        assert map_count(f1, {4: 1}, quartic) == {1: 1}
        assert map_count(f1, {4: 2}, quartic) == {2: 60}

    def test_cubic(self, cubic):
        assert map_count(free_energy_series(cubic, 0, 2), {3: 2}, cubic) == {3: 12}
        assert map_count(free_energy_series(cubic, 1, 2), {3: 2}, cubic) == {1: 3}

    def test_genus_two_starts_at_three_vertices(self, quartic):
        assert not free_energy_series(quartic, 2, 2)

    def test_gaussian_free_energies_vanish(self, gaussian):
        for genus in (0, 1, 2):
            assert not free_energy_series(gaussian, genus, 3)

    def test_profile_outside_potential(self, quartic):
        f0 = free_energy_series(quartic, 0, 2)
        assert map_count(f0, {3: 2}, quartic) == {}

    def test_beyond_truncation(self, quartic):
        with pytest.raises(TruncationExceeded):
            map_count(free_energy_series(quartic, 0, 1), {4: 2}, quartic)

    def test_no_closed_form(self, quartic):
        with pytest.raises(InputError):
            free_energy_series(quartic, 3, 2)


@pytest.mark.integration
@pytest.mark.specialize
class TestCrossMode:
    """Symbolic corrections evaluated on the series against the series-mode solve."""

    def test_quartic(self, quartic, genus1_table, strings):
        assert cross_mode_check(quartic, 4, genus1_table, strings.get) == {"z1": True, "u2": True}

    def test_cubic(self, cubic, genus1_table, strings):
        assert cross_mode_check(cubic, 4, genus1_table, strings.get) == {"z1": True, "u2": True}

    def test_mixed_cubic_quartic(self, genus1_table, strings):
        mixed = Potential.parse(MIXED_POTENTIALS[0])
        assert cross_mode_check(mixed, 3, genus1_table, strings.get) == {"z1": True, "u2": True}
