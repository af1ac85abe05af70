"""
Free energy tests: cumulants, the second-derivative relation and closed forms.
"""

from fractions import Fraction

import pytest

from stringforge.closed_forms import closed_form, f1_closed_form, f2_closed_form
from stringforge.diffring import D_expr, DiffExpr, LogCombo
from stringforge.genfun import (
    IntegralForm,
    closed_form_check,
    cumulant,
    free_energy,
    free_energy_relation,
    verify_closed_form,
)
from stringforge.solver import GenusTable


@pytest.mark.unit
@pytest.mark.genfun
class TestCumulants:
    """Coefficients of the formal logarithm of the z-series."""

    def test_genus_zero(self, jets):
        table = GenusTable(jets=jets)
        expected = LogCombo.log(DiffExpr.z(0, jets)) - LogCombo.log(DiffExpr.x(jets))
        assert cumulant(0, table) == expected

    def test_formal_logarithm(self, jets):
        z = DiffExpr.z(0, jets)
        z1, z2 = DiffExpr.z(1, jets), DiffExpr.u(2, jets)
        table = GenusTable(jets=jets, z={1: z1, 2: z2})
        assert cumulant(1, table) == z1 / z
        assert cumulant(2, table) == z2 / z - z1 ** 2 / (2 * z ** 2)

    def test_negative_genus(self, jets):
        with pytest.raises(ValueError):
            cumulant(-1, GenusTable(jets=jets))

    def test_genus_zero_relation_is_the_cumulant(self, jets):
        table = GenusTable(jets=jets)
        assert free_energy_relation(0, table) == cumulant(0, table)

    def test_integral_form(self, jets):
        record = free_energy(0, GenusTable(jets=jets))
        assert isinstance(record.closed_form, IntegralForm)
        assert record.verified
        assert record.closed_form.to_text().startswith("d_x^-2(")


@pytest.mark.unit
@pytest.mark.genfun
class TestClosedForms:
    """Known closed forms in the jets."""

    def test_registry(self, jets):
        assert closed_form(1, jets) == f1_closed_form(jets)
        assert closed_form(3, jets) is None

    def test_genus_one_text(self, jets):
        text = f1_closed_form(jets).to_text()
        assert "log" in text

    def test_symmetric_genus_one(self, jets):
        dz, z, x = DiffExpr.z(1, jets), DiffExpr.z(0, jets), DiffExpr.x(jets)
        expected = LogCombo.log(dz, Fraction(1, 12)) - LogCombo.log(z / x, Fraction(1, 12))
        assert f1_closed_form(jets).symmetric() == expected

    def test_genus_two_vanishes_at_gaussian_point(self, jets):
        assert f2_closed_form(jets).rational.at_gaussian() == 0

    def test_genus_two_is_rational(self, jets):
        assert not f2_closed_form(jets).logs


@pytest.mark.integration
@pytest.mark.genfun
class TestGenusOne:
    """F_1 against the solved genus-1 corrections."""

    def test_cumulant_is_log_derivative(self, genus1_table, jets):
        D = D_expr(jets)
        assert cumulant(1, genus1_table) == (D.d_x() / D).d_x() / 24

    def test_closed_form_verifies(self, genus1_table, jets):
        assert verify_closed_form(1, f1_closed_form(jets), genus1_table)

    def test_wrong_candidate_is_rejected(self, genus1_table, jets):
        wrong = LogCombo.log(D_expr(jets), Fraction(1, 12))
        assert not verify_closed_form(1, wrong, genus1_table)
        check = closed_form_check(1, wrong, genus1_table)
        assert not check.equal
        assert check.lhs_hash != check.rhs_hash

    def test_free_energy_record(self, genus1_table):
        record = free_energy(1, genus1_table)
        assert record.verified
        assert record.to_dict()["genus"] == 1

    def test_symmetric_free_energy(self, genus1_table):
        record = free_energy(1, genus1_table.symmetric())
        assert record.verified


@pytest.mark.slow
@pytest.mark.integration
@pytest.mark.genfun
class TestGenusTwo:
    """F_2 against the solved genus-2 corrections."""

    def test_closed_form_verifies(self, genus2_table, jets):
        assert verify_closed_form(2, f2_closed_form(jets), genus2_table)

    def test_free_energy_record(self, genus2_table):
        record = free_energy(2, genus2_table)
        assert record.verified
        assert record.closed_form is not None
