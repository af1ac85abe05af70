"""
Genus expansion tests: odd corrections, the genus-1 solution, back-substitution and grading.
"""

from fractions import Fraction

import pytest

from stringforge.diffring import DiffExpr, diff_weight, poly_degree
from stringforge.exceptions import MissingLowerGenus
from stringforge.solver import (
    GenusTable,
    check_backsubstitution,
    continuum_equation,
    grading_check,
    odd_relation,
    odd_u,
    residual,
    solve_genus,
)


@pytest.mark.unit
@pytest.mark.solver
class TestOddRelation:
    """u_n for odd n from the lower corrections."""

    def test_first_odd_correction(self, jets):
        u = DiffExpr.u(0, jets)
        assert odd_relation([u]) == DiffExpr.u(1, jets) / 2
        assert odd_u(0, GenusTable(jets=jets)) == DiffExpr.u(1, jets) / 2

    def test_second_step(self, jets):
        # u_2 = -B_1 u_1' - B_2/2 u''
        u = DiffExpr.u(0, jets)
        u1 = DiffExpr.u(1, jets) / 2
        assert odd_relation([u, u1]) == u1.d_x() / 2 - DiffExpr.u(2, jets) / 12

    def test_negative_genus(self, jets):
        with pytest.raises(ValueError):
            odd_u(-1, GenusTable(jets=jets))


@pytest.mark.unit
@pytest.mark.solver
class TestGenusTable:
    """Lookup and ordering of solved entries."""

    def test_leading_entries(self, jets):
        table = GenusTable(jets=jets)
        assert table.get_z(0) == DiffExpr.z(0, jets)
        assert table.get_u(0) == DiffExpr.u(0, jets)
        assert table.max_genus == 0

    def test_missing_entries(self, jets):
        table = GenusTable(jets=jets)
        with pytest.raises(MissingLowerGenus):
            table.get_z(1)
        with pytest.raises(MissingLowerGenus):
            table.get_u(2)

    def test_solve_requires_lower_genus(self, jets, strings):
        table = GenusTable(jets=jets)
        table.u[1] = odd_u(0, table)
        with pytest.raises(MissingLowerGenus):
            solve_genus(2, table, strings.get)

    def test_solve_rejects_genus_zero(self, jets):
        with pytest.raises(ValueError):
            solve_genus(0, GenusTable(jets=jets))


@pytest.mark.integration
@pytest.mark.solver
class TestGenusOne:
    """Corrections at order N^-2."""

    def test_keys(self, genus1_table):
        assert genus1_table.keys() == ["u1", "z1", "u2", "u3"]
        assert genus1_table.max_genus == 1

    def test_leading_equations_hold(self, jets, strings):
        table = GenusTable(jets=jets)
        for variant in ("a", "b"):
            equation = continuum_equation(0, variant, table, operators=strings.get)
            assert equation.constant == 0

    def test_z1_is_second_log_derivative(self, genus1_table, atoms):
        # z_1 / z = (1/24) d^2 log D
        D = atoms["D"]
        expected = atoms["z"] * (D.d_x() / D).d_x() / 24
        assert genus1_table.get_z(1) == expected

    def test_u3_from_odd_relation(self, genus1_table):
        lower = [genus1_table.get_u(k) for k in range(3)]
        assert genus1_table.get_u(3) == odd_relation(lower)

    def test_backsubstitution(self, genus1_table, strings):
        results = check_backsubstitution(genus1_table, strings.get)
        assert len(results) == 8
        assert all(results.values()), results

    def test_residual_vanishes(self, genus1_table, strings):
        assert not residual(2, "a", genus1_table, strings.get)
        assert not residual(2, "b", genus1_table, strings.get)

    def test_grading(self, genus1_table):
        report = grading_check(genus1_table)
        assert report.passed, report
        assert [entry.key for entry in report.entries] == ["u1", "z1", "u2", "u3"]

    def test_u2_degree_and_weight(self, genus1_table):
        u2 = genus1_table.get_u(2)
        assert poly_degree(u2) == Fraction(1, 2)
        assert diff_weight(u2) == 2

    def test_symmetric_specialization(self, genus1_table, jets):
        symmetric = genus1_table.symmetric()
        assert symmetric.symmetric_only
        assert symmetric.get_u(1) == 0
        dz = DiffExpr.z(1, jets)
        # z_1 = (z/12) d^2 log z'
        expected = DiffExpr.z(0, jets) * (dz.d_x() / dz).d_x() / 12
        assert symmetric.get_z(1) == expected

    def test_to_dict(self, genus1_table):
        entries = genus1_table.to_dict(["u1"])
        assert entries == {"u1": genus1_table.get_u(1).to_text()}


@pytest.mark.slow
@pytest.mark.integration
@pytest.mark.solver
class TestGenusTwo:
    """Corrections at order N^-4."""

    def test_backsubstitution(self, genus2_table):
        results = check_backsubstitution(genus2_table)
        assert all(results.values()), results

    def test_grading(self, genus2_table):
        report = grading_check(genus2_table)
        assert report.passed, report
        assert [entry.key for entry in report.entries] == ["u1", "z1", "u2", "u3", "z2", "u4", "u5"]
