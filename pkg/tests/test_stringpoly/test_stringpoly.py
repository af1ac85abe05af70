"""
String polynomial tests: partitions, operator algebra, identities and the generated table.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stringforge.exceptions import HalfIntegerExponent, InputError
from stringforge.motzkin import R_GEN, S_GEN
from stringforge.stringpoly import (
    EMPTY,
    GOLDEN_ROWS,
    OperatorPoly,
    Partition,
    apply,
    check_identities,
    generate_table,
    generator,
    laurent_to_poly,
    partition_pairs,
    partitions_of,
    reduce_mod_I,
    rho_laurent,
    string_operator,
    verify_table,
)
from stringforge.stringpoly.generation import AnsatzBounds, ansatz_basis, fit_window, target

WEIGHT_THREE_CELLS = [(lam, eta, v) for lam, eta in partition_pairs(3) for v in ("a", "b")]

operator_terms = st.lists(
    st.tuples(
        st.fractions(min_value=-3, max_value=3, max_denominator=6),
        st.integers(min_value=-4, max_value=4),
        st.integers(min_value=0, max_value=3),
        st.integers(min_value=0, max_value=4),
    ),
    max_size=4,
)


@pytest.mark.unit
@pytest.mark.stringpoly
class TestPartitions:
    """Partitions and the cell ordering."""

    def test_reverse_lexicographic_order(self):
        assert [str(p) for p in partitions_of(3)] == ["3", "2+1", "1+1+1"]
        assert list(partitions_of(0)) == [EMPTY]

    def test_from_text(self):
        assert Partition.from_text("2+1") == Partition.of(1, 2)
        assert Partition.from_text("φ") == EMPTY
        assert str(EMPTY) == "φ"
        assert Partition.of(2, 1).size == 3 and Partition.of(2, 1).length == 2

    def test_invalid_parts(self):
        with pytest.raises(ValueError):
            Partition((1, 2))
        with pytest.raises(ValueError):
            Partition((0,))

    def test_pairs_follow_printed_row_order(self):
        pairs = [(str(lam), str(eta)) for lam, eta in partition_pairs(3)]
        assert len(pairs) == 18
        assert pairs == [(lam, eta) for lam, eta, _, _ in GOLDEN_ROWS]


@pytest.mark.unit
@pytest.mark.stringpoly
class TestOperators:
    """Normal-ordered operator arithmetic."""

    def test_commutator(self):
        # dr * r = r * dr + 1
        dr = OperatorPoly.term(1, dr=1)
        r = OperatorPoly.term(1, e_half=2)
        assert dr * r == OperatorPoly.term(1, e_half=2, dr=1) + OperatorPoly.identity()
        assert r * dr == OperatorPoly.term(1, e_half=2, dr=1)

    def test_ds_commutes_with_r(self):
        ds = OperatorPoly.term(1, ds=1)
        r = OperatorPoly.term(1, e_half=2)
        assert ds * r == r * ds

    def test_negative_derivative_power(self):
        with pytest.raises(InputError):
            OperatorPoly({(0, -1, 0): Fraction(1)})

    def test_to_text(self):
        assert OperatorPoly.zero().to_text() == "0"
        assert OperatorPoly.term(Fraction(1, 2), dr=1).to_text() == "1/2*dr"
        assert OperatorPoly.term(-1, e_half=2, dr=1).to_text() == "-r*dr"
        assert OperatorPoly.term(Fraction(1, 12), e_half=-2, ds=2).to_text() == "1/12*r^-1*ds^2"

    def test_records(self):
        records = OperatorPoly.term(Fraction(-1, 2), e_half=2, dr=1).to_records()
        assert records == [{"r_exp_half": 2, "ds": 0, "dr": 1, "coeff": "-1/2"}]

    def test_generator(self):
        assert generator(3) == S_GEN ** 2 + 2 * R_GEN
        assert generator(3, -1) == 2 * S_GEN * R_GEN
        assert generator(1) == 1
        with pytest.raises(InputError):
            generator(0)

    def test_identity_acts_trivially(self):
        for J in range(1, 6):
            assert apply(OperatorPoly.identity(), J) == rho_laurent(generator(J))

    @pytest.mark.parametrize("J", [1, 2, 3, 5, 8])
    def test_reduction_preserves_action(self, J):
        op = OperatorPoly.term(1, ds=1, dr=2) + OperatorPoly.term(Fraction(1, 3), e_half=2, dr=3)
        reduced = reduce_mod_I(op)
        assert reduced.max_dr <= 1
        assert apply(reduced, J) == apply(op, J)

    def test_reduction_of_dr_squared(self):
        reduced = reduce_mod_I(OperatorPoly.term(1, dr=2))
        assert reduced == OperatorPoly.term(1, e_half=-2, ds=2) - OperatorPoly.term(1, e_half=-2, dr=1)

    @pytest.mark.property
    @settings(max_examples=40, deadline=None)
    @given(operator_terms)
    def test_reduction_is_idempotent(self, terms):
        op = OperatorPoly.from_terms(terms)
        reduced = reduce_mod_I(op)
        assert reduce_mod_I(reduced) == reduced
        assert apply(reduced, 4) == apply(op, 4)

    def test_laurent_to_poly(self):
        poly = S_GEN ** 2 * R_GEN + 3 * R_GEN ** 2
        assert laurent_to_poly(rho_laurent(poly)) == poly
        with pytest.raises(HalfIntegerExponent):
            laurent_to_poly(rho_laurent(poly, shift=1))


@pytest.mark.unit
@pytest.mark.stringpoly
class TestIdentities:
    """Generator identities hold for every tested J."""

    def test_all_identities_hold(self):
        failures = check_identities(10)
        assert set(failures) == {
            "lowering",
            "raising",
            "zeroing",
            "swapping",
            "integration_by_parts",
            "reflection",
        }
        assert all(not js for js in failures.values())


@pytest.mark.stringpoly
class TestGeneration:
    """Undetermined-coefficient fitting of string operators."""

    @pytest.mark.unit
    def test_weight_zero_table(self):
        table = generate_table(0)
        assert table.pairs() == [(EMPTY, EMPTY)]
        assert table.get(EMPTY, EMPTY, "a") == OperatorPoly.identity()
        assert not table.get(EMPTY, EMPTY, "b")
        assert verify_table(table) == []

    @pytest.mark.unit
    def test_invalid_requests(self):
        with pytest.raises(InputError):
            generate_table(-1)
        with pytest.raises(InputError):
            string_operator(EMPTY, EMPTY, "c")
        with pytest.raises(InputError):
            generate_table(0).get(Partition.of(1), EMPTY, "a")

    @pytest.mark.unit
    def test_single_jet_cells(self):
        assert string_operator(EMPTY, Partition.of(1), "a") == OperatorPoly.term(Fraction(1, 2), dr=1)
        assert string_operator(Partition.of(1), EMPTY, "b") == OperatorPoly.term(Fraction(-1, 2), e_half=2, dr=1)
        assert not string_operator(Partition.of(1), EMPTY, "a")

    @pytest.mark.unit
    def test_ansatz_has_bounded_dr(self):
        lam, eta = Partition.of(2), EMPTY
        basis = ansatz_basis(lam, eta, "a", AnsatzBounds.initial(lam, eta))
        assert basis
        assert all(dr in (0, 1) for _, _, dr in basis)

    @pytest.mark.integration
    def test_weight_three_table_matches_printed_rows(self, strings):
        assert len(strings.pairs()) == 18
        assert strings.golden_mismatches() == []

    @pytest.mark.integration
    def test_weight_three_table_verifies(self, strings):
        assert verify_table(strings, max_J=10) == []

    @pytest.mark.integration
    def test_report_and_text(self, strings):
        report = strings.to_report()
        assert len(report.rows) == 36
        assert report.golden_mismatches == []
        header = strings.to_text().splitlines()[0]
        assert header.startswith("lambda")
        assert "P^(a)" in header and "P^(b)" in header

    @pytest.mark.integration
    def test_weight_three_table_generates_directly(self):
        table = generate_table(3)
        assert len(table.to_report().rows) == 36
        assert table.golden_mismatches() == []

    @pytest.mark.unit
    def test_high_derivative_cell_fits(self):
        lam, eta = EMPTY, Partition.of(1, 1, 1)
        op = string_operator(lam, eta, "a")
        for J in range(1, 13):
            assert apply(op, J) == target(lam, eta, J, "a")

    @pytest.mark.unit
    def test_fit_window_grows_with_derivative_bound(self):
        lam, eta = EMPTY, Partition.of(1, 1, 1)
        bounds = AnsatzBounds.initial(lam, eta)
        ncols = len(ansatz_basis(lam, eta, "a", bounds))
        j_min, j_cap = fit_window(ncols, bounds)
        assert j_min > ncols + bounds.max_ds
        assert j_cap > j_min
        wider = bounds.widened()
        assert fit_window(ncols, wider)[0] > j_min

    @pytest.mark.integration
    @pytest.mark.parametrize(
        "lam,eta,variant",
        [cell for cell in WEIGHT_THREE_CELLS if cell != (EMPTY, EMPTY, "b")],
        ids=lambda value: str(value),
    )
    def test_weight_three_cell_reproduces_target(self, lam, eta, variant):
        op = string_operator(lam, eta, variant)
        assert op.max_dr <= 1
        for J in range(1, 9):
            assert apply(op, J) == target(lam, eta, J, variant)
