"""
Motzkin path tests: enumeration, contributions and modified string polynomials.
"""

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import QQ

from stringforge.exceptions import InputError
from stringforge.motzkin import (
    PATH_RING,
    R_GEN,
    S_GEN,
    S_RING,
    MotzkinPath,
    NGradedExpr,
    Step,
    contribution,
    enumerate_paths,
    modified_string_poly,
    path_count,
    path_sum,
    r_jet,
    s_jet,
)


@pytest.mark.unit
@pytest.mark.motzkin
class TestPaths:
    """Bilateral paths with steps U, F, D."""

    def test_heights(self):
        path = MotzkinPath.from_text("UFDD")
        assert path.heights() == [0, 1, 1, 0, -1]
        assert path.end_height == -1
        assert str(path) == "UFDD"

    def test_invalid_text(self):
        with pytest.raises(InputError):
            MotzkinPath.from_text("UXD")

    @pytest.mark.parametrize("length, count", [(0, 1), (1, 1), (2, 3), (3, 7), (4, 19)])
    def test_central_trinomial_counts(self, length, count):
        assert path_count(length, 0) == count
        assert len(enumerate_paths(length, 0)) == count

    @given(st.integers(0, 6), st.integers(-3, 3))
    def test_enumeration_matches_trinomial_count(self, length, end):
        paths = enumerate_paths(length, end)
        assert len(paths) == path_count(length, end)
        assert all(p.length == length and p.end_height == end for p in paths)
        assert len(set(paths)) == len(paths)

    def test_enumeration_order(self):
        assert [str(p) for p in enumerate_paths(2, 0)] == ["UD", "FF", "DU"]


@pytest.mark.unit
@pytest.mark.motzkin
class TestContributions:
    """Continuum expansion of path weights."""

    def test_up_steps_contribute_one(self):
        assert contribution(MotzkinPath.from_text("UU"), 3) == NGradedExpr.one(3)

    def test_down_from_height_one(self):
        # r_{n+1} = r + N^-1 r' + N^-2 r''/2
        value = contribution(MotzkinPath.from_text("UD"), 2)
        assert value.grade(0) == r_jet(0)
        assert value.grade(1) == r_jet(1)
        assert value.grade(2) == r_jet(2) * QQ(1, 2)

    def test_flat_at_height_zero_has_no_corrections(self):
        value = contribution(MotzkinPath.from_text("FF"), 3)
        assert value.grade(0) == s_jet(0) ** 2
        assert not value.grade(1)

    @pytest.mark.parametrize("length, end", [(2, 0), (3, 0), (3, -1), (4, 0), (4, 1)])
    def test_path_sum_agrees_with_enumeration(self, length, end):
        reference = NGradedExpr({}, 3)
        for path in enumerate_paths(length, end):
            reference = reference + contribution(path, 3)
        assert path_sum(length, end, 3) == reference


@pytest.mark.unit
@pytest.mark.motzkin
class TestModifiedStringPolynomials:
    """Coefficient extraction in QQ[s, r]."""

    def test_grade_zero_is_the_generator(self):
        # [h^0](h + s + r/h)^2
        assert modified_string_poly((), (), 3, "a") == S_GEN ** 2 + 2 * R_GEN

    def test_variant_b_ends_at_minus_one(self):
        # [h^-1](h + s + r/h)^2
        assert modified_string_poly((), (), 3, "b") == 2 * S_GEN * R_GEN

    def test_first_order_coefficients(self):
        assert modified_string_poly((1,), (), 3, "a") == S_RING.zero
        assert modified_string_poly((), (1,), 3, "a") == S_RING.one

    def test_invalid_arguments(self):
        with pytest.raises(InputError):
            modified_string_poly((), (), 0, "a")
        with pytest.raises(InputError):
            modified_string_poly((), (), 2, "c")

    def test_path_ring_generators(self):
        assert s_jet(0) == PATH_RING.gens[0]
        assert r_jet(0) == PATH_RING.gens[1]
        assert Step.DOWN.delta == -1
