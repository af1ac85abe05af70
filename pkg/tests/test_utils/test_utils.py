"""
Utility tests: exact serialization, input validation and helpers.
"""

import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from stringforge.exceptions import InputError, StringForgeError, VerificationFailure, exit_code_for
from stringforge.utils import (
    SCHEMA_VERSION,
    ValidationError,
    dumps_canonical,
    dumps_envelope,
    envelope,
    format_fraction,
    generate_hash,
    parallel_map,
    parse_fraction,
    parse_partition_text,
    parse_profile_text,
    validate_profile,
    validate_range,
)


def square(n):
    return n * n


class Named:
    def to_text(self):
        return "2*u'"


@pytest.mark.unit
@pytest.mark.utils
class TestSerializers:
    """Exact JSON output."""

    def test_format_fraction(self):
        assert format_fraction(Fraction(6, 4)) == "3/2"
        assert format_fraction(Fraction(-8, 4)) == "-2"
        assert format_fraction(0) == "0"

    @pytest.mark.parametrize(
        "text,expected",
        [("3", Fraction(3)), ("-3/12", Fraction(-1, 4)), (" 1 / 2 ", Fraction(1, 2)), ("0.25", Fraction(1, 4)), (".5", Fraction(1, 2))],
    )
    def test_parse_fraction(self, text, expected):
        assert parse_fraction(text) == expected

    @pytest.mark.parametrize("text", ["1/0", "abc", "1e3", "", "1/2/3"])
    def test_parse_fraction_rejects(self, text):
        with pytest.raises(InputError):
            parse_fraction(text)

    @pytest.mark.property
    @given(st.fractions())
    def test_format_parse_inverse(self, value):
        assert parse_fraction(format_fraction(value)) == value

    def test_canonical_dump(self):
        text = dumps_canonical({"b": Fraction(1, 3), "a": Named(), "c": {3, 1}}, indent=None)
        assert text == '{"a": "2*u\'", "b": "1/3", "c": [1, 3]}'

    def test_unserializable(self):
        with pytest.raises(ValueError):
            dumps_canonical({"x": object()})

    def test_envelope(self):
        assert envelope("table", []) == {"schema_version": SCHEMA_VERSION, "command": "table", "result": []}
        payload = json.loads(dumps_envelope("solve", {"genus": 1}))
        assert payload["result"] == {"genus": 1}

    def test_envelope_is_deterministic(self):
        result = {"z": Fraction(5, 2), "u": [Fraction(1), Named()]}
        assert dumps_envelope("solve", result) == dumps_envelope("solve", dict(reversed(list(result.items()))))


@pytest.mark.unit
@pytest.mark.utils
class TestValidators:
    """User input checks."""

    def test_validate_range(self):
        assert validate_range(2, "genus", 1, 2) == 2
        for value in (0, 3, True, "2"):
            with pytest.raises(ValidationError):
                validate_range(value, "genus", 1, 2)

    def test_validation_error_is_an_input_error(self):
        with pytest.raises(InputError) as exc_info:
            validate_range(-1, "genus", min_val=0)
        assert str(exc_info.value).startswith("[genus]")
        assert exc_info.value.exit_code == 3

    @pytest.mark.parametrize(
        "text,parts",
        [("2+1+1", (2, 1, 1)), ("1+2", (2, 1)), (" 3 ", (3,)), ("phi", ()), ("", ()), ("()", ()), ("0", ())],
    )
    def test_partitions(self, text, parts):
        assert parse_partition_text(text) == parts

    @pytest.mark.parametrize("text", ["2+", "a", "2,1", "2+0"])
    def test_bad_partitions(self, text):
        with pytest.raises(ValidationError):
            parse_partition_text(text)

    def test_profiles(self):
        assert parse_profile_text("4:2, 3:1") == {3: 1, 4: 2}
        assert parse_profile_text("4:1,4:1") == {4: 2}
        assert validate_profile({4: 0, 3: 2}) == {3: 2}

    @pytest.mark.parametrize("text", ["4", "4:x", "0:2", "4:-1"])
    def test_bad_profiles(self, text):
        with pytest.raises(ValidationError):
            parse_profile_text(text)


@pytest.mark.unit
@pytest.mark.utils
class TestHelpers:
    """Hashing and the process pool."""

    def test_generate_hash(self):
        assert generate_hash("hello world")[:12] == "b94d27b9934d"
        assert len(generate_hash("x", "md5")) == 32

    def test_parallel_map_in_process(self):
        assert parallel_map(square, [3, 1, 2]) == [9, 1, 4]
        assert parallel_map(square, []) == []

    def test_parallel_map_keeps_order(self):
        items = list(range(12))
        assert parallel_map(square, items, workers=2) == [square(n) for n in items]


@pytest.mark.unit
@pytest.mark.utils
class TestExitCodes:
    """Exception families and the exit-code contract."""

    def test_engine_errors(self):
        assert exit_code_for(InputError("bad")) == 3
        assert exit_code_for(StringForgeError("boom")) == 2
        assert exit_code_for(VerificationFailure("mismatch")) == 1

    def test_builtin_errors(self):
        assert exit_code_for(ValueError()) == 3
        assert exit_code_for(FileNotFoundError()) == 3
        assert exit_code_for(RuntimeError()) == 2

    def test_report(self):
        report = InputError.with_context("Genus out of range", genus=Fraction(7, 2)).to_dict()
        assert report == {
            "error": "InputError",
            "message": "Genus out of range",
            "details": {"genus": "7/2"},
            "exit_code": 3,
        }
