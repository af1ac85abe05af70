"""
Report model tests.
"""

import json

import pytest
from pydantic import ValidationError

from stringforge.models import (
    CheckResult,
    ComparisonEntry,
    ComparisonReport,
    OperatorRow,
    OperatorTerm,
    VerificationReport,
)


@pytest.mark.unit
@pytest.mark.models
class TestReports:
    """Validation and canonical dumps."""

    def test_operator_row_alias(self):
        row = OperatorRow(lambda_="2", eta="phi", variant="a", terms=[OperatorTerm(r_exp_half=2, ds=0, dr=1, coeff="1/2")])
        data = row.to_dict()
        assert data["lambda"] == "2"
        assert data["terms"][0]["coeff"] == "1/2"
        assert OperatorRow(**data) == row

    def test_rejects_bad_values(self):
        with pytest.raises(ValidationError):
            OperatorRow(lambda_="2", eta="phi", variant="c")
        with pytest.raises(ValidationError):
            OperatorTerm(r_exp_half=0, ds=0, dr=2, coeff="1")
        with pytest.raises(ValidationError):
            CheckResult(name="identities", passed=True, extra="x")

    def test_sorted_json(self):
        text = CheckResult(name="table", passed=False, detail="cell (2, phi)").to_json(indent=None)
        assert text == '{"detail": "cell (2, phi)", "name": "table", "passed": false}'
        assert json.loads(text)["passed"] is False

    def test_comparison_mismatches(self):
        good = ComparisonEntry(profile={"4": 1}, faces=3, series_count="2", oracle_count="2", equal=True)
        bad = ComparisonEntry(profile={"4": 1}, faces=1, series_count="0", oracle_count="1", equal=False)
        report = ComparisonReport(potential="0.5*l^2 + t4*l^4", genus=0, max_vertices=1, entries=[good, bad])
        assert not report.passed
        assert report.mismatches == [bad]

    def test_verification_first_failure(self):
        report = VerificationReport(
            checks=[CheckResult(name="identities", passed=True), CheckResult(name="table", passed=False)]
        )
        assert not report.passed
        assert report.first_failure.name == "table"
        assert VerificationReport().passed
