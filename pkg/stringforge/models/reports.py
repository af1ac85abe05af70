"""Report models for the command line JSON output.

Every command writes one of these inside the versioned envelope
(``{"schema_version": 1, "command": ..., "result": ...}``).
"""

from typing import Dict, List, Optional

from pydantic import Field

from .base import StringForgeModel


class OperatorTerm(StringForgeModel):
    """One term ``coeff * r^(r_exp_half/2) * ds^ds * dr^dr``."""

    r_exp_half: int = Field(description="Exponent of r^(1/2)")
    ds: int = Field(ge=0, description="Power of the s-derivative")
    dr: int = Field(ge=0, le=1, description="Power of the r-derivative")
    coeff: str = Field(description="Exact rational coefficient p/q")


class OperatorRow(StringForgeModel):
    """A string-polynomial table cell."""

    lambda_: str = Field(alias="lambda", description="Partition for s-jets")
    eta: str = Field(description="Partition for r-jets")
    variant: str = Field(pattern=r"^(a|b)$")
    terms: List[OperatorTerm] = Field(default_factory=list)
    text: str = Field(default="0", description="Canonical operator text")


class TableReport(StringForgeModel):
    max_weight: int
    rows: List[OperatorRow] = Field(default_factory=list)
    golden_mismatches: List[str] = Field(default_factory=list)


class SeriesTerm(StringForgeModel):
    """One coupling-series monomial."""

    t_exponents: Dict[str, int] = Field(default_factory=dict)
    x_exponent: str
    coeff: str


class MapCountRecord(StringForgeModel):
    """A map count ``{profile, genus, faces, count}``."""

    profile: Dict[str, int]
    genus: int = Field(ge=0)
    faces: int = Field(ge=0)
    count: str


class ClosedFormCheck(StringForgeModel):
    """Outcome of checking a closed form by differentiating it twice."""

    genus: int = Field(ge=0)
    lhs_hash: str
    rhs_hash: str
    equal: bool


class GradingEntry(StringForgeModel):
    key: str
    degree: Optional[str] = None
    weight: Optional[str] = None
    denominator_exponent: int = 0
    denominator_bound: int = 0
    passed: bool


class GradingReport(StringForgeModel):
    entries: List[GradingEntry] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(entry.passed for entry in self.entries)


class SolveReport(StringForgeModel):
    """Output of ``solve``."""

    genus: int = Field(ge=1)
    symmetric: bool = False
    expressions: Dict[str, str] = Field(default_factory=dict)
    free_energy_second_derivative: str = ""
    free_energy: Optional[str] = None
    closed_form_check: Optional[ClosedFormCheck] = None
    backsubstitution: Dict[str, bool] = Field(default_factory=dict)
    grading: Optional[GradingReport] = None


class SpecializeReport(StringForgeModel):
    """Output of ``specialize``."""

    potential: str
    genus: int = Field(ge=0)
    order: int = Field(ge=0)
    u: List[SeriesTerm] = Field(default_factory=list)
    z: List[SeriesTerm] = Field(default_factory=list)
    free_energy: List[SeriesTerm] = Field(default_factory=list)
    map_counts: List[MapCountRecord] = Field(default_factory=list)


class ComparisonEntry(StringForgeModel):
    profile: Dict[str, int]
    faces: int
    series_count: str
    oracle_count: str
    equal: bool


class ComparisonReport(StringForgeModel):
    """Series map counts against the brute-force oracle."""

    potential: str
    genus: int = Field(ge=0)
    max_vertices: int = Field(ge=0)
    entries: List[ComparisonEntry] = Field(default_factory=list)

    @property
    def mismatches(self) -> List[ComparisonEntry]:
        return [entry for entry in self.entries if not entry.equal]

    @property
    def passed(self) -> bool:
        return not self.mismatches


class CheckResult(StringForgeModel):
    name: str
    passed: bool
    detail: str = ""


class VerificationReport(StringForgeModel):
    seed: int = 0
    checks: List[CheckResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def first_failure(self) -> Optional[CheckResult]:
        return next((check for check in self.checks if not check.passed), None)
