from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field

__all__ = [
    "CheckRecord",
    "CheckReport",
    "identity_record",
    "dominance_record",
    "SplitModel",
    "GaussianSumRateReport",
    "CheckSummary",
    "RunManifest",
]


class CheckRecord(BaseModel):
    """One numerical check: two evaluated sides and whether they agree.

    Serialized as ``{"check", "lhs", "rhs", "delta", "pass"}``.
    """
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    check: str
    lhs: float
    rhs: float
    delta: float
    passed: bool = Field(alias="pass")


class CheckReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    records: list[CheckRecord]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def failures(self) -> list[CheckRecord]:
        return [r for r in self.records if not r.passed]

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True)


def identity_record(check: str, lhs: float, rhs: float, tolerance: float) -> CheckRecord:
    delta = abs(lhs - rhs)
    return CheckRecord(check=check, lhs=lhs, rhs=rhs, delta=delta, passed=delta < tolerance)


def dominance_record(check: str, lhs: float, rhs: float, tolerance: float) -> CheckRecord:
    """Passes when ``lhs >= rhs - tolerance``; ``delta`` is the signed margin."""
    delta = lhs - rhs
    return CheckRecord(check=check, lhs=lhs, rhs=rhs, delta=delta, passed=delta >= -tolerance)


class SplitModel(BaseModel):
    model_config = ConfigDict(frozen=True)

    eta1: float
    eta2: float
    alpha1: float
    alpha2: float


class GaussianSumRateReport(BaseModel):
    """Closed-form sum-rate of one split next to its covariance-oracle evaluation."""
    model_config = ConfigDict(frozen=True)

    split: SplitModel
    optimized: bool
    sum_rate_bits: float
    oracle_sum_rate_bits: float
    joint_sum_rate_bits: float
    delta: float


class CheckSummary(BaseModel):
    """Condensed view of a report: how many records ran, how many failed, and the largest deviation."""
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    check: str
    records: int
    failures: int
    worst_delta: float
    passed: bool = Field(alias="pass")

    @classmethod
    def of(cls, report: CheckReport) -> "CheckSummary":
        worst = max((abs(r.delta) for r in report.records), default=0.0)
        return cls(
            check=report.name,
            records=len(report.records),
            failures=len(report.failures()),
            worst_delta=worst,
            passed=report.passed,
        )


class RunManifest(BaseModel):
    """Accompanies every output file as ``<file>.manifest.json``."""
    model_config = ConfigDict(frozen=True)

    command: str
    parameters: dict[str, Any]
    seed: Optional[int] = None
    tool_version: str
    duration_seconds: float
    outputs: list[str] = []
