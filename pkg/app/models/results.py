"""Verification result models."""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class CheckResult(BaseModel):
    """Outcome of one structural property check."""

    name: str = Field(..., description="Check identifier")
    passed: bool = Field(..., description="Whether no counterexample was found")
    cases: int = Field(default=0, description="Number of instances examined")
    counterexample: Optional[Dict[str, Any]] = Field(
        default=None, description="First failing instance"
    )
    informational: bool = Field(
        default=False, description="Reported but never counted as failure"
    )
    detail: str = Field(default="", description="Free-form note")


class FComparison(BaseModel):
    """Pointwise comparison of f_α and f_β below ρ(α, β)."""

    relation: str = Field(..., description="'equal' or 'lt_star'")
    rho: int = Field(default=0, description="ρ(α, β); f_α < f_β from here on")
    pointwise: List[List[int]] = Field(
        default_factory=list, description="Rows [l, f_α(l), f_β(l)] for l < ρ"
    )
    everywhere_leq: bool = Field(default=True, description="f_α <= f_β at every level")
    strict_from: int = Field(default=0, description="Least l with f_α < f_β on [l, ∞)")


class SuiteReport(BaseModel):
    """Aggregated result of one verification suite."""

    suite: str = Field(..., description="Suite name")
    type_name: str = Field(..., description="Type the suite ran against")
    window: int = Field(default=0, description="Ordinal window used")
    checks: List[CheckResult] = Field(default_factory=list)

    model_config = {
        "json_schema_extra": {
            "example": {
                "suite": "metric",
                "type_name": "tstar",
                "window": 50,
                "checks": [{"name": "rho_zero_iff_equal", "passed": True, "cases": 2500}],
            }
        }
    }

    @property
    def passed(self) -> bool:
        return all(check.passed or check.informational for check in self.checks)

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed and not c.informational]

    def summary(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "checks": len(self.checks),
            "failed": [c.name for c in self.failures()],
        }
