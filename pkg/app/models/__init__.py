"""Data models: configuration, types, sets, results and errors."""

from .config import (
    AppConfig,
    CeleryConfig,
    ForcingConfig,
    LoggingConfig,
    SchemeConfig,
    VerifyConfig,
)
from .errors import BudgetExceeded, InvariantViolation, SchemeError
from .queries import CaptureHit, CaptureQuery, RunConfig
from .results import CheckResult, FComparison, SuiteReport
from .sets import Decomposition
from .types import PartitionSpec, ScheduleRule, TypeSpec

__all__ = [
    "AppConfig",
    "CeleryConfig",
    "ForcingConfig",
    "LoggingConfig",
    "SchemeConfig",
    "VerifyConfig",
    "BudgetExceeded",
    "InvariantViolation",
    "SchemeError",
    "CaptureHit",
    "CaptureQuery",
    "RunConfig",
    "CheckResult",
    "FComparison",
    "SuiteReport",
    "Decomposition",
    "PartitionSpec",
    "ScheduleRule",
    "TypeSpec",
]
