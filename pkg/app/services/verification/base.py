"""Shared plumbing of the verification suites."""

from typing import Any, Dict, List, Optional, Tuple

from ...models.config import AppConfig
from ...models.results import CheckResult
from ...models.types import TypeSpec
from ..ordinal_metrics import MetricView
from ..scheme_engine import SchemeView
from ..type_core import builtin_type


def _plain(value: Any) -> Any:
    if isinstance(value, (set, frozenset)):
        return sorted(_plain(x) for x in value)
    if isinstance(value, (list, tuple)):
        return [_plain(x) for x in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (int, float, str, bool)) or value is None:
        return value
    return str(value)


class Tally:
    """Counts the instances of one property and keeps the first counterexample."""

    def __init__(self, name: str, informational: bool = False):
        self.name = name
        self.informational = informational
        self.cases = 0
        self.failures = 0
        self.counterexample: Optional[Dict[str, Any]] = None

    def record(self, holds: bool, **instance: Any) -> bool:
        self.cases += 1
        if not holds:
            self.failures += 1
            if self.counterexample is None:
                self.counterexample = {key: _plain(value) for key, value in instance.items()}
        return holds

    def result(self, detail: str = "") -> CheckResult:
        if self.failures and not detail:
            detail = f"{self.failures} of {self.cases} instances fail"
        return CheckResult(
            name=self.name,
            passed=self.failures == 0,
            cases=self.cases,
            counterexample=self.counterexample,
            informational=self.informational,
            detail=detail,
        )


class SuiteContext:
    """The scheme a suite runs against, its window and the configuration."""

    def __init__(self, spec: TypeSpec, window: int, config: AppConfig):
        self.spec = spec
        self.window = window
        self.config = config
        self.scheme = SchemeView(spec, config.scheme)
        self.metrics = MetricView(self.scheme)
        self._views: Dict[str, Tuple[SchemeView, MetricView]] = {
            spec.name: (self.scheme, self.metrics)
        }

    @property
    def max_level(self) -> int:
        return self.config.verify.max_level

    def view(self, type_name: str) -> Tuple[SchemeView, MetricView]:
        """Scheme and metric views of a builtin type, shared across the suite."""
        cached = self._views.get(type_name)
        if cached is None:
            scheme = SchemeView(builtin_type(type_name), self.config.scheme)
            cached = (scheme, MetricView(scheme))
            self._views[type_name] = cached
        return cached

    def levels_within(self, bound: int) -> int:
        """Largest K <= max_level with m_K <= bound."""
        K = 0
        while K < self.max_level and self.scheme.m(K + 1) <= bound:
            K += 1
        return K


def failed_check(name: str, error: Exception) -> CheckResult:
    """A check that could not run to completion."""
    payload = error.to_dict() if hasattr(error, "to_dict") else {"message": str(error)}
    return CheckResult(
        name=name,
        passed=False,
        counterexample={key: _plain(value) for key, value in payload.items()},
        detail=f"aborted: {error}",
    )


def results(*tallies: Tally) -> List[CheckResult]:
    return [tally.result() for tally in tallies]
