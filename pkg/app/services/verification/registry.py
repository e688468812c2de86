"""Suite registry and the service that runs suites into reports."""

from typing import Callable, Dict, List, NamedTuple, Optional

from ...models.config import AppConfig
from ...models.errors import SchemeError, UnknownSuite
from ...models.results import CheckResult, SuiteReport
from ...models.types import TypeSpec
from ...utils.logging import LoggerMixin
from ..type_core import builtin_type
from .base import SuiteContext, failed_check
from .capture import capture_suite, coloring_suite
from .families import families_suite
from .forcing import forcing_suite
from .metrics import metric_suite, oscillation_suite, xi_suite
from .orders import aronszajn_suite, countryman_suite
from .schemes import scheme_suite, type_suite
from .structures import entangled_suite, lattice_suite, suslin_suite

ALL_SUITES = "all"


class SuiteDefinition(NamedTuple):
    name: str
    run: Callable[[SuiteContext], List[CheckResult]]
    default_type: str
    window_field: Optional[str] = None


SUITES: Dict[str, SuiteDefinition] = {
    suite.name: suite
    for suite in (
        SuiteDefinition("aronszajn", aronszajn_suite, "tstar", "aronszajn_window"),
        SuiteDefinition("capture", capture_suite, "tstar"),
        SuiteDefinition("coloring", coloring_suite, "tstar", "coloring_window"),
        SuiteDefinition("countryman", countryman_suite, "tstar", "countryman_window"),
        SuiteDefinition("entangled", entangled_suite, "entangled", "coloring_window"),
        SuiteDefinition("families", families_suite, "t2", "family_window"),
        SuiteDefinition("forcing", forcing_suite, "t2"),
        SuiteDefinition("lattice", lattice_suite, "t2"),
        SuiteDefinition("metric", metric_suite, "tstar", "metric_window"),
        SuiteDefinition("oscillation", oscillation_suite, "tstar", "coloring_window"),
        SuiteDefinition("scheme", scheme_suite, "tstar"),
        SuiteDefinition("suslin", suslin_suite, "full_suslin"),
        SuiteDefinition("type", type_suite, "tstar"),
        SuiteDefinition("xi", xi_suite, "tstar", "metric_window"),
    )
}


class VerificationService(LoggerMixin):
    """Runs registered suites against builtin or user-supplied types."""

    def __init__(self, config: Optional[AppConfig] = None):
        self.config = config or AppConfig()

    @staticmethod
    def suite_names() -> List[str]:
        return sorted(SUITES)

    def definition(self, name: str) -> SuiteDefinition:
        """The registered suite called ``name``.

        Raises:
            UnknownSuite: nothing is registered under ``name``.
        """
        suite = SUITES.get(name)
        if suite is None:
            raise UnknownSuite(
                f"unknown suite {name!r}; choose one of {', '.join(self.suite_names())} or all",
                suite=name,
            )
        return suite

    def run(
        self, name: str, spec: Optional[TypeSpec] = None, window: Optional[int] = None
    ) -> SuiteReport:
        """Run one suite; a check that aborts becomes a failed check with the error payload."""
        suite = self.definition(name)
        spec = spec or builtin_type(suite.default_type)
        if window is None or window <= 0:
            window = getattr(self.config.verify, suite.window_field) if suite.window_field else 0
        self.log_info("Running suite", suite=name, type_name=spec.name, window=window)
        try:
            checks = suite.run(SuiteContext(spec, window, self.config))
        except SchemeError as e:
            self.log_error(f"Suite aborted: {e}", suite=name, error_type=type(e).__name__)
            checks = [failed_check(name, e)]
        report = SuiteReport(suite=name, type_name=spec.name, window=window, checks=checks)
        self.log_info(
            "Finished suite",
            suite=name,
            passed=report.passed,
            failed=len(report.failures()),
        )
        return report

    def run_all(
        self, spec: Optional[TypeSpec] = None, window: Optional[int] = None
    ) -> List[SuiteReport]:
        return [self.run(name, spec, window) for name in self.suite_names()]

    def run_selection(
        self, names: List[str], spec: Optional[TypeSpec] = None, window: Optional[int] = None
    ) -> List[SuiteReport]:
        """Run the named suites in name order; ``all`` expands to every suite."""
        if ALL_SUITES in names:
            return self.run_all(spec, window)
        for name in names:
            self.definition(name)
        return [self.run(name, spec, window) for name in sorted(set(names))]
