"""Tests for the verification suites and their registry."""

import pytest

from app.models.errors import LevelTooDeep, NoWitnessInBudget, UnknownSuite
from app.models.types import TypeSpec
from app.services.forcing import GenericBuilder
from app.services.verification import SUITES, SuiteDefinition, Tally, VerificationService


class TestTally:
    """Test counterexample bookkeeping."""

    def test_keeps_first_counterexample(self):
        tally = Tally("example")
        tally.record(True, value=1)
        tally.record(False, value=(2, 3))
        tally.record(False, value=4)

        result = tally.result()

        assert not result.passed
        assert result.cases == 3
        assert result.counterexample == {"value": [2, 3]}
        assert result.detail == "2 of 3 instances fail"

    def test_informational(self):
        tally = Tally("note", informational=True)
        tally.record(False)

        assert tally.result().informational


class TestVerificationService:
    """Test running suites into reports."""

    def test_unknown_suite(self, test_config):
        with pytest.raises(UnknownSuite, match="unknown suite 'nosuch'"):
            VerificationService(test_config).run("nosuch")

    def test_type_suite_passes(self, test_config):
        report = VerificationService(test_config).run("type")

        assert report.passed
        assert report.suite == "type"
        assert report.type_name == "tstar"

    def test_window_defaults_from_config(self, test_config):
        report = VerificationService(test_config).run("metric")

        assert report.window == test_config.verify.metric_window
        assert report.passed

    def test_invalid_type_fails(self, test_config):
        spec = TypeSpec(name="broken", prefix=[(2, 0), (3, 1), (1, 0)])

        report = VerificationService(test_config).run("type", spec)

        assert not report.passed
        assert report.type_name == "broken"

    def test_aborted_suite_becomes_failed_check(self, mocker, test_config):
        """Test a suite raising a SchemeError reports instead of propagating."""

        def explode(ctx):
            raise LevelTooDeep("level 9 exceeds the element budget", k=9)

        mocker.patch.dict(SUITES, {"type": SuiteDefinition("type", explode, "tstar")})

        report = VerificationService(test_config).run("type")

        assert not report.passed
        assert report.checks[0].detail.startswith("aborted")
        assert report.checks[0].counterexample["error"] == "LevelTooDeep"

    def test_selection_sorted(self, test_config):
        reports = VerificationService(test_config).run_selection(["xi", "type", "xi"])

        assert [report.suite for report in reports] == ["type", "xi"]

    def test_selection_checks_names_first(self, mocker, test_config):
        service = VerificationService(test_config)
        run = mocker.patch.object(service, "run")

        with pytest.raises(UnknownSuite):
            service.run_selection(["type", "nosuch"])

        run.assert_not_called()

    def test_suite_names(self):
        names = VerificationService.suite_names()

        assert names == sorted(names)
        assert {"scheme", "forcing", "countryman"} <= set(names)


class TestRegisteredSuites:
    """Run every registered suite at the test windows."""

    @pytest.mark.parametrize("name", sorted(SUITES))
    def test_suite_passes(self, test_config, name):
        report = VerificationService(test_config).run(name)

        failing = [check.name for check in report.checks if not check.passed]
        assert report.passed, f"{name}: {failing}"
        assert report.suite == name

    def test_forcing_demands_all_met(self, test_config):
        report = VerificationService(test_config).run("forcing")

        checks = {check.name: check for check in report.checks}
        assert checks["demands_met"].passed
        assert checks["demands_met"].cases == 3
        assert checks["ih1_demand_witnessed"].passed

    def test_unreachable_demand_fails_check(self, mocker, test_config):
        """Test a demand past the witness budget is reported, not raised."""
        mocker.patch.object(
            GenericBuilder,
            "step",
            side_effect=NoWitnessInBudget("no level <= 24 has r_k = 35 above max A", budget=24),
        )

        report = VerificationService(test_config).run("forcing")

        checks = {check.name: check for check in report.checks}
        assert not checks["demands_met"].passed
        assert checks["demands_met"].counterexample["error"] == "NoWitnessInBudget"
        assert checks["interval_lemma"].passed
