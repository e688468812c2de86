"""Tests for data models."""

import pytest

from app.models.config import AppConfig, LoggingConfig, SchemeConfig
from app.models.constructions import TruncatedFunction, TruncatedSet
from app.models.errors import (
    BudgetExceeded,
    InvariantViolation,
    LevelTooDeep,
    NonIntegerQuotient,
    NotMember,
    TypeTooSmall,
    UnknownSuite,
)
from app.models.forcing import DemandRecord, ExtOrdinal, GoodEntry, GoodSequence, ord_set
from app.models.queries import CaptureQuery, RunConfig
from app.models.results import CheckResult, SuiteReport
from app.models.sets import (
    Decomposition,
    common_prefix_length,
    is_initial_segment,
    parse_int_set,
    set_less,
)
from app.models.types import ScheduleRule, TypeSpec


class TestTypeSpec:
    """Test TypeSpec and ScheduleRule."""

    def test_prefix_is_normalized_to_pairs(self):
        """Test prefix entries become integer pairs."""
        spec = TypeSpec(prefix=[["2", "0"], [3, 1]])

        assert spec.prefix == ((2, 0), (3, 1))

    def test_non_positive_branching_rejected(self):
        with pytest.raises(ValueError, match="Branching number must be positive"):
            TypeSpec(prefix=[(0, 0)])

    def test_negative_root_rejected(self):
        with pytest.raises(ValueError, match="Root size must be non-negative"):
            TypeSpec(prefix=[(2, -1)])

    def test_json_document_round_trip(self):
        """Test the type document re-imports to an equal spec."""
        spec = TypeSpec(
            name="custom",
            prefix=[(2, 0), (3, 1)],
            schedule=ScheduleRule(kind="cycle", values=[0, 1]),
        )

        assert TypeSpec.from_json_document(spec.to_json_document()) == spec

    def test_schedule_cells_validation(self):
        with pytest.raises(ValueError, match="Round-robin cells must be at least 1"):
            ScheduleRule(cells=0)


class TestSets:
    """Test finite ordinal set helpers."""

    def test_parse_int_set(self):
        assert parse_int_set("3, 1,2,1") == (1, 2, 3)
        assert parse_int_set("") == ()

    def test_parse_int_set_rejects_garbage(self):
        with pytest.raises(ValueError, match="Not a comma separated list"):
            parse_int_set("1,a")

    def test_parse_int_set_rejects_negatives(self):
        with pytest.raises(ValueError, match="non-negative"):
            parse_int_set("-1,2")

    def test_order_helpers(self):
        assert is_initial_segment((0, 1), (0, 1, 5))
        assert not is_initial_segment((0, 2), (0, 1, 5))
        assert set_less((0, 1), (2, 3))
        assert not set_less((0, 2), (1, 3))
        assert common_prefix_length((0, 1, 4), (0, 1, 5)) == 2

    def test_decomposition_needs_equal_pieces(self):
        with pytest.raises(ValueError, match="equal size"):
            Decomposition(pieces=[(0, 1), (0, 2, 3)], root=(0,))

    def test_decomposition_piece_lookup(self):
        decomposition = Decomposition(pieces=[(0, 1), (0, 2), (0, 3)], root=(0,))

        assert decomposition.union() == (0, 1, 2, 3)
        assert decomposition.piece_of(0) == -1
        assert decomposition.piece_of(3) == 2


class TestForcingModels:
    """Test ordinals below ω·M and good sequences."""

    def test_parse_ordinals(self):
        assert ExtOrdinal.parse("1:3") == ExtOrdinal(1, 3)
        assert ExtOrdinal.parse("5") == ExtOrdinal(0, 5)

    def test_parse_rejects_malformed(self):
        with pytest.raises(ValueError, match="Not an ordinal"):
            ExtOrdinal.parse("omega")

    def test_ordinal_order_and_rendering(self):
        assert ExtOrdinal(0, 100) < ExtOrdinal(1, 0)
        assert str(ExtOrdinal(1, 0)) == "ω"
        assert str(ExtOrdinal(1, 2)) == "ω+2"
        assert str(ExtOrdinal(2, 0)) == "ω·2"
        assert ExtOrdinal(1, 0).is_limit

    def test_ord_set_mixes_naturals_and_pairs(self):
        assert ord_set([[1, 1], 0, [1, 0]]) == (
            ExtOrdinal(0, 0),
            ExtOrdinal(1, 0),
            ExtOrdinal(1, 1),
        )

    def test_good_entry_intervals(self):
        entry = GoodEntry(intervals=[[3, 4], [6]], z=7)

        assert entry.is_good(2, 8)
        assert not entry.is_good(4, 8)

    def test_good_entry_rejects_gaps(self):
        with pytest.raises(ValueError, match="is not an interval"):
            GoodEntry(intervals=[[3, 5]], z=7)

    def test_good_entry_marker_above_intervals(self):
        with pytest.raises(ValueError, match="lies below the last interval"):
            GoodEntry(intervals=[[3, 4]], z=2)

    def test_good_sequence_deduplicates(self):
        entry = {"intervals": [[1]], "z": 2}
        sequence = GoodSequence(entries=[entry, entry])

        assert len(sequence) == 1
        assert not GoodSequence().is_good(0, 4)

    def test_demand_record_json(self):
        record = DemandRecord(op="contain", args={"alpha": "5"}, chosen=[[0, 0], [1, 0]])

        assert DemandRecord.model_validate_json(record.model_dump_json()) == record

    def test_demand_record_rejects_unknown_op(self):
        with pytest.raises(ValueError):
            DemandRecord(op="teleport")


class TestQueries:
    """Test CaptureQuery and RunConfig."""

    def test_family_normalized(self):
        query = CaptureQuery(family=[[2, 1, 1], [3]], n=2, window=4)

        assert query.family == [(1, 2), (3,)]

    def test_family_inside_window(self):
        with pytest.raises(ValueError, match="leaves the window"):
            CaptureQuery(family=[[4]], n=1, window=4)

    def test_empty_member_rejected(self):
        with pytest.raises(ValueError, match="nonempty"):
            CaptureQuery(family=[[]], n=1, window=4)

    def test_run_config_format(self):
        with pytest.raises(ValueError):
            RunConfig(output_format="yaml")

    def test_run_config_budgets(self):
        with pytest.raises(ValueError, match="non-negative"):
            RunConfig(window=-1)


class TestTruncatedModels:
    """Test truncated sets and functions."""

    def test_points_above_level_rejected(self):
        with pytest.raises(ValueError, match="lies above level"):
            TruncatedSet(elements=[(3, 0)], level=2)

    def test_set_operations(self):
        a = TruncatedSet(elements=[(1, 0), (2, 1)], level=2)
        b = TruncatedSet(elements=[(2, 1), (2, 2)], level=2)

        assert a.intersection(b).elements == ((2, 1),)
        assert a.difference(b).elements == ((1, 0),)
        assert a.levels() == (1, 2)

    def test_function_fibers(self):
        f = TruncatedFunction(values={(1, 0): 4, (2, 1): 4, (2, 0): 5}, level=2)

        assert f.fiber(4) == ((1, 0), (2, 1))
        assert f.to_rows() == [[1, 0, 4], [2, 0, 5], [2, 1, 4]]


class TestErrors:
    """Test the error hierarchy and its exit codes."""

    def test_exit_codes(self):
        assert NotMember("x").exit_code == 1
        assert UnknownSuite("x").exit_code == 1
        assert LevelTooDeep("x").exit_code == 2
        assert isinstance(LevelTooDeep("x"), BudgetExceeded)
        assert NonIntegerQuotient("x").exit_code == 3
        assert isinstance(NonIntegerQuotient("x"), InvariantViolation)

    def test_to_dict_carries_context(self):
        error = TypeTooSmall("too small", k=2, required=9, actual=2)

        assert error.to_dict() == {
            "error": "TypeTooSmall",
            "message": "too small",
            "context": {"k": 2, "required": 9, "actual": 2},
        }


class TestResults:
    """Test suite reports."""

    def test_informational_checks_never_fail(self):
        report = SuiteReport(
            suite="metric",
            type_name="tstar",
            checks=[
                CheckResult(name="a", passed=True),
                CheckResult(name="b", passed=False, informational=True),
            ],
        )

        assert report.passed
        assert report.failures() == []

    def test_summary_lists_failures(self):
        report = SuiteReport(
            suite="metric",
            type_name="tstar",
            checks=[CheckResult(name="a", passed=False)],
        )

        assert report.summary() == {
            "suite": "metric",
            "passed": False,
            "checks": 1,
            "failed": ["a"],
        }


class TestAppConfig:
    """Test AppConfig model."""

    def test_default_config(self):
        config = AppConfig()

        assert config.scheme.default_type == "tstar"
        assert config.verify.metric_window == 50
        assert config.forcing.block_budget == 4

    def test_element_budget_from_environment(self, monkeypatch):
        """Test SCHEME_ELEMENT_BUDGET overrides the budget."""
        monkeypatch.setenv("SCHEME_ELEMENT_BUDGET", "1234")

        assert SchemeConfig().element_budget == 1234

    def test_budget_must_be_positive(self):
        with pytest.raises(ValueError, match="Budget must be positive"):
            SchemeConfig(element_budget=0)

    def test_cache_size_from_environment(self, monkeypatch):
        monkeypatch.setenv("SCHEME_CACHE_SIZE", "512")

        assert SchemeConfig().cache_size == 512
        with pytest.raises(ValueError, match="Budget must be positive"):
            SchemeConfig(cache_size=0)

    def test_log_format_validation(self):
        with pytest.raises(ValueError, match="Unknown log format"):
            LoggingConfig(format="xml")

    def test_debug_lowers_log_level(self):
        config = AppConfig(debug=True)

        assert config.logging.level == "DEBUG"
