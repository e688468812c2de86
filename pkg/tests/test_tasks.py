"""Tests for the Celery verification tasks."""

import pytest

from app.models.errors import UnknownSuite
from app.tasks.verify_tasks import (
    build_level_task,
    dispatch_suites,
    resolve_type,
    run_suite_task,
)


class TestResolveType:
    def test_builtin_name(self):
        assert resolve_type("t2").name == "t2"

    def test_document(self):
        spec = resolve_type({"name": "mine", "prefix": [[2, 0], [2, 1]]})

        assert spec.name == "mine"

    def test_default(self):
        assert resolve_type(None) is None


class TestTasks:
    """Test tasks run inline."""

    def test_run_suite(self, eager_celery):
        report = run_suite_task.apply(args=[{"suite": "type", "run_id": "run_test"}]).get()

        assert report["suite"] == "type"
        assert report["type_name"] == "tstar"
        assert all(check["passed"] for check in report["checks"])

    def test_build_level(self, eager_celery):
        document = build_level_task.apply(args=[{"level": 1, "type": "tstar"}]).get()

        assert document["m"] == 2
        assert [s["elements"] for s in document["sets"]] == [[0], [1], [0, 1]]


class TestDispatch:
    """Test fanning suites out as a group."""

    def test_reports_sorted_by_suite(self, mocker):
        group = mocker.patch("app.tasks.verify_tasks.group")
        group.return_value.apply_async.return_value.get.return_value = [
            {"suite": "xi"},
            {"suite": "type"},
        ]

        reports = dispatch_suites(["xi", "type"], window=5)

        assert [report["suite"] for report in reports] == ["type", "xi"]
        signatures = list(group.call_args[0][0])
        assert [s.args[0]["suite"] for s in signatures] == ["type", "xi"]
        assert all(s.args[0]["window"] == 5 for s in signatures)

    def test_all_expands(self, mocker):
        group = mocker.patch("app.tasks.verify_tasks.group")
        group.return_value.apply_async.return_value.get.return_value = []

        dispatch_suites(["all"])

        signatures = list(group.call_args[0][0])
        assert len(signatures) > 10

    def test_unknown_suite_not_dispatched(self, mocker):
        group = mocker.patch("app.tasks.verify_tasks.group")

        with pytest.raises(UnknownSuite):
            dispatch_suites(["nosuch"])

        group.assert_not_called()


class TestWorkerEntryPoint:
    """Test the worker command line."""

    def test_default_queues(self):
        from worker import worker_argv

        assert worker_argv([]) == ["worker", "--queues=verification,schemes"]

    def test_explicit_queues_kept(self):
        from worker import worker_argv

        assert worker_argv(["worker", "-Q", "schemes"]) == ["worker", "-Q", "schemes"]

    def test_main_starts_celery(self, mocker):
        import worker

        start = mocker.patch.object(worker.celery_app, "start")
        mocker.patch.object(worker, "setup_logging")

        worker.main(["worker", "--concurrency=1"])

        start.assert_called_once_with(
            ["worker", "--concurrency=1", "--queues=verification,schemes"]
        )


class TestPayloadRunId:
    def test_reads_first_payload(self):
        from app.tasks.worker import payload_run_id

        assert payload_run_id([{"suite": "xi", "run_id": "run_abc"}]) == "run_abc"
        assert payload_run_id([{"suite": "xi"}]) is None
        assert payload_run_id(None) is None
        assert payload_run_id(["xi"]) is None
