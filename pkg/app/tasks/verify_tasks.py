"""Celery tasks that run verification suites and materialize scheme levels."""

from typing import Any, Dict, List, Optional

from celery import Task, group

from ..models.config import AppConfig
from ..models.types import TypeSpec
from ..services.exporters import level_json
from ..services.scheme_engine import SchemeView
from ..services.type_core import builtin_type
from ..services.verification import ALL_SUITES, VerificationService
from ..utils.correlation import get_or_generate_run_id, set_run_id
from ..utils.logging import get_logger
from .worker import celery_app, payload_run_id

config = AppConfig()

logger = get_logger(__name__)


def resolve_type(value: Any) -> Optional[TypeSpec]:
    """A builtin name, a type document, or None for the suite default."""
    if value is None:
        return None
    if isinstance(value, str):
        return builtin_type(value)
    return TypeSpec.from_json_document(value)


class BaseVerificationTask(Task):
    """Shared failure handling for engine tasks."""

    autoretry_for = (ConnectionError,)
    retry_kwargs = {
        "max_retries": config.celery.task_max_retries,
        "countdown": config.celery.task_retry_delay,
    }

    def on_failure(self, exc, task_id, args, kwargs, einfo):
        run_id = payload_run_id(args)
        if run_id:
            set_run_id(run_id)
        logger.error(
            f"Task failed: {self.name}",
            extra={"task_id": task_id, "exception": str(exc)},
        )


@celery_app.task(bind=True, base=BaseVerificationTask, name="run_suite")
def run_suite_task(self, payload: Dict[str, Any]) -> Dict[str, Any]:
    """Run one suite.

    Args:
        payload: ``suite``, optional ``type`` (builtin name or document),
            optional ``window`` and ``run_id``.

    Returns:
        The suite report as a plain dict.
    """
    service = VerificationService(config)
    report = service.run(payload["suite"], resolve_type(payload.get("type")), payload.get("window"))
    return report.model_dump(mode="json")


@celery_app.task(bind=True, base=BaseVerificationTask, name="build_level")
def build_level_task(self, payload: Dict[str, Any]) -> Dict[str, Any]:
    """Materialize F(m_k) for ``payload["level"]`` and return it as a level document."""
    spec = resolve_type(payload.get("type")) or builtin_type(config.scheme.default_type)
    scheme = SchemeView(spec, config.scheme)
    return level_json(scheme, int(payload["level"]))


def dispatch_suites(
    names: List[str], type_source: Any = None, window: Optional[int] = None
) -> List[Dict[str, Any]]:
    """Fan suites out as a group and merge the reports in suite-name order."""
    if ALL_SUITES in names:
        names = VerificationService.suite_names()
    service = VerificationService(config)
    for name in names:
        service.definition(name)
    run_id = get_or_generate_run_id("verify", *sorted(names), window)
    job = group(
        run_suite_task.s({"suite": name, "type": type_source, "window": window, "run_id": run_id})
        for name in sorted(set(names))
    )
    reports = job.apply_async().get()
    logger.info(f"Merged {len(reports)} suite reports (run: {run_id})")
    return sorted(reports, key=lambda report: report["suite"])
