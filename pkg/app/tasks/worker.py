"""Celery application for the verification and level-building queues."""

from typing import Any, Optional, Sequence

from celery import Celery
from celery.signals import task_postrun, task_prerun, worker_init, worker_shutdown

from ..models.config import AppConfig
from ..utils.correlation import set_run_id
from ..utils.logging import get_logger, setup_logging

TASK_QUEUES = {"run_suite": "verification", "build_level": "schemes"}

config = AppConfig()
logger = get_logger(__name__)


def create_celery_app(app_config: AppConfig) -> Celery:
    """Build the Celery app from the ``CELERY_*`` settings."""
    celery = app_config.celery
    app = Celery(
        "construction_schemes",
        broker=celery.broker_url,
        backend=celery.result_backend,
        include=["app.tasks.verify_tasks"],
    )
    app.conf.update(
        task_routes={name: {"queue": queue} for name, queue in TASK_QUEUES.items()},
        # suite reports and level documents are plain JSON
        task_serializer="json",
        result_serializer="json",
        accept_content=["json"],
        enable_utc=True,
        task_time_limit=celery.task_time_limit,
        task_soft_time_limit=max(celery.task_time_limit - 30, 1),
        task_acks_late=True,
        task_reject_on_worker_lost=True,
        worker_concurrency=celery.worker_concurrency,
        worker_max_tasks_per_child=100,
        result_expires=3600,
        task_always_eager=celery.task_always_eager,
        task_eager_propagates=True,
    )
    return app


celery_app = create_celery_app(config)


def payload_run_id(args: Optional[Sequence[Any]]) -> Optional[str]:
    """The ``run_id`` of a task whose first argument is a payload dict."""
    if args and isinstance(args[0], dict):
        return args[0].get("run_id")
    return None


@worker_init.connect
def worker_init_handler(sender=None, conf=None, **kwargs):
    setup_logging(level=config.logging.level, format_type=config.logging.format)
    logger.info(
        f"Worker {sender} ready on {config.celery.broker_url} "
        f"with concurrency {config.celery.worker_concurrency}"
    )


@worker_shutdown.connect
def worker_shutdown_handler(sender=None, **kwargs):
    logger.info(f"Worker {sender} stopping")


@task_prerun.connect
def task_prerun_handler(sender=None, task_id=None, task=None, args=None, kwargs=None, **kwds):
    """Log under the run id the dispatcher put in the payload."""
    run_id = payload_run_id(args)
    if run_id:
        set_run_id(run_id)
    logger.info(f"Task {task.name} [{task_id}] started for run {run_id}")


@task_postrun.connect
def task_postrun_handler(
    sender=None, task_id=None, task=None, args=None, kwargs=None, retval=None, state=None, **kwds
):
    logger.info(f"Task {task.name} [{task_id}] finished: {state}")
