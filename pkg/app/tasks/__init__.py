"""Celery tasks for background verification."""

from .verify_tasks import build_level_task, dispatch_suites, run_suite_task
from .worker import celery_app

__all__ = ["celery_app", "build_level_task", "dispatch_suites", "run_suite_task"]
