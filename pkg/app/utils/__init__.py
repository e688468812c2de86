"""Logging and run identifier helpers."""

from .correlation import generate_run_id, get_run_id, set_run_id
from .logging import LoggerMixin, get_logger, setup_logging

__all__ = [
    "setup_logging",
    "get_logger",
    "LoggerMixin",
    "generate_run_id",
    "get_run_id",
    "set_run_id",
]
