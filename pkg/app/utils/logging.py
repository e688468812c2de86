"""Structured logging stamped with the run id and a per-run sequence number."""

import json
import logging
import sys
from typing import Any, Dict, TextIO

from .correlation import get_run_id, next_sequence

# Attributes every LogRecord carries; anything else arrived through ``extra``.
_RECORD_FIELDS = frozenset(logging.makeLogRecord({}).__dict__) | {
    "asctime",
    "message",
    "taskName",
    "run_id",
    "seq",
}

QUIET_LOGGERS = ("celery", "kombu", "redis")


def _extra_fields(record: logging.LogRecord) -> Dict[str, Any]:
    return {k: v for k, v in record.__dict__.items() if k not in _RECORD_FIELDS}


class RunFormatter(logging.Formatter):
    """JSON or text lines with no wall-clock data."""

    def __init__(self, format_type: str = "json"):
        super().__init__()
        self.format_type = format_type.lower()

    def format(self, record: logging.LogRecord) -> str:
        run_id = get_run_id()
        if run_id:
            record.run_id = run_id
        record.seq = next_sequence()
        if self.format_type == "json":
            return self._format_json(record)
        return self._format_text(record)

    def _format_json(self, record: logging.LogRecord) -> str:
        document: Dict[str, Any] = {
            "seq": record.seq,
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            "module": record.module,
            "function": record.funcName,
        }
        if hasattr(record, "run_id"):
            document["run_id"] = record.run_id
        if record.exc_info:
            document["exception"] = self.formatException(record.exc_info)
        for key, value in _extra_fields(record).items():
            document.setdefault(key, value)
        return json.dumps(document, default=str, sort_keys=True)

    def _format_text(self, record: logging.LogRecord) -> str:
        run = f" [{record.run_id}]" if hasattr(record, "run_id") else ""
        line = (
            f"#{record.seq:06d} {record.levelname:8s} {record.name}{run}: "
            f"{record.getMessage()}"
        )
        if record.exc_info:
            line += "\n" + self.formatException(record.exc_info)
        return line


def setup_logging(
    level: str = "INFO", format_type: str = "json", stream: TextIO = sys.stdout
) -> None:
    """Route every record through one ``RunFormatter`` handler on ``stream``."""
    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)

    handler = logging.StreamHandler(stream)
    handler.setFormatter(RunFormatter(format_type))
    root.addHandler(handler)
    root.setLevel(level.upper())

    for name in QUIET_LOGGERS:
        logging.getLogger(name).setLevel(logging.WARNING)


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(name)


class LoggerMixin:
    """``self.logger`` named after the class, plus keyword-context helpers."""

    @property
    def logger(self) -> logging.Logger:
        return get_logger(f"{type(self).__module__}.{type(self).__name__}")

    def log_info(self, message: str, **context) -> None:
        self.logger.info(message, extra=context)

    def log_error(self, message: str, **context) -> None:
        self.logger.error(message, extra=context)

    def log_debug(self, message: str, **context) -> None:
        self.logger.debug(message, extra=context)
