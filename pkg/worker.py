"""Celery worker entry point for the verification and level-building queues."""

import sys
from typing import List, Optional, Sequence

from app.models.config import AppConfig
from app.tasks.worker import celery_app
from app.utils.correlation import generate_run_id, set_run_id
from app.utils.logging import get_logger, setup_logging

QUEUES = ("verification", "schemes")

logger = get_logger(__name__)


def worker_argv(argv: Sequence[str]) -> List[str]:
    """``worker`` plus the routed queues unless the caller picked its own."""
    args = list(argv) or ["worker"]
    if args[0] == "worker" and not any(a.startswith(("-Q", "--queues")) for a in args):
        args.append(f"--queues={','.join(QUEUES)}")
    return args


def main(argv: Optional[Sequence[str]] = None) -> None:
    config = AppConfig()
    setup_logging(level=config.logging.level, format_type=config.logging.format)
    set_run_id(generate_run_id("worker", config.celery.broker_url))

    args = worker_argv(sys.argv[1:] if argv is None else argv)
    logger.info(f"Starting Celery with {' '.join(args)}")
    celery_app.start(args)


if __name__ == "__main__":
    main()
