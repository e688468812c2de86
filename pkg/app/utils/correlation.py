"""Run identifiers and log sequence numbers.

Log records carry the run id plus a per-run sequence counter instead of
wall-clock data, so two identical invocations log identical lines.
"""

import hashlib
import itertools
from contextvars import ContextVar
from typing import Iterator, Optional

# Context variable to store the run id for the current invocation
_run_id: ContextVar[Optional[str]] = ContextVar("run_id", default=None)
_sequence: ContextVar[Optional[Iterator[int]]] = ContextVar("log_sequence", default=None)


def generate_run_id(*parts: object) -> str:
    """Derive a stable run id from the invocation parameters."""
    digest = hashlib.sha1("|".join(str(part) for part in parts).encode()).hexdigest()
    return f"run_{digest[:12]}"


def set_run_id(run_id: str) -> None:
    """Set the run id for the current context and restart the sequence."""
    _run_id.set(run_id)
    _sequence.set(itertools.count(1))


def get_run_id() -> Optional[str]:
    """Get the run id from the current context."""
    return _run_id.get()


def get_or_generate_run_id(*parts: object) -> str:
    """Get the existing run id or derive one from ``parts``."""
    run_id = get_run_id()
    if run_id is None:
        run_id = generate_run_id(*parts)
        set_run_id(run_id)
    return run_id


def next_sequence() -> int:
    """Next log sequence number in the current run."""
    counter = _sequence.get()
    if counter is None:
        counter = itertools.count(1)
        _sequence.set(counter)
    return next(counter)
