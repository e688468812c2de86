"""Forcing session directories: the type document plus an append-only demand log."""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional

from ...models.config import ForcingConfig, SchemeConfig
from ...models.errors import PreconditionViolation
from ...models.forcing import DemandRecord, FragmentSnapshot
from ...models.types import TypeSpec
from ...utils.logging import LoggerMixin
from ..scheme_engine import SchemeView
from .generic import Fragment, GenericBuilder

SESSION_FILE = "session.json"
DEMANDS_FILE = "demands.jsonl"


class ForcingSession(LoggerMixin):
    """A session directory replayed into a fragment on every load."""

    def __init__(
        self,
        path: Path,
        spec: TypeSpec,
        config: Optional[ForcingConfig] = None,
        scheme_config: Optional[SchemeConfig] = None,
    ):
        self.path = Path(path)
        self.spec = spec
        self.config = config or ForcingConfig()
        self.scheme = SchemeView(spec, scheme_config)
        self.builder = GenericBuilder(self.scheme, self.config)
        self._fragment: Optional[Fragment] = None

    @classmethod
    def init(
        cls,
        path: Path,
        spec: TypeSpec,
        config: Optional[ForcingConfig] = None,
        scheme_config: Optional[SchemeConfig] = None,
    ) -> "ForcingSession":
        """Create a session directory holding the type and an empty log.

        Raises:
            PreconditionViolation: the directory already holds a session.
        """
        path = Path(path)
        if (path / SESSION_FILE).exists():
            raise PreconditionViolation(f"{path} already holds a session", path=str(path))
        path.mkdir(parents=True, exist_ok=True)
        document = {"type": spec.to_json_document(), "version": 1}
        (path / SESSION_FILE).write_text(
            json.dumps(document, sort_keys=True, separators=(",", ":")) + "\n"
        )
        (path / DEMANDS_FILE).write_text("")
        session = cls(path, spec, config, scheme_config)
        session.log_info("Initialized forcing session", session_path=str(path))
        return session

    @classmethod
    def load(
        cls,
        path: Path,
        config: Optional[ForcingConfig] = None,
        scheme_config: Optional[SchemeConfig] = None,
    ) -> "ForcingSession":
        """Open an existing session directory.

        Raises:
            PreconditionViolation: no session lives at ``path``.
        """
        path = Path(path)
        session_file = path / SESSION_FILE
        if not session_file.exists():
            raise PreconditionViolation(f"no session at {path}; run force init", path=str(path))
        document = json.loads(session_file.read_text())
        spec = TypeSpec.from_json_document(document["type"])
        return cls(path, spec, config, scheme_config)

    def records(self) -> List[DemandRecord]:
        demands_file = self.path / DEMANDS_FILE
        if not demands_file.exists():
            return []
        records = []
        for number, line in enumerate(demands_file.read_text().splitlines(), start=1):
            if not line.strip():
                continue
            try:
                records.append(DemandRecord.model_validate_json(line))
            except ValueError as e:
                raise PreconditionViolation(
                    f"demand log line {number} is malformed: {e}", line=number
                ) from e
        return records

    def fragment(self) -> Fragment:
        """The fragment rebuilt from the log, checked choice by choice."""
        if self._fragment is None:
            self._fragment = self.builder.replay(self.records())
        return self._fragment

    def demand(self, op: str, args: Dict[str, Any]) -> DemandRecord:
        """Meet one demand on the current stage and append it to the log."""
        fragment, record = self.builder.step(self.fragment(), op, args)
        self._fragment = fragment
        try:
            with open(self.path / DEMANDS_FILE, "a") as f:
                f.write(record.model_dump_json() + "\n")
        except OSError as e:
            self.log_error(f"Failed to append demand: {e}", session_path=str(self.path))
            raise
        self.log_info("Recorded demand", op=op, stage=record.stage)
        return record

    def snapshot(self) -> FragmentSnapshot:
        return self.fragment().snapshot()
