"""Append-only JSON-lines cache for expensive command results.

Records are keyed by (command, params, tool_version); a later record with the
same key wins on lookup. Writers serialize through an advisory file lock so
concurrent stores interleave whole lines. Corrupt lines are skipped with a
warning and never abort a lookup.
"""

from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

from filelock import FileLock

from . import __version__

log = logging.getLogger(__name__)

CACHE_DIR_ENV = "CLIQUEDEC_CACHE_DIR"

__all__ = ["RunRecord", "RunCache", "CACHE_DIR_ENV"]


@dataclass(frozen=True)
class RunRecord:
    command: str
    params: dict
    result: dict
    tool_version: str
    timestamp: str  # UTC instant, ISO 8601
    seed: int | None = None

    def key(self) -> str:
        return json.dumps(
            {"command": self.command, "params": self.params, "version": self.tool_version},
            sort_keys=True,
            separators=(",", ":"),
        )

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "params": self.params,
            "result": self.result,
            "tool_version": self.tool_version,
            "timestamp": self.timestamp,
            "seed": self.seed,
        }


def _default_directory() -> Path:
    env = os.environ.get(CACHE_DIR_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "cliquedec"


class RunCache:
    def __init__(self, directory: Path | str | None = None):
        self.directory = Path(directory) if directory else _default_directory()
        self.path = self.directory / "runs.jsonl"
        self._lock = FileLock(str(self.path) + ".lock")

    @staticmethod
    def make_key(command: str, params: dict, tool_version: str = __version__) -> str:
        return json.dumps(
            {"command": command, "params": params, "version": tool_version},
            sort_keys=True,
            separators=(",", ":"),
        )

    def lookup(
        self, command: str, params: dict, tool_version: str = __version__
    ) -> RunRecord | None:
        if not self.path.exists():
            return None
        wanted = self.make_key(command, params, tool_version)
        found: RunRecord | None = None
        with self._lock:
            lines = self.path.read_text().splitlines()
        for lineno, line in enumerate(lines, start=1):
            if not line.strip():
                continue
            try:
                raw = json.loads(line)
                record = RunRecord(
                    command=raw["command"],
                    params=raw["params"],
                    result=raw["result"],
                    tool_version=raw["tool_version"],
                    timestamp=raw["timestamp"],
                    seed=raw.get("seed"),
                )
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                log.warning("skipping corrupt cache line %d in %s: %s", lineno, self.path, exc)
                continue
            if record.key() == wanted:
                found = record
        return found

    def store(
        self,
        command: str,
        params: dict,
        result: dict,
        tool_version: str = __version__,
        seed: int | None = None,
    ) -> RunRecord:
        record = RunRecord(
            command=command,
            params=params,
            result=result,
            tool_version=tool_version,
            timestamp=datetime.now(timezone.utc).isoformat(),
            seed=seed,
        )
        self.directory.mkdir(parents=True, exist_ok=True)
        line = json.dumps(record.as_dict(), sort_keys=True, separators=(",", ":"))
        with self._lock:
            with open(self.path, "a") as handle:
                handle.write(line + "\n")
        return record
