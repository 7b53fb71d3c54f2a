"""Loader for the versioned JSON schemas shipped with the package."""

from __future__ import annotations

import json
from importlib import resources

SCHEMA_NAMES = (
    "abort-rate",
    "asymptote",
    "decomposition",
    "enumerate",
    "graph",
    "identities",
    "order-experiment",
    "report",
    "run-record",
    "sample-summary",
    "sample-trial",
    "typicality",
)

SCHEMA_VERSION = 1


def load_schema(name: str) -> dict:
    if name not in SCHEMA_NAMES:
        raise KeyError(f"unknown schema {name!r}")
    path = resources.files(__package__) / "schemas" / f"{name}.v{SCHEMA_VERSION}.json"
    return json.loads(path.read_text())


def validate(payload: dict, name: str) -> None:
    """Validate a payload against a shipped schema (needs jsonschema)."""
    import jsonschema

    jsonschema.validate(payload, load_schema(name))
