"""Canonical JSON encoding and bundled response schemas.

Every interface (CLI, REPL, HTTP) renders query payloads through
`canonical`, so identical queries produce byte-identical JSON text.
"""

from __future__ import annotations

import json
from importlib import resources


def canonical(obj) -> str:
    """Deterministic JSON text: sorted keys, compact separators."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def schema_names() -> list[str]:
    root = resources.files("xplain") / "schemas"
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".json"))


def load_schema(name: str) -> dict:
    if not name.endswith(".json"):
        name += ".schema.json"
    data = (resources.files("xplain") / "schemas" / name).read_text()
    return json.loads(data)
