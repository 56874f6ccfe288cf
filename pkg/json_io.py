"""JSON I/O helpers for dual graphs, traces and command output."""

import json
from pathlib import Path

from errors import DomainError
from mmp.model import DualGraphModel


def read_json(path: str):
    p = Path(path)
    if not p.exists():
        raise DomainError(f"file not found: {path}")
    with open(p, "r", encoding="utf-8") as f:
        try:
            return json.load(f)
        except json.JSONDecodeError as e:
            raise DomainError(f"{path} is not valid JSON: {e}") from e


def dumps(obj) -> str:
    """Canonical text: identical data gives identical bytes."""
    return json.dumps(obj, ensure_ascii=False, indent=2, sort_keys=True)


def write_json(obj, path: str):
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps(obj) + "\n")


def read_graph(path: str) -> DualGraphModel:
    return DualGraphModel.from_dict(read_json(path))


def write_trace(trace, path: str):
    """Write an MMP trace with before/after snapshots of every step."""
    write_json(trace.to_dict(), path)


def print_json(obj):
    print(dumps(obj))
