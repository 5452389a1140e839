"""JSON encoding of sequences: ``{"mode": "rational"|"float", "values": [...]}``."""
from __future__ import annotations

import json
from pathlib import Path

from .scalar import Mode, fmt, parse_scalar
from .seq import Seq


def seq_to_json(x: Seq) -> dict:
    mode = x.mode
    if mode is Mode.EXACT:
        return {"mode": mode.value, "values": [fmt(v) for v in x.values]}
    return {"mode": mode.value, "values": [float(v) for v in x.values]}


def seq_from_json(obj, mode: Mode | None = None) -> Seq:
    """Accepts the dict form or a bare list of values."""
    if isinstance(obj, list):
        return Seq.of(obj, mode)
    m = Mode(obj.get("mode", "rational")) if mode is None else mode
    return Seq(tuple(parse_scalar(v, m) for v in obj["values"]))


def load_seq(path, mode: Mode | None = None) -> Seq:
    return seq_from_json(json.loads(Path(path).read_text()), mode)


def dump_seq(x: Seq, path) -> None:
    Path(path).write_text(json.dumps(seq_to_json(x)))


def to_jsonable(obj):
    """Recursively turn scalars into JSON-safe values."""
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, Seq):
        return seq_to_json(obj)
    if hasattr(obj, "to_json"):
        return obj.to_json()
    return fmt(obj)
