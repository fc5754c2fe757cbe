"""Deterministic JSON and CSV rendering.

All reals are written with 17 significant digits, which round-trips
doubles bit-faithfully; key order is insertion order and nothing
time- or environment-dependent is ever emitted, so identical inputs
produce byte-identical output.
"""

from __future__ import annotations

import csv
import io
import json

import numpy as np

__all__ = ["format_value", "emit_json", "emit_csv", "parse_csv_text"]


def format_value(value) -> str:
    """Canonical scalar rendering shared by both formats."""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def _json_value(value, indent: int, pieces: list[str]) -> None:
    pad = "  " * indent
    if value is None:
        pieces.append("null")
    elif isinstance(value, (bool, np.bool_)):
        pieces.append("true" if value else "false")
    elif isinstance(value, (int, np.integer)):
        pieces.append(str(int(value)))
    elif isinstance(value, (float, np.floating)):
        pieces.append(format(float(value), ".17g"))
    elif isinstance(value, str):
        pieces.append(json.dumps(value))
    elif isinstance(value, dict):
        if not value:
            pieces.append("{}")
            return
        pieces.append("{\n")
        for i, (key, item) in enumerate(value.items()):
            pieces.append(f"{pad}  {json.dumps(str(key))}: ")
            _json_value(item, indent + 1, pieces)
            pieces.append(",\n" if i < len(value) - 1 else "\n")
        pieces.append(pad + "}")
    elif isinstance(value, (list, tuple)):
        if not value:
            pieces.append("[]")
            return
        pieces.append("[\n")
        for i, item in enumerate(value):
            pieces.append(pad + "  ")
            _json_value(item, indent + 1, pieces)
            pieces.append(",\n" if i < len(value) - 1 else "\n")
        pieces.append(pad + "]")
    else:
        raise TypeError(f"cannot serialize {type(value).__name__} deterministically")


def emit_json(document: dict) -> str:
    pieces: list[str] = []
    _json_value(document, 0, pieces)
    pieces.append("\n")
    return "".join(pieces)


def emit_csv(rows: list[dict]) -> str:
    """Header plus one line per row; UTF-8, '.' decimals, comma separator."""
    buf = io.StringIO()
    if not rows:
        return ""
    writer = csv.writer(buf, lineterminator="\n")
    header = list(rows[0].keys())
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_value(row[key]) for key in header])
    return buf.getvalue()


def parse_csv_text(text: str) -> list[dict]:
    """Inverse of emit_csv at the string level (values stay strings)."""
    reader = csv.DictReader(io.StringIO(text))
    return [dict(row) for row in reader]
