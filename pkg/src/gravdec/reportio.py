"""Deterministic JSON and CSV serialization for reports.

Identical inputs must produce byte-identical output: field order follows
dict insertion order, floats are printed with 12 significant digits, the
decimal separator is always '.', and non-finite values are emitted as the
strings "inf", "-inf", "nan" (JSON has no literal for them).
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

__all__ = ["format_float", "dumps_json", "csv_lines", "write_text"]


def format_float(value: float) -> str:
    """12-significant-digit decimal representation, locale independent."""
    return format(float(value), ".12g")


def _encode(value, pieces: list[str]) -> None:
    if value is None:
        pieces.append("null")
    elif isinstance(value, bool):
        pieces.append("true" if value else "false")
    elif isinstance(value, int):
        pieces.append(str(value))
    elif isinstance(value, float):
        if math.isfinite(value):
            pieces.append(format_float(value))
        elif math.isnan(value):
            pieces.append('"nan"')
        else:
            pieces.append('"inf"' if value > 0 else '"-inf"')
    elif isinstance(value, str):
        pieces.append(_encode_string(value))
    elif isinstance(value, dict):
        pieces.append("{")
        for i, (key, item) in enumerate(value.items()):
            if i:
                pieces.append(", ")
            if not isinstance(key, str):
                raise TypeError(f"JSON object keys must be strings, got {key!r}")
            pieces.append(_encode_string(key))
            pieces.append(": ")
            _encode(item, pieces)
        pieces.append("}")
    elif isinstance(value, (list, tuple)):
        pieces.append("[")
        for i, item in enumerate(value):
            if i:
                pieces.append(", ")
            _encode(item, pieces)
        pieces.append("]")
    else:
        raise TypeError(f"cannot serialize {type(value).__name__} deterministically")


_ESCAPES = {
    "\\": "\\\\",
    '"': '\\"',
    "\n": "\\n",
    "\r": "\\r",
    "\t": "\\t",
    "\b": "\\b",
    "\f": "\\f",
}


def _encode_string(text: str) -> str:
    out = ['"']
    for ch in text:
        if ch in _ESCAPES:
            out.append(_ESCAPES[ch])
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    out.append('"')
    return "".join(out)


def dumps_json(doc) -> str:
    """Serialize to a single JSON line plus trailing newline."""
    pieces: list[str] = []
    _encode(doc, pieces)
    pieces.append("\n")
    return "".join(pieces)


def csv_lines(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    """Comma-separated table with header row; floats via format_float.

    Values never contain commas by construction (numbers and plain labels),
    so no quoting is needed.
    """
    lines = [",".join(header)]
    for row in rows:
        cells = []
        for value in row:
            if isinstance(value, float):
                cells.append(format_float(value))
            else:
                cells.append(str(value))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def write_text(path: str, text: str) -> None:
    """Write with an explicit newline convention so bytes match across platforms."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(text)
