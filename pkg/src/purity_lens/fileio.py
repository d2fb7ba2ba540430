"""CSV ingestion and JSON/CSV emission."""

from __future__ import annotations

import csv
import io
import json
import math
from collections.abc import Mapping

import numpy as np

from .discrete import DiscreteConditional
from .exceptions import PurityLensError
from .samples import GroupedSamples


class InputFormatError(PurityLensError):
    """Malformed input file; the message names the offending line."""


def _open_text(source):
    if hasattr(source, "read"):
        return source.read()
    with open(source, newline="") as fh:
        return fh.read()


def read_xy_csv(source) -> GroupedSamples:
    """Read a CSV with header ``x,y``; x is kept as a string token."""
    text = _open_text(source)
    reader = csv.reader(io.StringIO(text))
    xs, ys = [], []
    header_seen = False
    for row in reader:
        line = reader.line_num
        if not row or all(not c.strip() for c in row):
            continue
        if not header_seen:
            if [c.strip() for c in row] != ["x", "y"]:
                raise InputFormatError(f"line {line}: expected header 'x,y', got {','.join(row)!r}")
            header_seen = True
            continue
        if len(row) != 2:
            raise InputFormatError(f"line {line}: expected 2 fields, got {len(row)}")
        label = row[0].strip()
        try:
            value = float(row[1])
        except ValueError:
            raise InputFormatError(f"line {line}: y value {row[1].strip()!r} is not a number") from None
        if not math.isfinite(value):
            raise InputFormatError(f"line {line}: y value must be finite")
        xs.append(label)
        ys.append(value)
    if not header_seen:
        raise InputFormatError("line 1: empty input, expected header 'x,y'")
    if len(set(xs)) < 2:
        raise InputFormatError("need at least 2 groups (distinct x values)")
    return GroupedSamples.from_pairs(xs, ys)


def read_matrix_csv(source) -> DiscreteConditional:
    """Read a headerless numeric matrix, one row per x-value."""
    text = _open_text(source)
    rows = []
    width = None
    for line_no, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or all(not c.strip() for c in row):
            continue
        try:
            values = [float(c) for c in row]
        except ValueError:
            raise InputFormatError(f"line {line_no}: non-numeric matrix entry") from None
        if width is None:
            width = len(values)
        elif len(values) != width:
            raise InputFormatError(f"line {line_no}: expected {width} columns, got {len(values)}")
        rows.append(values)
    if not rows:
        raise InputFormatError("empty matrix")
    return DiscreteConditional(np.array(rows))


def format_float(value: float) -> str:
    """17 significant digits; integral values keep a trailing ``.0``."""
    text = format(float(value), ".17g")
    if text.lstrip("-").isdigit():
        text += ".0"
    return text


def _to_plain(obj):
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return [_to_plain(v) for v in obj.tolist()]
    return obj


def dumps_json(obj, indent: int = 2) -> str:
    """JSON text with every float written to 17 significant digits.

    Non-finite floats become ``null``. Mapping order is preserved.
    """
    pad = " " * indent

    def enc(o, depth):
        o = _to_plain(o)
        if o is None or isinstance(o, bool):
            return json.dumps(o)
        if isinstance(o, int):
            return str(o)
        if isinstance(o, float):
            return format_float(o) if math.isfinite(o) else "null"
        if isinstance(o, str):
            return json.dumps(o)
        inner = pad * (depth + 1)
        if isinstance(o, Mapping):
            if not o:
                return "{}"
            items = [f"{inner}{json.dumps(str(k))}: {enc(v, depth + 1)}" for k, v in o.items()]
            return "{\n" + ",\n".join(items) + "\n" + pad * depth + "}"
        if isinstance(o, (list, tuple)):
            if not o:
                return "[]"
            if all(isinstance(_to_plain(v), (int, float, bool)) or v is None for v in o):
                return "[" + ", ".join(enc(v, depth + 1) for v in o) + "]"
            items = [inner + enc(v, depth + 1) for v in o]
            return "[\n" + ",\n".join(items) + "\n" + pad * depth + "]"
        raise TypeError(f"cannot serialize {type(o).__name__}")

    return enc(obj, 0) + "\n"


def dumps_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(
            [format_float(v) if isinstance(v, (float, np.floating)) else v for v in row]
        )
    return buf.getvalue()
