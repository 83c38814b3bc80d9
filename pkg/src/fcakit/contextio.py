"""Reading and writing formal contexts: Burmeister .cxt, CSV, and JSON.

parse_context and serialize_context are inverse on canonical form: labels,
order, and incidence all survive a round trip.  Errors carry line numbers
where the format has lines.
"""

from __future__ import annotations

import csv
import io
import json

from .context import FormalContext, bits_of
from .errors import InputError

FORMATS = ("cxt", "csv", "json")

# Cells treated as "no cross" in CSV input; anything else nonempty is a cross.
_CSV_BLANK = {"", "0", "."}


def parse_context(data, format: str) -> FormalContext:
    """Parse bytes or text in one of the supported formats."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    if format == "cxt":
        return _parse_cxt(data)
    if format == "csv":
        return _parse_csv(data)
    if format == "json":
        return _parse_json(data)
    raise InputError("unknown context format: %r" % (format,))


def serialize_context(ctx: FormalContext, format: str) -> str:
    if format == "cxt":
        return _serialize_cxt(ctx)
    if format == "csv":
        return _serialize_csv(ctx)
    if format == "json":
        return _serialize_json(ctx)
    raise InputError("unknown context format: %r" % (format,))


def guess_format(path: str) -> str:
    lowered = str(path).lower()
    for fmt in FORMATS:
        if lowered.endswith("." + fmt):
            return fmt
    raise InputError("cannot guess context format from %r (use .cxt/.csv/.json)" % (path,))


# -- Burmeister ------------------------------------------------------------


def _parse_int_line(lines, pos, what):
    while pos < len(lines) and lines[pos].strip() == "":
        pos += 1  # blank line tolerated between header fields
    if pos >= len(lines):
        raise InputError("line %d: missing %s" % (pos + 1, what))
    try:
        value = int(lines[pos].strip())
    except ValueError:
        raise InputError(
            "line %d: expected %s, got %r" % (pos + 1, what, lines[pos])
        ) from None
    if value < 0:
        raise InputError("line %d: %s must be nonnegative" % (pos + 1, what))
    return value, pos + 1


def _parse_cxt(text: str) -> FormalContext:
    lines = text.split("\n")
    if not lines or lines[0].strip() != "B":
        raise InputError("line 1: Burmeister files start with 'B'")
    pos = 1
    # Line 2 is an optional name: skip it unless it already is the object count.
    if pos < len(lines):
        stripped = lines[pos].strip()
        if stripped == "" or not stripped.lstrip("-").isdigit():
            pos += 1
    n_objects, pos = _parse_int_line(lines, pos, "object count")
    n_attributes, pos = _parse_int_line(lines, pos, "attribute count")
    while pos < len(lines) and lines[pos].strip() == "":
        pos += 1
    needed = n_objects + n_attributes + n_objects
    labels_and_rows = lines[pos:]
    if len(labels_and_rows) < needed:
        raise InputError(
            "line %d: expected %d label/row lines, found %d"
            % (pos + 1, needed, len(labels_and_rows))
        )
    objects = [labels_and_rows[i].strip() for i in range(n_objects)]
    attributes = [
        labels_and_rows[n_objects + i].strip() for i in range(n_attributes)
    ]
    incidence = []
    base = pos + n_objects + n_attributes
    for i in range(n_objects):
        line = lines[base + i].rstrip("\r\n")
        if len(line) != n_attributes:
            raise InputError(
                "line %d: row has %d characters, expected %d"
                % (base + i + 1, len(line), n_attributes)
            )
        row = []
        for j, ch in enumerate(line):
            if ch in ("X", "x"):
                row.append(j)
            elif ch != ".":
                raise InputError(
                    "line %d: invalid incidence character %r" % (base + i + 1, ch)
                )
        incidence.append(row)
    for extra in lines[base + n_objects:]:
        if extra.strip() != "":
            raise InputError("trailing content after incidence rows: %r" % (extra,))
    return FormalContext(objects, attributes, incidence)


def _serialize_cxt(ctx: FormalContext) -> str:
    out = ["B", "", str(ctx.n_objects), str(ctx.n_attributes)]
    out.extend(ctx.objects)
    out.extend(ctx.attributes)
    for gi in range(ctx.n_objects):
        mask = ctx.row_mask(gi)
        out.append("".join("X" if mask >> j & 1 else "." for j in range(ctx.n_attributes)))
    return "\n".join(out) + "\n"


# -- CSV ---------------------------------------------------------------------


def _parse_csv(text: str) -> FormalContext:
    reader = csv.reader(io.StringIO(text))
    table = [row for row in reader if row]
    if not table:
        raise InputError("line 1: empty CSV context")
    attributes = [cell.strip() for cell in table[0][1:]]
    objects = []
    incidence = []
    for lineno, row in enumerate(table[1:], start=2):
        if len(row) != len(attributes) + 1:
            raise InputError(
                "line %d: row has %d cells, expected %d"
                % (lineno, len(row), len(attributes) + 1)
            )
        objects.append(row[0].strip())
        incidence.append(
            [j for j, cell in enumerate(row[1:]) if cell.strip() not in _CSV_BLANK]
        )
    return FormalContext(objects, attributes, incidence)


def _serialize_csv(ctx: FormalContext) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([""] + list(ctx.attributes))
    for gi, g in enumerate(ctx.objects):
        mask = ctx.row_mask(gi)
        writer.writerow([g] + ["1" if mask >> j & 1 else "" for j in range(ctx.n_attributes)])
    return buf.getvalue()


# -- JSON --------------------------------------------------------------------


def _parse_json(text: str) -> FormalContext:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("invalid JSON context: %s" % exc) from None
    if not isinstance(doc, dict):
        raise InputError("JSON context must be an object")
    for key in ("objects", "attributes", "incidence"):
        if key not in doc:
            raise InputError("JSON context missing %r" % key)
    objects = doc["objects"]
    attributes = doc["attributes"]
    incidence = doc["incidence"]
    if not (isinstance(objects, list) and isinstance(attributes, list)
            and isinstance(incidence, list)):
        raise InputError("JSON context fields must be lists")
    return FormalContext(objects, attributes, incidence)


def context_json_dict(ctx: FormalContext) -> dict:
    return {
        "objects": list(ctx.objects),
        "attributes": list(ctx.attributes),
        "incidence": [list(bits_of(ctx.row_mask(gi))) for gi in range(ctx.n_objects)],
    }


def _serialize_json(ctx: FormalContext) -> str:
    return json.dumps(context_json_dict(ctx), ensure_ascii=False) + "\n"


def load_context(path: str, format: str | None = None) -> FormalContext:
    """Read a context file, guessing the format from the extension if needed."""
    fmt = format or guess_format(path)
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_context(fh.read(), fmt)
    except OSError as exc:
        raise InputError("cannot read %s: %s" % (path, exc)) from None
