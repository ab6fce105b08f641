"""Convert an exported annotation spreadsheet (CSV) into the canonical TSV.

The CSV needs a header row.  Column names are matched case-insensitively
and a few spellings are accepted for each field:

==============  =====================================================
field           accepted header names
==============  =====================================================
reading label   ``reading`` (e.g. ``obliger 02`` or ``montrer_V-9-266``)
lemma / id      ``lemma`` and ``reading_id``, instead of a label
source          ``source`` (optional; inferred from the id otherwise)
gloss           ``gloss``, ``translation``
sip             ``sip``
subcat          ``subcat``, ``clauses`` (``aInf, que`` / ``aInf+que``)
signatures      ``PFV+anim``, ``PFV-anim``, ``IMP`` (or the TSV names)
cogniser        ``cog PFV+anim``, ``cog PFV-anim``, ``cog IMP``
event kinds     ``event_kinds``
==============  =====================================================

Signature cells may use decimal commas (``0,9|n``); an empty cell means NA.
Numeric ids (``02``) are LVF readings, ``V...`` ids come from the
Lexicon-Grammar tables (LGLEX).
"""

from __future__ import annotations

import csv
import io
import re
from typing import IO

from .lexicon import COG_COLUMNS, SIG_COLUMNS, LineError, Reading, parse_row, RowError
from .core import ContextKey

__all__ = ["split_reading_label", "infer_source", "convert_sheet", "SheetFormatError"]


class SheetFormatError(ValueError):
    pass


_ALIASES = {
    "reading": "label",
    "lemma": "lemma",
    "reading_id": "reading_id",
    "source": "source",
    "gloss": "gloss",
    "translation": "gloss",
    "sip": "sip",
    "subcat": "subcat",
    "clauses": "subcat",
    "event_kinds": "event_kinds",
    "pfv+anim": SIG_COLUMNS[ContextKey.PFV_ANIM],
    "pfv-anim": SIG_COLUMNS[ContextKey.PFV_INANIM],
    "imp": SIG_COLUMNS[ContextKey.IMP],
    "cog pfv+anim": COG_COLUMNS[ContextKey.PFV_ANIM],
    "cog pfv-anim": COG_COLUMNS[ContextKey.PFV_INANIM],
    "cog imp": COG_COLUMNS[ContextKey.IMP],
}
for _col in (*SIG_COLUMNS.values(), *COG_COLUMNS.values()):
    _ALIASES[_col] = _col

_LGLEX_LABEL = re.compile(r"(?P<lemma>.+?)[_ ](?P<id>V[-_]\S+)")
_LVF_LABEL = re.compile(r"(?P<lemma>.+?)[_ ]+(?P<id>\d+)")


def split_reading_label(label: str) -> tuple[str, str]:
    """``"obliger 02"`` -> ``("obliger", "02")``; ``"montrer_V-9-266"`` -> ``("montrer", "V-9-266")``."""
    label = label.strip()
    for pattern in (_LGLEX_LABEL, _LVF_LABEL):
        m = pattern.fullmatch(label)
        if m:
            return m.group("lemma").strip(), m.group("id")
    raise ValueError(f"cannot split reading label {label!r}")


def infer_source(reading_id: str) -> str:
    return "LGLEX" if reading_id.startswith("V") else "LVF"


def _normalise_sig(cell: str) -> str:
    cell = cell.strip()
    if not cell:
        return "NA"
    if cell.upper() in ("NA", "UNGR"):
        return cell.upper()
    return cell.replace(",", ".").replace(" ", "")


def convert_sheet(stream: IO[str]) -> tuple[list[Reading], list[LineError]]:
    reader = csv.reader(stream)
    try:
        header = next(reader)
    except StopIteration:
        raise SheetFormatError("empty sheet") from None
    fields = []
    for h in header:
        key = _ALIASES.get(h.strip().lstrip("﻿").lower())
        fields.append(key)
    present = set(fields)
    if "label" not in present and not {"lemma", "reading_id"} <= present:
        raise SheetFormatError("sheet needs a 'reading' column or 'lemma' and 'reading_id'")
    missing = [c for c in SIG_COLUMNS.values() if c not in present]
    if missing:
        raise SheetFormatError(f"sheet lacks signature columns: {', '.join(missing)}")

    readings: list[Reading] = []
    errors: list[LineError] = []
    seen: set[tuple] = set()
    for cells in reader:
        lineno = reader.line_num
        if not any(c.strip() for c in cells):
            continue
        raw = {f: c for f, c in zip(fields, cells) if f is not None}
        row = {k: v.strip() for k, v in raw.items()}
        try:
            if row.get("label") and not (row.get("lemma") and row.get("reading_id")):
                row["lemma"], row["reading_id"] = split_reading_label(row["label"])
        except ValueError as exc:
            errors.append(LineError(lineno, str(exc)))
            continue
        row.setdefault("source", "")
        if not row["source"]:
            row["source"] = infer_source(row.get("reading_id", ""))
        row["source"] = row["source"].upper()
        row["subcat"] = "+".join(t for t in re.split(r"[+,;/\s]+", row.get("subcat", "")) if t)
        for col in SIG_COLUMNS.values():
            row[col] = _normalise_sig(row.get(col, ""))
        cog_cells = [row.get(col, "") for col in COG_COLUMNS.values()]
        for col in COG_COLUMNS.values():
            row[col] = _normalise_sig(row.get(col, "")) if any(cog_cells) else ""
        try:
            reading = parse_row(row)
        except RowError as exc:
            errors.append(LineError(lineno, str(exc)))
            continue
        if reading.key in seen:
            errors.append(LineError(lineno, f"duplicate key {reading.label} ({reading.source})"))
            continue
        seen.add(reading.key)
        readings.append(reading)
    return readings, errors


def convert_text(text: str) -> tuple[list[Reading], list[LineError]]:
    return convert_sheet(io.StringIO(text))
