"""Signature lexicon: readings, TSV carrier, merging, querying, validation."""

from __future__ import annotations

import csv
import enum
import io
import unicodedata
from collections import Counter, defaultdict
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path
from typing import IO, Iterable, Iterator, Mapping

from .algebra import Comparison, classify, compare_strength
from .core import (
    Animacy,
    Aspect,
    ContextKey,
    InferentialClass,
    Signature,
    SignatureParseError,
    SignatureSlot,
    SlotMarker,
    parse_signature,
)

__all__ = [
    "SubcatFrame",
    "Source",
    "EventKind",
    "Reading",
    "Lexicon",
    "LineError",
    "LexiconFormatError",
    "UnresolvedReadingError",
    "SlotUnavailableError",
    "AmbiguousSlotError",
    "ClassingPreference",
    "COLUMNS",
    "load_tsv",
    "load_path",
    "load_seed",
    "dump_tsv",
    "merge_duplicates",
    "select_slot",
    "pfv_signature",
    "Issue",
    "Severity",
    "ValidationReport",
    "validate",
]


class SubcatFrame(enum.Enum):
    A_INF = "aInf"
    DE_INF = "deInf"
    INF = "inf"
    QUE = "que"

    def __str__(self) -> str:
        return self.value

    @property
    def infinitival(self) -> bool:
        return self is not SubcatFrame.QUE


class Source(enum.Enum):
    LVF = "LVF"
    LGLEX = "LGLEX"
    MERGED = "MERGED"

    def __str__(self) -> str:
        return self.value


class EventKind(enum.Enum):
    CLAUSE = "clause"
    EVENT_NP = "eventNP"

    def __str__(self) -> str:
        return self.value


def _nfc(text: str) -> str:
    return unicodedata.normalize("NFC", text)


def _join(items: Iterable[object]) -> str:
    return "+".join(sorted(str(i) for i in items))


@dataclass(frozen=True, eq=True)
class Reading:
    """One annotated verb reading (a lemma/sense/valence combination)."""

    lemma: str
    reading_id: str
    source: Source
    slots: Mapping[ContextKey, SignatureSlot]
    gloss: str = ""
    sip: bool = False
    subcat: frozenset[SubcatFrame] = frozenset()
    cogniser_slots: Mapping[ContextKey, SignatureSlot] | None = None
    event_kinds: frozenset[EventKind] = frozenset({EventKind.CLAUSE})
    # original "SOURCE:id" labels, filled in by merge_duplicates
    provenance: tuple[str, ...] = ()

    __hash__ = None  # type: ignore[assignment]

    @property
    def key(self) -> tuple[str, str, Source]:
        return (self.lemma, self.reading_id, self.source)

    @property
    def label(self) -> str:
        return f"{self.lemma} {self.reading_id}"

    def slot(self, context: ContextKey) -> SignatureSlot:
        return self.slots[context]

    def slot_tuple(self) -> tuple[SignatureSlot | None, ...]:
        return tuple(self.slots.get(k) for k in ContextKey)

    def cogniser_tuple(self) -> tuple[SignatureSlot | None, ...] | None:
        if self.cogniser_slots is None:
            return None
        return tuple(self.cogniser_slots.get(k) for k in ContextKey)

    def ids(self) -> tuple[str, ...]:
        """The reading id plus every id it was merged from."""
        return (self.reading_id,) + tuple(p.split(":", 1)[1] for p in self.provenance)

    def problems(self) -> list[str]:
        out = []
        missing = [str(k) for k in ContextKey if k not in self.slots]
        if missing:
            out.append(f"missing slots: {', '.join(missing)}")
        elif all(isinstance(s, SlotMarker) for s in self.slots.values()):
            out.append("all slots unannotated")
        if self.cogniser_slots is not None:
            if not self.sip:
                out.append("cogniser slots on a non-SIP reading")
            cmissing = [str(k) for k in ContextKey if k not in self.cogniser_slots]
            if cmissing:
                out.append(f"missing cogniser slots: {', '.join(cmissing)}")
        return out


class ClassingPreference(enum.Enum):
    """Which perfective slot classes a reading when both are annotated."""

    ANIM_FIRST = "anim"
    INANIM_FIRST = "inanim"

    def __str__(self) -> str:
        return self.value

    @property
    def order(self) -> tuple[ContextKey, ContextKey]:
        if self is ClassingPreference.ANIM_FIRST:
            return (ContextKey.PFV_ANIM, ContextKey.PFV_INANIM)
        return (ContextKey.PFV_INANIM, ContextKey.PFV_ANIM)


def pfv_signature(
    reading: Reading, prefer: ClassingPreference = ClassingPreference.ANIM_FIRST
) -> Signature | None:
    for key in prefer.order:
        slot = reading.slots.get(key)
        if isinstance(slot, Signature):
            return slot
    return None


class UnresolvedReadingError(LookupError):
    def __init__(self, lemma: str, reading_id: str, reason: str = "no such reading"):
        super().__init__(f"{lemma}:{reading_id}: {reason}")
        self.lemma = lemma
        self.reading_id = reading_id


class SlotUnavailableError(LookupError):
    """The requested context is NA or UNGR for this reading."""

    def __init__(self, reading: Reading, context: str, marker: SlotMarker):
        what = "not annotated" if marker is SlotMarker.NA else "ungrammatical"
        super().__init__(f"{reading.label}: context {context} {what} ({marker})")
        self.reading = reading
        self.context = context
        self.marker = marker


class AmbiguousSlotError(LookupError):
    def __init__(self, reading: Reading, anim: Signature, inanim: Signature):
        super().__init__(
            f"{reading.label}: perfective with unknown animacy is ambiguous "
            f"(anim {anim}, inanim {inanim})"
        )
        self.reading = reading


def select_slot(
    reading: Reading,
    aspect: Aspect,
    animacy: Animacy,
    pfv_unknown: str = "weaker",
) -> Signature:
    """Pick the signature for one aspect/animacy occurrence of ``reading``.

    With perfective aspect and unknown animacy the two perfective slots are
    reconciled: a lone signature wins, equal signatures agree, and otherwise
    the weaker one is returned (``pfv_unknown="error"`` raises instead).
    Incomparable signatures always raise ``AmbiguousSlotError``.
    """
    if pfv_unknown not in ("weaker", "error"):
        raise ValueError(f"pfv_unknown must be 'weaker' or 'error', not {pfv_unknown!r}")
    if aspect is Aspect.IMP:
        keys = [ContextKey.IMP]
    elif animacy is Animacy.ANIM:
        keys = [ContextKey.PFV_ANIM]
    elif animacy is Animacy.INANIM:
        keys = [ContextKey.PFV_INANIM]
    else:
        keys = [ContextKey.PFV_ANIM, ContextKey.PFV_INANIM]

    if len(keys) == 1:
        slot = reading.slots[keys[0]]
        if isinstance(slot, SlotMarker):
            raise SlotUnavailableError(reading, str(keys[0]), slot)
        return slot

    anim, inanim = (reading.slots[k] for k in keys)
    sigs = [s for s in (anim, inanim) if isinstance(s, Signature)]
    if not sigs:
        raise SlotUnavailableError(reading, "pfv", anim)
    if len(sigs) == 1 or anim == inanim:
        return sigs[0]
    if pfv_unknown == "error":
        raise AmbiguousSlotError(reading, anim, inanim)
    cmp = compare_strength(anim, inanim)
    if cmp is Comparison.WEAKER:
        return anim
    if cmp is Comparison.STRONGER:
        return inanim
    # same magnitudes with different signs, or crossing magnitudes
    raise AmbiguousSlotError(reading, anim, inanim)


class Lexicon:
    """An immutable collection of readings indexed by lemma."""

    def __init__(self, entries: Iterable[Reading] = ()):
        self._entries = tuple(entries)
        index: dict[str, list[Reading]] = defaultdict(list)
        for r in self._entries:
            index[_nfc(r.lemma)].append(r)
        self._index = {k: tuple(v) for k, v in index.items()}

    @property
    def entries(self) -> tuple[Reading, ...]:
        return self._entries

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[Reading]:
        return iter(self._entries)

    def __repr__(self) -> str:
        return f"Lexicon({len(self)} readings, {len(self._index)} lemmas)"

    def lemmas(self) -> list[str]:
        return sorted(self._index)

    def readings(self, lemma: str) -> tuple[Reading, ...]:
        return self._index.get(_nfc(lemma), ())

    def resolve(self, lemma: str, reading_id: str) -> Reading:
        matches = [r for r in self.readings(lemma) if reading_id in r.ids()]
        if not matches:
            raise UnresolvedReadingError(lemma, reading_id)
        if len(matches) > 1:
            exact = [r for r in matches if r.reading_id == reading_id]
            if len(exact) != 1:
                sources = ", ".join(str(r.source) for r in matches)
                raise UnresolvedReadingError(lemma, reading_id, f"ambiguous across {sources}")
            return exact[0]
        return matches[0]

    def query(
        self,
        lemma: str,
        *,
        reading_id: str | None = None,
        cls: InferentialClass | None = None,
        subcat: SubcatFrame | None = None,
        sip: bool | None = None,
        prefer: ClassingPreference = ClassingPreference.ANIM_FIRST,
    ) -> list[Reading]:
        out = []
        for r in self.readings(lemma):
            if reading_id is not None and reading_id not in r.ids():
                continue
            if subcat is not None and subcat not in r.subcat:
                continue
            if sip is not None and r.sip != sip:
                continue
            if cls is not None:
                sig = pfv_signature(r, prefer)
                if sig is None or classify(sig) is not cls:
                    continue
            out.append(r)
        return out


# -- TSV carrier ---------------------------------------------------------------

SIG_COLUMNS = {
    ContextKey.PFV_ANIM: "sig_pfv_anim",
    ContextKey.PFV_INANIM: "sig_pfv_inanim",
    ContextKey.IMP: "sig_imp",
}
COG_COLUMNS = {
    ContextKey.PFV_ANIM: "cog_pfv_anim",
    ContextKey.PFV_INANIM: "cog_pfv_inanim",
    ContextKey.IMP: "cog_imp",
}
COLUMNS = (
    ("lemma", "reading_id", "source", "gloss", "sip", "subcat")
    + tuple(SIG_COLUMNS.values())
    + tuple(COG_COLUMNS.values())
    + ("event_kinds",)
)
REQUIRED_COLUMNS = ("lemma", "reading_id", "source") + tuple(SIG_COLUMNS.values())

_TRUE = {"true", "1", "yes", "y"}
_FALSE = {"false", "0", "no", "n", ""}


class LexiconFormatError(ValueError):
    """The stream cannot be read as a lexicon at all."""


@dataclass(frozen=True)
class LineError:
    line: int
    reason: str

    def __str__(self) -> str:
        return f"line {self.line}: {self.reason}"


class RowError(ValueError):
    pass


def _parse_bool(text: str) -> bool:
    t = text.strip().lower()
    if t in _TRUE:
        return True
    if t in _FALSE:
        return False
    raise RowError(f"sip: expected true/false, got {text!r}")


def _parse_set(text: str, kind: type[enum.Enum], column: str) -> frozenset:
    items = [t.strip() for t in text.split("+") if t.strip()]
    try:
        return frozenset(kind(t) for t in items)
    except ValueError:
        valid = ", ".join(str(m) for m in kind)
        raise RowError(f"{column}: unknown value in {text!r} (valid: {valid})") from None


def _parse_slot(text: str, column: str) -> SignatureSlot:
    try:
        return parse_signature(text)
    except SignatureParseError as exc:
        raise RowError(f"{column}: {exc}") from None


def parse_row(row: Mapping[str, str]) -> Reading:
    def get(col: str) -> str:
        return (row.get(col) or "").strip()

    lemma = _nfc(get("lemma"))
    reading_id = get("reading_id")
    if not lemma:
        raise RowError("empty lemma")
    if not reading_id:
        raise RowError("empty reading_id")
    try:
        source = Source(get("source"))
    except ValueError:
        raise RowError(f"source: expected LVF, LGLEX or MERGED, got {get('source')!r}") from None
    slots = {k: _parse_slot(get(col), col) for k, col in SIG_COLUMNS.items()}
    cog_texts = {k: get(col) for k, col in COG_COLUMNS.items()}
    cogniser = None
    if any(cog_texts.values()):
        cogniser = {k: _parse_slot(t or "NA", COG_COLUMNS[k]) for k, t in cog_texts.items()}
    kinds = _parse_set(get("event_kinds"), EventKind, "event_kinds") or frozenset({EventKind.CLAUSE})
    reading = Reading(
        lemma=lemma,
        reading_id=reading_id,
        source=source,
        slots=slots,
        gloss=get("gloss"),
        sip=_parse_bool(get("sip")),
        subcat=_parse_set(get("subcat"), SubcatFrame, "subcat"),
        cogniser_slots=cogniser,
        event_kinds=kinds,
    )
    problems = reading.problems()
    if problems:
        raise RowError("; ".join(problems))
    return reading


def load_tsv(stream: IO[str]) -> tuple[Lexicon, list[LineError]]:
    """Read a lexicon from tab-separated text.

    Blank lines and lines starting with ``#`` are skipped.  Rows that fail to
    parse or violate a reading invariant are reported as ``LineError`` and
    left out; a missing or incomplete header raises ``LexiconFormatError``.
    """
    lines = stream.read().splitlines()
    content = [(i, ln) for i, ln in enumerate(lines, 1) if ln.strip() and not ln.startswith("#")]
    if not content:
        raise LexiconFormatError("no header row")
    header_no, header_line = content[0]
    header = [h.strip() for h in header_line.lstrip("﻿").split("\t")]
    missing = [c for c in REQUIRED_COLUMNS if c not in header]
    if missing:
        raise LexiconFormatError(f"line {header_no}: header lacks columns {', '.join(missing)}")
    unknown = [c for c in header if c not in COLUMNS]
    if unknown:
        raise LexiconFormatError(f"line {header_no}: unknown columns {', '.join(unknown)}")

    readings: list[Reading] = []
    errors: list[LineError] = []
    seen: dict[tuple, int] = {}
    for lineno, line in content[1:]:
        fields = next(csv.reader([line], delimiter="\t", quoting=csv.QUOTE_NONE))
        if len(fields) > len(header):
            errors.append(LineError(lineno, f"{len(fields)} fields, header has {len(header)}"))
            continue
        row = dict(zip(header, fields))
        try:
            reading = parse_row(row)
        except RowError as exc:
            errors.append(LineError(lineno, str(exc)))
            continue
        if reading.key in seen:
            errors.append(LineError(lineno, f"duplicate key {reading.label} ({reading.source}), first on line {seen[reading.key]}"))
            continue
        seen[reading.key] = lineno
        readings.append(reading)
    return Lexicon(readings), errors


def load_path(path: str | Path) -> tuple[Lexicon, list[LineError]]:
    with open(path, encoding="utf-8", newline="") as fh:
        return load_tsv(fh)


def load_seed() -> Lexicon:
    """The seed lexicon shipped with the package."""
    text = resources.files("factualis").joinpath("data/seed.tsv").read_text(encoding="utf-8")
    lex, errors = load_tsv(io.StringIO(text))
    if errors:  # pragma: no cover - guarded by the test suite
        raise LexiconFormatError("; ".join(map(str, errors)))
    return lex


def _sort_key(r: Reading) -> tuple[str, str, str]:
    return (r.lemma, r.reading_id, r.source.value)


def dump_tsv(entries: Iterable[Reading], stream: IO[str]) -> None:
    """Write readings in canonical column order, sorted by lemma/reading/source."""
    stream.write("\t".join(COLUMNS) + "\n")
    for r in sorted(entries, key=_sort_key):
        cog = r.cogniser_slots or {}
        row = [
            r.lemma,
            r.reading_id,
            str(r.source),
            r.gloss,
            "true" if r.sip else "false",
            _join(r.subcat),
            *(str(r.slots[k]) for k in SIG_COLUMNS),
            *(str(cog[k]) if k in cog else "" for k in COG_COLUMNS),
            _join(r.event_kinds),
        ]
        stream.write("\t".join(row) + "\n")


# -- merging -------------------------------------------------------------------


def _merge_key(r: Reading) -> tuple:
    return (_nfc(r.lemma), r.subcat, r.sip, r.slot_tuple(), r.cogniser_tuple())


def _provenance(r: Reading) -> tuple[str, ...]:
    return r.provenance or (f"{r.source}:{r.reading_id}",)


def merge_duplicates(entries: Iterable[Reading]) -> list[Reading]:
    """Collapse readings with identical lemma, subcat, SIP flag and slots.

    A group of two or more becomes one ``MERGED`` reading whose id joins the
    member ids with ``+`` and whose provenance lists every original
    ``SOURCE:id``.  Output is sorted by lemma then reading id.
    """
    groups: dict[tuple, list[Reading]] = defaultdict(list)
    for r in entries:
        groups[_merge_key(r)].append(r)
    out = []
    for members in groups.values():
        if len(members) == 1:
            out.append(members[0])
            continue
        members.sort(key=lambda r: (r.source.value, r.reading_id))
        prov = tuple(sorted({p for m in members for p in _provenance(m)}))
        glosses = []
        for m in members:
            if m.gloss and m.gloss not in glosses:
                glosses.append(m.gloss)
        base = members[0]
        out.append(
            replace(
                base,
                reading_id="+".join(p.split(":", 1)[1] for p in prov),
                source=Source.MERGED,
                gloss="; ".join(glosses),
                event_kinds=frozenset().union(*(m.event_kinds for m in members)),
                provenance=prov,
            )
        )
    out.sort(key=_sort_key)
    return out


# -- validation ----------------------------------------------------------------


class Severity(enum.Enum):
    ERROR = "error"
    WARNING = "warning"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Issue:
    severity: Severity
    reading: str
    message: str

    def __str__(self) -> str:
        return f"{self.severity}: {self.reading}: {self.message}"


@dataclass
class ValidationReport:
    issues: list[Issue] = field(default_factory=list)
    # per context: counts of "signature", "NA", "UNGR"
    counts: dict[ContextKey, Counter] = field(default_factory=dict)
    n_readings: int = 0

    @property
    def errors(self) -> list[Issue]:
        return [i for i in self.issues if i.severity is Severity.ERROR]

    @property
    def warnings(self) -> list[Issue]:
        return [i for i in self.issues if i.severity is Severity.WARNING]

    @property
    def ok(self) -> bool:
        return not self.errors

    def render(self) -> str:
        lines = [f"{self.n_readings} readings, {len(self.errors)} errors, {len(self.warnings)} warnings"]
        for key in ContextKey:
            c = self.counts.get(key, Counter())
            lines.append(f"  {key}: signature={c['signature']} NA={c['NA']} UNGR={c['UNGR']}")
        lines.extend(f"  {i}" for i in self.issues)
        return "\n".join(lines)


def validate(lex: Lexicon | Iterable[Reading]) -> ValidationReport:
    entries = list(lex)
    report = ValidationReport(n_readings=len(entries), counts={k: Counter() for k in ContextKey})
    seen: set[tuple] = set()
    by_frame: dict[tuple, list[Reading]] = defaultdict(list)
    for r in entries:
        for problem in r.problems():
            report.issues.append(Issue(Severity.ERROR, r.label, problem))
        if r.key in seen:
            report.issues.append(Issue(Severity.ERROR, r.label, f"duplicate key ({r.source})"))
        seen.add(r.key)
        for k in ContextKey:
            slot = r.slots.get(k)
            if slot is None:
                continue
            report.counts[k]["signature" if isinstance(slot, Signature) else str(slot)] += 1
        imp = r.slots.get(ContextKey.IMP)
        pfv = [r.slots.get(k) for k in (ContextKey.PFV_ANIM, ContextKey.PFV_INANIM)]
        if isinstance(imp, Signature) and all(isinstance(s, SlotMarker) for s in pfv):
            report.issues.append(
                Issue(Severity.WARNING, r.label, "suspicious: imperfective signature without any perfective one")
            )
        by_frame[(_nfc(r.lemma), r.subcat, r.sip)].append(r)
    for (lemma, subcat, _), group in sorted(by_frame.items(), key=lambda kv: (kv[0][0], _join(kv[0][1]))):
        variants = {r.slot_tuple() for r in group}
        if len(group) > 1 and len(variants) > 1:
            ids = ", ".join(sorted(r.reading_id for r in group))
            report.issues.append(
                Issue(Severity.WARNING, lemma, f"near-duplicates with frame {_join(subcat) or '-'} and differing signatures: {ids}")
            )
    return report
