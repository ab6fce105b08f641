"""Classification, strength scoring and factuality lookup for signatures."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

from .core import (
    UU,
    CertaintyDegree,
    FactualityValue,
    InferenceValue,
    InferentialClass,
    Polarity,
    Signature,
    SignatureSlot,
    SlotMarker,
)

__all__ = [
    "DegreeMapping",
    "PAPER_MAPPING",
    "FINE_MAPPING",
    "Comparison",
    "NotComparableError",
    "classify",
    "is_factive",
    "is_implicative",
    "strength_level",
    "compare_strength",
    "lookup_factuality",
    "GRID_COLUMNS",
    "generate_grid",
    "format_grid",
]

MAX = 10
STRONG = 9


def _effective(v: InferenceValue) -> int:
    # 0.6..0.8 count as no inference for classification purposes
    s = v.strength
    return s if s >= STRONG else 0


def classify(sig: Signature) -> InferentialClass:
    p, n = sig.pos, sig.neg
    ep, en = _effective(p), _effective(n)
    if ep == MAX and en == MAX:
        if p.sign == n.sign:
            return InferentialClass.FACTIVE if p.sign > 0 else InferentialClass.COUNTER_FACTIVE
        return InferentialClass.TWO_WAY_IMPLICATIVE
    if ep == MAX:
        return InferentialClass.ONE_WAY_PLUS_IMPLICATIVE
    if en == MAX:
        return InferentialClass.ONE_WAY_MINUS_IMPLICATIVE
    if ep == STRONG and en == STRONG:
        return InferentialClass.TWO_WAY_QUASI_IMPLICATIVE
    if STRONG in (ep, en):
        return InferentialClass.ONE_WAY_QUASI_IMPLICATIVE
    return InferentialClass.NEUTRAL


def is_factive(sig: Signature) -> bool:
    """True for ``1|1`` and ``-1|-1`` (counter-factives included)."""
    return sig.pos.strength == MAX and sig.pos.tenths == sig.neg.tenths


def is_implicative(sig: Signature) -> bool:
    return not is_factive(sig) and MAX in sig.strengths


def strength_level(slot: SignatureSlot) -> int:
    """Strength of inference on the 0..5 scale (0 for NA/UNGR, 1 for neutral)."""
    if isinstance(slot, SlotMarker):
        return 0
    ep, en = _effective(slot.pos), _effective(slot.neg)
    if ep == MAX and en == MAX:
        return 5
    if MAX in (ep, en):
        return 4
    if ep == STRONG and en == STRONG:
        return 3
    if STRONG in (ep, en):
        return 2
    return 1


class Comparison(enum.Enum):
    WEAKER = "weaker"
    STRONGER = "stronger"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"

    def __str__(self) -> str:
        return self.value


class NotComparableError(ValueError):
    def __init__(self, marker: SlotMarker):
        super().__init__(f"{marker} slot has no strength to compare")
        self.marker = marker


def compare_strength(a: SignatureSlot, b: SignatureSlot) -> Comparison:
    """Compare ``a`` against ``b`` by componentwise magnitude (neutral = 0)."""
    for slot in (a, b):
        if isinstance(slot, SlotMarker):
            raise NotComparableError(slot)
    va, vb = a.strengths, b.strengths
    if va == vb:
        return Comparison.EQUAL
    if all(x <= y for x, y in zip(va, vb)):
        return Comparison.WEAKER
    if all(x >= y for x, y in zip(va, vb)):
        return Comparison.STRONGER
    return Comparison.INCOMPARABLE


@dataclass(frozen=True)
class DegreeMapping:
    """Maps inference magnitudes (in tenths, 0 = neutral) to certainty degrees."""

    name: str
    table: Mapping[int, CertaintyDegree] = field(repr=False)

    def __post_init__(self) -> None:
        keys = {0, 6, 7, 8, 9, 10}
        if set(self.table) != keys:
            raise ValueError(f"mapping must cover magnitudes {sorted(keys)}")
        ordered = [self.table[k] for k in sorted(keys)]
        if any(a > b for a, b in zip(ordered, ordered[1:])):
            raise ValueError("mapping must be monotone in magnitude")
        if self.table[0] is not CertaintyDegree.U:
            raise ValueError("neutral must map to U")
        object.__setattr__(self, "table", MappingProxyType(dict(self.table)))

    def __call__(self, value: InferenceValue | int) -> CertaintyDegree:
        strength = value.strength if isinstance(value, InferenceValue) else value
        return self.table[strength]

    @classmethod
    def from_mode(cls, mode: str) -> DegreeMapping:
        try:
            return _MODES[mode]
        except KeyError:
            raise ValueError(f"unknown mapping mode {mode!r}; expected one of {sorted(_MODES)}") from None


_U, _PS, _PR, _CT = CertaintyDegree.U, CertaintyDegree.PS, CertaintyDegree.PR, CertaintyDegree.CT

PAPER_MAPPING = DegreeMapping("paper", {0: _U, 6: _U, 7: _U, 8: _U, 9: _PR, 10: _CT})
FINE_MAPPING = DegreeMapping("fine", {0: _U, 6: _PS, 7: _PS, 8: _PS, 9: _PR, 10: _CT})
_MODES = {m.name: m for m in (PAPER_MAPPING, FINE_MAPPING)}


def _polarity_of(v: InferenceValue) -> Polarity:
    return Polarity.POSITIVE if v.sign > 0 else Polarity.NEGATIVE


def lookup_factuality(
    sig: Signature,
    context: FactualityValue,
    mapping: DegreeMapping = PAPER_MAPPING,
) -> FactualityValue:
    """Factuality of the embedded event given the ESP's contextual factuality."""
    if context.degree is CertaintyDegree.U:
        return UU
    if context.polarity is Polarity.UNKNOWN:
        if sig.pos.is_neutral and sig.neg.is_neutral:
            return UU
        degree = min(context.degree, mapping(max(sig.strengths)))
        polarity = Polarity.UNKNOWN
    else:
        component = sig.pos if context.polarity is Polarity.POSITIVE else sig.neg
        if component.is_neutral:
            return UU
        degree = min(context.degree, mapping(component))
        polarity = _polarity_of(component)
    if degree is CertaintyDegree.U:
        return UU
    return FactualityValue(degree, polarity)


#: Column headers of a grid row, in the order of the classic NSIP table.
GRID_COLUMNS: tuple[tuple[CertaintyDegree, Polarity], ...] = tuple(
    (d, p) for d in (_CT, _PR, _PS, _U) for p in Polarity
)


def generate_grid(
    sig: Signature, mapping: DegreeMapping = PAPER_MAPPING
) -> list[FactualityValue]:
    """The twelve factuality cells for ``sig``; all three U columns act as Uu."""
    row = []
    for degree, polarity in GRID_COLUMNS:
        ctx = UU if degree is _U else FactualityValue(degree, polarity)
        row.append(lookup_factuality(sig, ctx, mapping))
    return row


def format_grid(row: list[FactualityValue], sep: str = "\t") -> str:
    return sep.join(str(v) for v in row)
