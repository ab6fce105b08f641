"""Shared value vocabulary: factuality values, inference values, signatures.

Every type here is an immutable value.  The textual forms produced by
``str()`` ("CT+", "0.9|n", "NA", ...) are the canonical wire format used
by the lexicon files and the CLI.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from typing import Union

__all__ = [
    "Polarity",
    "CertaintyDegree",
    "FactualityValue",
    "InferenceValue",
    "NEUTRAL",
    "SCALE",
    "Signature",
    "SlotMarker",
    "SignatureSlot",
    "ContextKey",
    "Aspect",
    "Animacy",
    "InferentialClass",
    "SignatureParseError",
    "parse_signature",
    "format_signature",
]

# U+2212 shows up when values are pasted from typeset tables.
_MINUS_SIGNS = str.maketrans({"−": "-", "–": "-"})


class Polarity(enum.Enum):
    POSITIVE = "+"
    NEGATIVE = "-"
    UNKNOWN = "u"

    def __str__(self) -> str:
        return self.value

    def __mul__(self, other: Polarity) -> Polarity:
        if not isinstance(other, Polarity):
            return NotImplemented
        if Polarity.UNKNOWN in (self, other):
            return Polarity.UNKNOWN
        return Polarity.POSITIVE if self is other else Polarity.NEGATIVE

    def flip(self) -> Polarity:
        if self is Polarity.POSITIVE:
            return Polarity.NEGATIVE
        if self is Polarity.NEGATIVE:
            return Polarity.POSITIVE
        return self

    @classmethod
    def parse(cls, text: str) -> Polarity:
        return cls(text.translate(_MINUS_SIGNS))


class CertaintyDegree(enum.IntEnum):
    """Certainty degrees, ordered by strength so ``min`` gives the weaker one."""

    U = 0
    PS = 1
    PR = 2
    CT = 3

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class FactualityValue:
    """A degree/polarity pair.  ``U`` only pairs with unknown polarity."""

    degree: CertaintyDegree
    polarity: Polarity

    def __post_init__(self) -> None:
        if not isinstance(self.degree, CertaintyDegree):
            raise TypeError(f"degree must be a CertaintyDegree, got {self.degree!r}")
        if not isinstance(self.polarity, Polarity):
            raise TypeError(f"polarity must be a Polarity, got {self.polarity!r}")
        if self.degree is CertaintyDegree.U and self.polarity is not Polarity.UNKNOWN:
            raise ValueError(f"U{self.polarity} is not a factuality value (only Uu)")

    def __str__(self) -> str:
        return f"{self.degree}{self.polarity}"

    @classmethod
    def parse(cls, text: str) -> FactualityValue:
        text = text.strip().translate(_MINUS_SIGNS)
        m = re.fullmatch(r"(CT|PR|PS|U)([+\-u])", text)
        if m is None:
            raise ValueError(f"not a factuality value: {text!r}")
        return cls(CertaintyDegree[m.group(1)], Polarity(m.group(2)))

    @classmethod
    def all_values(cls) -> tuple[FactualityValue, ...]:
        """The ten licit values, strongest degree first."""
        out = [
            cls(d, p)
            for d in (CertaintyDegree.CT, CertaintyDegree.PR, CertaintyDegree.PS)
            for p in Polarity
        ]
        out.append(cls(CertaintyDegree.U, Polarity.UNKNOWN))
        return tuple(out)


CT_POS = FactualityValue(CertaintyDegree.CT, Polarity.POSITIVE)
UU = FactualityValue(CertaintyDegree.U, Polarity.UNKNOWN)

_SCALE_TENTHS = frozenset({6, 7, 8, 9, 10})


class SignatureParseError(ValueError):
    def __init__(self, message: str, text: str, token: str, position: int):
        super().__init__(f"{message}: {token!r} at position {position} in {text!r}")
        self.text = text
        self.token = token
        self.position = position


@dataclass(frozen=True)
class InferenceValue:
    """One side of a signature: ``n`` or a signed magnitude on the 0.6..1 scale.

    Stored in signed tenths (``-9`` is -0.9) so equality is exact; ``None``
    is the neutral value, which counts as magnitude 0 in comparisons.
    """

    tenths: int | None = None

    def __post_init__(self) -> None:
        if self.tenths is not None and abs(self.tenths) not in _SCALE_TENTHS:
            raise ValueError(f"magnitude off scale: {self.tenths / 10}")

    @property
    def is_neutral(self) -> bool:
        return self.tenths is None

    @property
    def strength(self) -> int:
        """Magnitude in tenths; 0 for neutral."""
        return 0 if self.tenths is None else abs(self.tenths)

    @property
    def magnitude(self) -> float:
        return self.strength / 10

    @property
    def sign(self) -> int:
        if self.tenths is None:
            return 0
        return 1 if self.tenths > 0 else -1

    def negate(self) -> InferenceValue:
        return self if self.tenths is None else InferenceValue(-self.tenths)

    def __str__(self) -> str:
        if self.tenths is None:
            return "n"
        if abs(self.tenths) == 10:
            return "1" if self.tenths > 0 else "-1"
        sign = "-" if self.tenths < 0 else ""
        return f"{sign}0.{abs(self.tenths)}"

    @classmethod
    def parse(cls, token: str) -> InferenceValue:
        """Parse ``n``, ``1``, ``-0.9``, ``.9`` ...; raises ValueError off scale."""
        token = token.translate(_MINUS_SIGNS)
        if token == "n":
            return NEUTRAL
        if not re.fullmatch(r"[+-]?(\d+(\.\d*)?|\.\d+)", token):
            raise ValueError(f"not an inference value: {token!r}")
        try:
            scaled = Decimal(token) * 10
        except InvalidOperation as exc:  # pragma: no cover - regex guards this
            raise ValueError(f"not an inference value: {token!r}") from exc
        if scaled != scaled.to_integral_value() or abs(int(scaled)) not in _SCALE_TENTHS:
            raise ValueError(f"magnitude off scale: {token!r}")
        return cls(int(scaled))


NEUTRAL = InferenceValue(None)

#: All eleven values of the annotation scale, from -1 to 1 with ``n`` in the middle.
SCALE: tuple[InferenceValue, ...] = (
    tuple(InferenceValue(-t) for t in (10, 9, 8, 7, 6))
    + (NEUTRAL,)
    + tuple(InferenceValue(t) for t in (6, 7, 8, 9, 10))
)


@dataclass(frozen=True)
class Signature:
    """Inference under positive ESP polarity and under negative ESP polarity."""

    pos: InferenceValue
    neg: InferenceValue

    def __str__(self) -> str:
        return f"{self.pos}|{self.neg}"

    def swap(self) -> Signature:
        return Signature(self.neg, self.pos)

    @property
    def strengths(self) -> tuple[int, int]:
        return (self.pos.strength, self.neg.strength)

    @classmethod
    def parse(cls, text: str) -> Signature:
        slot = parse_signature(text)
        if not isinstance(slot, Signature):
            raise SignatureParseError("expected a signature", text, str(slot), 0)
        return slot


class SlotMarker(enum.Enum):
    NA = "NA"  # context not applicable to the reading
    UNGR = "UNGR"  # context yields an ungrammatical sentence

    def __str__(self) -> str:
        return self.value


SignatureSlot = Union[Signature, SlotMarker]


class ContextKey(enum.Enum):
    PFV_ANIM = "pfv_anim"
    PFV_INANIM = "pfv_inanim"
    IMP = "imp"

    def __str__(self) -> str:
        return self.value


class Aspect(enum.Enum):
    PFV = "pfv"
    IMP = "imp"

    def __str__(self) -> str:
        return self.value


class Animacy(enum.Enum):
    ANIM = "anim"
    INANIM = "inanim"
    UNKNOWN = "unknown"

    def __str__(self) -> str:
        return self.value


class InferentialClass(enum.Enum):
    TWO_WAY_IMPLICATIVE = "two_way_implicative"
    ONE_WAY_PLUS_IMPLICATIVE = "one_way_plus_implicative"
    ONE_WAY_MINUS_IMPLICATIVE = "one_way_minus_implicative"
    FACTIVE = "factive"
    COUNTER_FACTIVE = "counter_factive"
    TWO_WAY_QUASI_IMPLICATIVE = "two_way_quasi_implicative"
    ONE_WAY_QUASI_IMPLICATIVE = "one_way_quasi_implicative"
    NEUTRAL = "neutral"

    def __str__(self) -> str:
        return self.value


def parse_signature(text: str) -> SignatureSlot:
    """Parse a signature slot: ``NA``, ``UNGR`` or ``<value>|<value>``."""
    raw = text
    stripped = text.strip()
    offset = len(text) - len(text.lstrip())
    if not stripped:
        raise SignatureParseError("empty signature", raw, "", 0)
    if stripped in ("NA", "UNGR"):
        return SlotMarker(stripped)
    parts = stripped.split("|")
    if len(parts) != 2:
        bar = stripped.find("|", stripped.find("|") + 1)
        pos = offset + (bar if bar >= 0 else 0)
        token = "|" if bar >= 0 else stripped
        raise SignatureParseError("expected exactly one '|'", raw, token, pos)
    values = []
    start = offset
    for part in parts:
        token = part.strip()
        pos = start + (len(part) - len(part.lstrip()))
        if not token:
            raise SignatureParseError("missing value", raw, token, pos)
        try:
            values.append(InferenceValue.parse(token))
        except ValueError as exc:
            reason = "magnitude off scale" if "off scale" in str(exc) else "bad value"
            raise SignatureParseError(reason, raw, token, pos) from None
        start += len(part) + 1
    return Signature(values[0], values[1])


def format_signature(slot: SignatureSlot) -> str:
    return str(slot)
