"""Clause-embedding expressions and factuality projection through them.

Expression syntax::

    expr   := esp | event
    esp    := ["neg"] LEMMA ":" READING "[" attrs "]" "(" expr ")"
    attrs  := aspect ["," anim] ["," "mod=" (ct|pr|ps)] ["," "src=" LABEL]
    event  := "E" "(" LABEL ")" | "NP" "(" LABEL ")"

Attributes may come in any order but each only once.  ``src`` names the
cogniser introduced by a source-introducing reading (defaults to
``lemma:reading``).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, replace
from typing import Union

from .algebra import PAPER_MAPPING, DegreeMapping, lookup_factuality
from .core import (
    CT_POS,
    UU,
    Animacy,
    Aspect,
    CertaintyDegree,
    FactualityValue,
    Polarity,
)
from .lexicon import (
    AmbiguousSlotError,
    EventKind,
    Lexicon,
    SlotUnavailableError,
    UnresolvedReadingError,
    select_slot,
)

__all__ = [
    "EventNode",
    "EspNode",
    "ClauseNode",
    "ClauseSyntaxError",
    "ProjectionError",
    "SourceChain",
    "FactualityProfile",
    "parse_clause",
    "format_clause",
    "contextual_factuality",
    "combine",
    "project",
    "render_profiles",
    "project_text",
]


@dataclass(frozen=True)
class EventNode:
    label: str
    kind: EventKind = EventKind.CLAUSE


@dataclass(frozen=True)
class EspNode:
    lemma: str
    reading_id: str
    child: ClauseNode
    negated: bool = False
    modality: CertaintyDegree = CertaintyDegree.CT
    aspect: Aspect = Aspect.PFV
    animacy: Animacy = Animacy.UNKNOWN
    source_label: str | None = None

    def __post_init__(self) -> None:
        if self.modality is CertaintyDegree.U:
            raise ValueError("U is not a modality marker")

    @property
    def label(self) -> str:
        return f"{self.lemma}:{self.reading_id}"


ClauseNode = Union[EventNode, EspNode]


class ClauseSyntaxError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}: {text[:position]}⟨here⟩{text[position:]}")
        self.text = text
        self.position = position


# -- parsing -------------------------------------------------------------------

_PUNCT = set(":[](),=")


def _is_ident_char(ch: str) -> bool:
    return ch.isalnum() or ch in "_-"


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in _PUNCT:
            tokens.append((ch, ch, i))
            i += 1
        elif _is_ident_char(ch):
            j = i
            while j < len(text) and _is_ident_char(text[j]):
                j += 1
            tokens.append(("ident", text[i:j], i))
            i = j
        else:
            raise ClauseSyntaxError(f"unexpected character {ch!r}", text, i)
    tokens.append(("eof", "", len(text)))
    return tokens


_ASPECTS = {"pfv": Aspect.PFV, "imp": Aspect.IMP}
_ANIMACY = {"anim": Animacy.ANIM, "inanim": Animacy.INANIM}
_MODES = {"ct": CertaintyDegree.CT, "pr": CertaintyDegree.PR, "ps": CertaintyDegree.PS}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self, offset: int = 0) -> tuple[str, str, int]:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def error(self, message: str, tok: tuple[str, str, int] | None = None) -> ClauseSyntaxError:
        tok = tok or self.peek()
        return ClauseSyntaxError(message, self.text, tok[2])

    def expect(self, kind: str, what: str | None = None) -> str:
        tok = self.peek()
        if tok[0] != kind:
            found = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise self.error(f"expected {what or repr(kind)}, found {found}")
        self.pos += 1
        return tok[1]

    def parse(self) -> ClauseNode:
        node = self.expr()
        self.expect("eof", "end of input")
        return node

    def expr(self) -> ClauseNode:
        first = self.peek()
        name = self.expect("ident", "a lemma or event")
        negated = False
        if name == "neg" and self.peek()[0] == "ident":
            negated = True
            first = self.peek()
            name = self.expect("ident", "a lemma")
            if name == "neg":
                raise self.error("double negation is not allowed", first)
        if self.peek()[0] == "(" and name in ("E", "NP"):
            if negated:
                raise self.error("negation applies to ESPs, not events", first)
            self.expect("(")
            label = self.expect("ident", "an event label")
            self.expect(")")
            return EventNode(label, EventKind.CLAUSE if name == "E" else EventKind.EVENT_NP)
        self.expect(":", "':' after lemma")
        reading_id = self.expect("ident", "a reading id")
        self.expect("[")
        attrs = self.attrs()
        self.expect("]")
        self.expect("(")
        child = self.expr()
        self.expect(")")
        return EspNode(lemma=name, reading_id=reading_id, child=child, negated=negated, **attrs)

    def attrs(self) -> dict:
        out: dict = {}
        start = self.peek()

        def put(key: str, value: object, tok: tuple[str, str, int]) -> None:
            if key in out:
                raise self.error(f"duplicate attribute {key}", tok)
            out[key] = value

        while True:
            tok = self.peek()
            name = self.expect("ident", "an attribute")
            if self.peek()[0] == "=":
                self.expect("=")
                vtok = self.peek()
                value = self.expect("ident", f"a value for {name}")
                if name == "mod":
                    if value not in _MODES:
                        raise self.error(f"unknown modality {value!r} (expected ct, pr or ps)", vtok)
                    put("modality", _MODES[value], tok)
                elif name == "src":
                    put("source_label", value, tok)
                else:
                    raise self.error(f"unknown attribute {name!r}", tok)
            elif name in _ASPECTS:
                put("aspect", _ASPECTS[name], tok)
            elif name in _ANIMACY:
                put("animacy", _ANIMACY[name], tok)
            else:
                raise self.error(f"unknown attribute value {name!r}", tok)
            if self.peek()[0] != ",":
                break
            self.expect(",")
        if "aspect" not in out:
            raise self.error("missing aspect (pfv or imp)", start)
        return out


def parse_clause(text: str) -> ClauseNode:
    return _Parser(text).parse()


def format_clause(node: ClauseNode) -> str:
    """Canonical text for ``node``; ``parse_clause`` inverts it."""
    if isinstance(node, EventNode):
        return f"{'E' if node.kind is EventKind.CLAUSE else 'NP'}({node.label})"
    attrs = [str(node.aspect)]
    if node.animacy is not Animacy.UNKNOWN:
        attrs.append(str(node.animacy))
    if node.modality is not CertaintyDegree.CT:
        attrs.append(f"mod={node.modality.name.lower()}")
    if node.source_label is not None:
        attrs.append(f"src={node.source_label}")
    neg = "neg " if node.negated else ""
    return f"{neg}{node.label}[{','.join(attrs)}]({format_clause(node.child)})"


# -- projection ----------------------------------------------------------------


@dataclass(frozen=True)
class SourceChain:
    sources: tuple[str, ...] = ("author",)

    def __post_init__(self) -> None:
        if not self.sources or self.sources[0] != "author":
            raise ValueError("a source chain starts with 'author'")

    def extend(self, label: str) -> SourceChain:
        return SourceChain(self.sources + (label,))

    def __str__(self) -> str:
        return ">".join(self.sources)


ANCHOR = SourceChain()


@dataclass(frozen=True)
class FactualityProfile:
    event_label: str
    assignments: tuple[tuple[SourceChain, FactualityValue], ...]
    kind: str = "clause"  # "esp", "clause" or "eventNP"

    def value(self, chain: SourceChain | str = ANCHOR) -> FactualityValue:
        key = str(chain)
        for c, v in self.assignments:
            if str(c) == key:
                return v
        raise KeyError(key)


class ProjectionError(ValueError):
    def __init__(self, node: EspNode, depth: int, reason: str):
        super().__init__(f"at {format_clause(replace(node, child=EventNode('…')))} (depth {depth}): {reason}")
        self.node = node
        self.depth = depth
        self.reason = reason


def contextual_factuality(node: EspNode | None) -> FactualityValue:
    """The local context set by a node's own polarity and modality markers."""
    if node is None:
        return CT_POS
    polarity = Polarity.NEGATIVE if node.negated else Polarity.POSITIVE
    return FactualityValue(node.modality, polarity)


def combine(context: FactualityValue, local: FactualityValue) -> FactualityValue:
    """Polarities multiply, degrees take the weaker; anything with U is Uu."""
    degree = min(context.degree, local.degree)
    if degree is CertaintyDegree.U:
        return UU
    return FactualityValue(degree, context.polarity * local.polarity)


def project(
    lex: Lexicon,
    tree: ClauseNode,
    *,
    mapping: DegreeMapping = PAPER_MAPPING,
    pfv_unknown: str = "weaker",
) -> list[FactualityProfile]:
    """Factuality profiles for every node of ``tree``, outermost first.

    Each profile lists one value per active source chain.  A source
    introducing reading forks every chain: the chain itself continues with
    the reading's anchor signature, and a chain extended by the cogniser
    gets the cogniser signature's result (Uu when none is recorded).
    A cogniser label repeated further down the tree is numbered so that
    every chain in a profile is distinct.
    """
    profiles: list[FactualityProfile] = []
    chains: list[tuple[SourceChain, FactualityValue]] = [(ANCHOR, CT_POS)]
    label_uses: Counter = Counter()
    node = tree
    depth = 0
    while isinstance(node, EspNode):
        try:
            reading = lex.resolve(node.lemma, node.reading_id)
            sig = select_slot(reading, node.aspect, node.animacy, pfv_unknown)
        except (UnresolvedReadingError, SlotUnavailableError, AmbiguousSlotError) as exc:
            raise ProjectionError(node, depth, str(exc)) from exc
        cog_sig = None
        if reading.sip and reading.cogniser_slots is not None:
            try:
                cog_sig = select_slot(
                    replace(reading, slots=reading.cogniser_slots),
                    node.aspect,
                    node.animacy,
                    pfv_unknown,
                )
            except (SlotUnavailableError, AmbiguousSlotError):
                cog_sig = None
        cog_label = node.source_label or node.label
        if reading.sip:
            # each occurrence is a distinct source; repeats get "#2", "#3", ...
            label_uses[cog_label] += 1
            if label_uses[cog_label] > 1:
                cog_label = f"{cog_label}#{label_uses[cog_label]}"

        local = contextual_factuality(node)
        here = [(chain, combine(value, local)) for chain, value in chains]
        profiles.append(FactualityProfile(node.label, tuple(here), "esp"))

        chains = []
        for chain, value in here:
            chains.append((chain, lookup_factuality(sig, value, mapping)))
            if reading.sip:
                cog_value = UU if cog_sig is None else lookup_factuality(cog_sig, value, mapping)
                chains.append((chain.extend(cog_label), cog_value))
        node = node.child
        depth += 1
    profiles.append(FactualityProfile(node.label, tuple(chains), str(node.kind)))
    return profiles


def render_profiles(profiles: list[FactualityProfile], sep: str = "\t") -> str:
    return "\n".join(
        sep.join((p.event_label, str(chain), str(value)))
        for p in profiles
        for chain, value in p.assignments
    )


def project_text(lex: Lexicon, text: str, **kwargs) -> str:
    return render_profiles(project(lex, parse_clause(text), **kwargs))
