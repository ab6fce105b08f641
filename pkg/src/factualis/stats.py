"""Lexicon-level aggregates: strength histogram, aspect and animacy effects,
subcategorisation cross-tabulation."""

from __future__ import annotations

import enum
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable

from .algebra import Comparison, compare_strength, is_factive, is_implicative, strength_level
from .core import ContextKey, Signature
from .lexicon import ClassingPreference, Reading, SubcatFrame, pfv_signature

__all__ = [
    "strength_histogram",
    "StrengthHistogram",
    "AspectDependenceReport",
    "ClassChange",
    "aspect_dependence",
    "WeakeningReport",
    "imperfective_weakening",
    "mean_strength_by_context",
    "format_mean",
    "Verdict",
    "animacy_comparison",
    "factive_animacy_restriction",
    "CrosstabColumn",
    "CrosstabReport",
    "subcat_crosstab",
]


def pct(part: int, whole: int) -> float:
    return 100.0 * part / whole if whole else 0.0


@dataclass
class StrengthHistogram:
    per_context: dict[ContextKey, Counter]

    @property
    def overall(self) -> Counter:
        total: Counter = Counter({lvl: 0 for lvl in range(6)})
        for c in self.per_context.values():
            total.update(c)
        return total

    @property
    def total(self) -> int:
        return sum(self.overall.values())


def strength_histogram(lex: Iterable[Reading]) -> StrengthHistogram:
    per = {k: Counter({lvl: 0 for lvl in range(6)}) for k in ContextKey}
    for r in lex:
        for k in ContextKey:
            per[k][strength_level(r.slots[k])] += 1
    return StrengthHistogram(per)


def _with_imp(lex: Iterable[Reading], prefer: ClassingPreference):
    """Readings with both a classing perfective signature and an imperfective one."""
    for r in lex:
        pfv = pfv_signature(r, prefer)
        imp = r.slots[ContextKey.IMP]
        if pfv is not None and isinstance(imp, Signature):
            yield r, pfv, imp


@dataclass
class ClassChange:
    n_with_both_signatures: int = 0
    n_changed: int = 0

    @property
    def pct_changed(self) -> float:
        return pct(self.n_changed, self.n_with_both_signatures)


@dataclass
class AspectDependenceReport:
    factive: ClassChange = field(default_factory=ClassChange)
    implicative: ClassChange = field(default_factory=ClassChange)
    classing: ClassingPreference = ClassingPreference.ANIM_FIRST


def aspect_dependence(
    lex: Iterable[Reading], prefer: ClassingPreference = ClassingPreference.ANIM_FIRST
) -> AspectDependenceReport:
    report = AspectDependenceReport(classing=prefer)
    for _, pfv, imp in _with_imp(lex, prefer):
        if is_factive(pfv):
            bucket = report.factive
        elif is_implicative(pfv):
            bucket = report.implicative
        else:
            continue
        bucket.n_with_both_signatures += 1
        bucket.n_changed += imp != pfv
    return report


@dataclass
class WeakeningReport:
    n_weaker: int = 0
    n_stronger: int = 0
    n_unchanged: int = 0
    n_incomparable: int = 0
    classing: ClassingPreference = ClassingPreference.ANIM_FIRST

    @property
    def population(self) -> int:
        return self.n_weaker + self.n_stronger + self.n_unchanged + self.n_incomparable

    @property
    def comparable(self) -> int:
        return self.n_weaker + self.n_stronger + self.n_unchanged

    @property
    def pct_weaker(self) -> float:
        return pct(self.n_weaker, self.comparable)

    @property
    def pct_stronger(self) -> float:
        return pct(self.n_stronger, self.comparable)

    @property
    def pct_unchanged(self) -> float:
        return pct(self.n_unchanged, self.comparable)


def imperfective_weakening(
    lex: Iterable[Reading], prefer: ClassingPreference = ClassingPreference.ANIM_FIRST
) -> WeakeningReport:
    """Bucket perfective-implicative readings by how the imperfective compares.

    "Unchanged" means identical signatures.  A changed signature with the same
    magnitudes (say ``1|-1`` against ``-1|1``) counts as incomparable.
    """
    report = WeakeningReport(classing=prefer)
    for _, pfv, imp in _with_imp(lex, prefer):
        if not is_implicative(pfv):
            continue
        if imp == pfv:
            report.n_unchanged += 1
            continue
        cmp = compare_strength(imp, pfv)
        if cmp is Comparison.WEAKER:
            report.n_weaker += 1
        elif cmp is Comparison.STRONGER:
            report.n_stronger += 1
        else:
            report.n_incomparable += 1
    return report


def mean_strength_by_context(lex: Iterable[Reading]) -> dict[ContextKey, float | None]:
    """Mean strength level over annotated slots (levels 1-5); None if none."""
    levels: dict[ContextKey, list[int]] = {k: [] for k in ContextKey}
    for r in lex:
        for k in ContextKey:
            lvl = strength_level(r.slots[k])
            if lvl:
                levels[k].append(lvl)
    return {k: (sum(v) / len(v) if v else None) for k, v in levels.items()}


def format_mean(value: float | None, decimal_separator: str = ".") -> str:
    if value is None:
        return "-"
    return f"{value:.2f}".replace(".", decimal_separator)


class Verdict(enum.Enum):
    INANIMATE_STRONGER = "inanimate_stronger"
    ANIMATE_STRONGER = "animate_stronger"
    TIE = "tie"

    def __str__(self) -> str:
        return self.value


def animacy_comparison(lex: Iterable[Reading]) -> dict[str, Verdict]:
    """Per lemma, compare the strongest perfective level with each subject type.

    Only lemmas with a signature on both sides (possibly from different
    readings) are included.
    """
    best: dict[str, dict[ContextKey, int]] = defaultdict(dict)
    for r in lex:
        for k in (ContextKey.PFV_ANIM, ContextKey.PFV_INANIM):
            slot = r.slots[k]
            if isinstance(slot, Signature):
                side = best[r.lemma]
                side[k] = max(side.get(k, 0), strength_level(slot))
    out = {}
    for lemma in sorted(best):
        side = best[lemma]
        if len(side) < 2:
            continue
        a, i = side[ContextKey.PFV_ANIM], side[ContextKey.PFV_INANIM]
        if i > a:
            out[lemma] = Verdict.INANIMATE_STRONGER
        elif a > i:
            out[lemma] = Verdict.ANIMATE_STRONGER
        else:
            out[lemma] = Verdict.TIE
    return out


def factive_animacy_restriction(lex: Iterable[Reading]) -> tuple[int, int]:
    n_factive = n_inanim = 0
    for r in lex:
        anim = r.slots[ContextKey.PFV_ANIM]
        if isinstance(anim, Signature) and is_factive(anim):
            n_factive += 1
            n_inanim += isinstance(r.slots[ContextKey.PFV_INANIM], Signature)
    return n_factive, n_inanim


@dataclass
class CrosstabColumn:
    population: int = 0
    n_inf: int = 0
    n_que: int = 0
    n_inf_only: int = 0  # +INF -QUE
    n_que_only: int = 0  # -INF +QUE

    def add(self, subcat: frozenset[SubcatFrame]) -> None:
        inf = any(f.infinitival for f in subcat)
        que = SubcatFrame.QUE in subcat
        self.population += 1
        self.n_inf += inf
        self.n_que += que
        self.n_inf_only += inf and not que
        self.n_que_only += que and not inf

    def percentages(self) -> dict[str, float]:
        return {
            "+INF": pct(self.n_inf, self.population),
            "+QUE": pct(self.n_que, self.population),
            "+INF-QUE": pct(self.n_inf_only, self.population),
            "-INF+QUE": pct(self.n_que_only, self.population),
        }


@dataclass
class CrosstabReport:
    implicative: CrosstabColumn = field(default_factory=CrosstabColumn)
    factive: CrosstabColumn = field(default_factory=CrosstabColumn)
    verbs: list[str] = field(default_factory=list)
    classing: ClassingPreference = ClassingPreference.ANIM_FIRST


def subcat_crosstab(
    lex: Iterable[Reading], prefer: ClassingPreference = ClassingPreference.ANIM_FIRST
) -> CrosstabReport:
    """Clause types accepted by factive vs. implicative readings of verbs having both."""
    classed: dict[str, list[tuple[str, Reading]]] = defaultdict(list)
    for r in lex:
        sig = pfv_signature(r, prefer)
        if sig is None:
            continue
        if is_factive(sig):
            classed[r.lemma].append(("factive", r))
        elif is_implicative(sig):
            classed[r.lemma].append(("implicative", r))
    report = CrosstabReport(classing=prefer)
    for lemma in sorted(classed):
        kinds = {k for k, _ in classed[lemma]}
        if kinds != {"factive", "implicative"}:
            continue
        report.verbs.append(lemma)
        for kind, r in classed[lemma]:
            getattr(report, kind).add(r.subcat)
    return report
