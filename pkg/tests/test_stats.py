import random

import pytest

import oracles
from conftest import load_text
from factualis.core import ContextKey
from factualis.lexicon import ClassingPreference, Lexicon
from factualis.stats import (
    Verdict,
    animacy_comparison,
    aspect_dependence,
    factive_animacy_restriction,
    format_mean,
    imperfective_weakening,
    mean_strength_by_context,
    strength_histogram,
    subcat_crosstab,
)

KEYS = {"pfv_anim": ContextKey.PFV_ANIM, "pfv_inanim": ContextKey.PFV_INANIM, "imp": ContextKey.IMP}
PREFS = {"anim": ClassingPreference.ANIM_FIRST, "inanim": ClassingPreference.INANIM_FIRST}

# Hand-checkable fixture: every expected number below can be read off the rows.
HAND = [
    # lemma, rid, subcat, sip, pfv_anim, pfv_inanim, imp
    ("alpha", "01", "aInf", False, "1|-1", "1|-1", "0.9|-0.9"),  # impl, weaker
    ("alpha", "02", "que", False, "1|1", "NA", "1|1"),  # factive, unchanged
    ("beta", "01", "deInf", False, "-1|n", "NA", "-1|n"),  # impl, unchanged
    ("beta", "02", "que", False, "-1|-1", "-1|-1", "n|n"),  # factive, changed
    ("gamma", "01", "aInf+que", False, "0.9|n", "1|n", "n|n"),  # not classed impl (anim first)
    ("delta", "01", "", False, "1|-1", "NA", "-1|1"),  # impl, incomparable
    ("delta", "02", "inf", False, "n|-1", "1|1", "n|-0.9"),  # impl, weaker
    ("eps", "01", "que", False, "NA", "1|n", "UNGR"),  # no imp signature
    ("zeta", "01", "inf", False, "0.7|n", "n|n", "1|n"),  # neutral
    ("zeta", "02", "que", False, "1|1", "NA", "0.9|0.9"),  # factive, changed
]


def as_oracle_shape(lex, prefer="anim"):
    p = PREFS[prefer]
    hist = strength_histogram(lex)
    asp = aspect_dependence(lex, p)
    weak = imperfective_weakening(lex, p)
    means = mean_strength_by_context(lex)
    cross = subcat_crosstab(lex, p)
    return {
        "histogram": {k: [hist.per_context[c][i] for i in range(6)] for k, c in KEYS.items()},
        "aspect": {
            "factive": (asp.factive.n_with_both_signatures, asp.factive.n_changed),
            "implicative": (asp.implicative.n_with_both_signatures, asp.implicative.n_changed),
        },
        "weakening": {
            "weaker": weak.n_weaker,
            "stronger": weak.n_stronger,
            "unchanged": weak.n_unchanged,
            "incomparable": weak.n_incomparable,
        },
        "means": {k: means[c] for k, c in KEYS.items()},
        "animacy": {lemma: str(v) for lemma, v in animacy_comparison(lex).items()},
        "factive_animacy": factive_animacy_restriction(lex),
        "crosstab": {
            kind: [col.population, col.n_inf, col.n_que, col.n_inf_only, col.n_que_only]
            for kind, col in (("implicative", cross.implicative), ("factive", cross.factive))
        },
    }


def check_against_oracle(rows, prefer="anim"):
    lex = load_text(oracles.rows_to_tsv(rows))
    got = as_oracle_shape(lex, prefer)
    expected = oracles.recount(rows, prefer)
    for key in expected:
        if key == "means":
            for k, v in expected[key].items():
                assert got[key][k] == pytest.approx(v) if v is not None else got[key][k] is None, k
        else:
            assert got[key] == expected[key], key


def test_hand_fixture_numbers():
    lex = load_text(oracles.rows_to_tsv(HAND))
    asp = aspect_dependence(lex)
    assert (asp.factive.n_with_both_signatures, asp.factive.n_changed) == (3, 2)
    assert (asp.implicative.n_with_both_signatures, asp.implicative.n_changed) == (4, 3)
    assert asp.factive.pct_changed == pytest.approx(200 / 3)

    weak = imperfective_weakening(lex)
    assert (weak.n_weaker, weak.n_stronger, weak.n_unchanged, weak.n_incomparable) == (2, 0, 1, 1)
    assert weak.pct_weaker == pytest.approx(200 / 3)

    assert factive_animacy_restriction(lex) == (3, 1)
    assert animacy_comparison(lex) == {
        "alpha": Verdict.TIE,
        "beta": Verdict.TIE,
        "delta": Verdict.TIE,
        "gamma": Verdict.INANIMATE_STRONGER,
        "zeta": Verdict.ANIMATE_STRONGER,
    }
    cross = subcat_crosstab(lex)
    # delta 02 is implicative through its animate slot, so only two verbs qualify
    assert cross.verbs == ["alpha", "beta"]
    assert cross.factive.percentages()["-INF+QUE"] == pytest.approx(100.0)
    assert cross.implicative.n_inf_only == 2

    hist = strength_histogram(lex)
    assert hist.total == 30
    assert hist.overall[0] == 6
    assert mean_strength_by_context(lex)[ContextKey.PFV_ANIM] == pytest.approx(36 / 9)


def test_hand_fixture_matches_oracle():
    check_against_oracle(HAND)


def test_inanimate_classing_changes_population():
    lex = load_text(oracles.rows_to_tsv(HAND))
    anim = aspect_dependence(lex, ClassingPreference.ANIM_FIRST)
    inanim = aspect_dependence(lex, ClassingPreference.INANIM_FIRST)
    # gamma 01 becomes implicative and delta 02 factive
    assert inanim.implicative.n_with_both_signatures == anim.implicative.n_with_both_signatures
    assert inanim.factive.n_with_both_signatures == anim.factive.n_with_both_signatures + 1
    check_against_oracle(HAND, "inanim")


@pytest.mark.parametrize("seed, size", [(1, 10), (2, 18), (3, 24), (4, 30), (5, 30)])
@pytest.mark.parametrize("prefer", ["anim", "inanim"])
def test_random_fixtures_match_oracle(seed, size, prefer):
    check_against_oracle(oracles.random_fixture(seed, size), prefer)


def test_reports_ignore_entry_order():
    rows = oracles.random_fixture(7, 30)
    base = as_oracle_shape(load_text(oracles.rows_to_tsv(rows)))
    for s in range(5):
        shuffled = rows[:]
        random.Random(s).shuffle(shuffled)
        assert as_oracle_shape(load_text(oracles.rows_to_tsv(shuffled))) == base


def test_empty_lexicon_reports_zero():
    lex = Lexicon([])
    shape = as_oracle_shape(lex)
    assert shape["histogram"] == {k: [0] * 6 for k in KEYS}
    assert shape["weakening"] == dict.fromkeys(["weaker", "stronger", "unchanged", "incomparable"], 0)
    assert shape["means"] == dict.fromkeys(KEYS)
    assert shape["animacy"] == {} and shape["factive_animacy"] == (0, 0)
    assert imperfective_weakening(lex).pct_weaker == 0.0


def test_echouer_alone_weakens(seed):
    report = imperfective_weakening(seed.query("échouer"))
    assert (report.n_weaker, report.population) == (1, 1)


def test_seed_weakening(seed):
    report = imperfective_weakening(seed)
    # assurer 03, échouer 07, réussir 05, penser 04 and refuser 08 all lose strength
    assert (report.n_weaker, report.n_stronger, report.n_unchanged) == (5, 0, 0)


def test_format_mean():
    assert format_mean(4.5333) == "4.53"
    assert format_mean(3.92, ",") == "3,92"
    assert format_mean(None) == "-"
