import pytest

import oracles
from conftest import TOY_ROWS
from factualis.core import Animacy, Aspect, CertaintyDegree, FactualityValue
from factualis.lexicon import EventKind
from factualis.projection import (
    ANCHOR,
    ClauseSyntaxError,
    EspNode,
    EventNode,
    ProjectionError,
    SourceChain,
    combine,
    contextual_factuality,
    format_clause,
    parse_clause,
    project,
    project_text,
)

F = FactualityValue.parse


# -- grammar -------------------------------------------------------------------


def test_parse_negated_pfv():
    node = parse_clause("neg échouer:07[pfv,anim]( E(persuader) )")
    assert node == EspNode("échouer", "07", EventNode("persuader"), negated=True,
                           aspect=Aspect.PFV, animacy=Animacy.ANIM)


def test_parse_imp_unknown_animacy():
    node = parse_clause("réussir:05[imp]( E(s_enfuir) )")
    assert node.aspect is Aspect.IMP and node.animacy is Animacy.UNKNOWN


def test_parse_modality():
    node = parse_clause("réussir:05[pfv,anim,mod=pr]( E(gagner) )")
    assert node.modality is CertaintyDegree.PR


def test_parse_nested_and_np():
    node = parse_clause("garantir:06[src=pierre,anim,pfv](obliger:02[imp](NP(succès)))")
    assert node.source_label == "pierre"
    assert node.child.child == EventNode("succès", EventKind.EVENT_NP)


@pytest.mark.parametrize(
    "text, position",
    [
        ("neg neg x:01[pfv](E(p))", 4),
        ("neg E(p)", 4),
        ("x:01[anim](E(p))", 5),
        ("x:01[pfv,pfv](E(p))", 9),
        ("x:01[pfv,mod=xx](E(p))", 13),
        ("x:01[pfv,colour](E(p))", 9),
        ("x:01[pfv](E(p)", 14),
        ("x:01[pfv](E(p)))", 15),
        ("x:01[pfv](E(p!))", 13),
        ("x[pfv](E(p))", 1),
        ("", 0),
    ],
)
def test_syntax_errors_are_located(text, position):
    with pytest.raises(ClauseSyntaxError) as info:
        parse_clause(text)
    assert info.value.position == position


@pytest.mark.parametrize(
    "text",
    [
        "E(p)",
        "NP(succès)",
        "neg échouer:07[pfv,anim](E(persuader))",
        "réussir:05[imp,mod=ps](E(p))",
        "garantir:06[pfv,inanim,src=marie](neg obliger:02[imp,anim,mod=pr](E(q)))",
    ],
)
def test_format_round_trip(text):
    node = parse_clause(text)
    assert format_clause(node) == text
    assert parse_clause(format_clause(node)) == node


# -- local context -------------------------------------------------------------


def test_contextual_factuality():
    assert str(contextual_factuality(None)) == "CT+"
    p = EventNode("p")
    assert str(contextual_factuality(EspNode("x", "01", p))) == "CT+"
    assert str(contextual_factuality(EspNode("x", "01", p, negated=True))) == "CT-"
    assert str(contextual_factuality(EspNode("x", "01", p, modality=CertaintyDegree.PS))) == "PS+"


def test_combine():
    assert combine(F("CT-"), F("CT-")) == F("CT+")
    assert combine(F("PR+"), F("CT-")) == F("PR-")
    assert combine(F("CTu"), F("PS-")) == F("PSu")
    assert combine(F("Uu"), F("CT+")) == F("Uu")


def test_modal_marker_rejects_u():
    with pytest.raises(ValueError):
        EspNode("x", "01", EventNode("p"), modality=CertaintyDegree.U)


def test_source_chain():
    assert str(ANCHOR) == "author"
    assert str(ANCHOR.extend("pierre")) == "author>pierre"
    with pytest.raises(ValueError):
        SourceChain(("pierre",))


# -- projection ----------------------------------------------------------------


@pytest.mark.parametrize(
    "text, expected",
    [
        ("échouer:07[pfv,anim](E(p))", "CT-"),
        ("neg échouer:07[pfv,anim](E(p))", "CT+"),
        ("échouer:07[imp,anim](E(p))", "Uu"),
        ("obliger:02[pfv,anim](E(partir))", "PR+"),
        ("obliger:02[pfv,inanim](E(partir))", "CT+"),
        ("neg refuser:09[pfv,anim](E(ouvrir))", "Uu"),
        ("refuser:08[pfv,inanim](E(s_ouvrir))", "CT-"),
        ("refuser:08[imp,inanim](E(s_ouvrir))", "Uu"),
        ("E(p)", "CT+"),
    ],
)
def test_leaf_values(seed, text, expected):
    leaf = project(seed, parse_clause(text))[-1]
    assert str(leaf.value()) == expected
    assert len(leaf.assignments) == 1


def test_imperfective_reussir_is_weakened(seed):
    profiles = project(seed, parse_clause("réussir:05[imp,anim](E(p))"))
    perfective = project(seed, parse_clause("réussir:05[pfv,anim](E(p))"))
    assert str(perfective[-1].value()) == "CT+"
    assert profiles[-1].value().degree < CertaintyDegree.CT


def test_project_text_rendering(seed):
    out = project_text(seed, "neg refuser:09[pfv,anim](E(ouvrir))")
    assert out.splitlines() == ["refuser:09\tauthor\tCT-", "ouvrir\tauthor\tUu"]


def test_sip_forks_chain(seed):
    profiles = project(seed, parse_clause("garantir:06[pfv,anim,src=pierre](NP(succès))"))
    leaf = profiles[-1]
    assert leaf.kind == "eventNP"
    assert [(str(c), str(v)) for c, v in leaf.assignments] == [
        ("author", "Uu"),
        ("author>pierre", "Uu"),
    ]


def test_sip_default_cogniser_label(toy):
    leaf = project(toy, parse_clause("d:01[pfv,anim](E(p))"))[-1]
    assert [(str(c), str(v)) for c, v in leaf.assignments] == [
        ("author", "Uu"),
        ("author>d:01", "CT+"),
    ]


def test_repeated_cogniser_labels_are_numbered(toy):
    leaf = project(toy, parse_clause("d:01[pfv,anim](d:01[pfv,anim](E(p)))"))[-1]
    assert [str(c) for c, _ in leaf.assignments] == [
        "author", "author>d:01#2", "author>d:01", "author>d:01>d:01#2",
    ]
    assert str(leaf.value("author>d:01>d:01#2")) == "CT+"


def test_esp_nodes_get_profiles(seed):
    profiles = project(seed, parse_clause("neg obliger:02[pfv,anim](échouer:07[pfv,anim](E(p)))"))
    assert [p.event_label for p in profiles] == ["obliger:02", "échouer:07", "p"]
    assert [p.kind for p in profiles] == ["esp", "esp", "clause"]
    assert str(profiles[0].value()) == "CT-"


@pytest.mark.parametrize(
    "text, depth, fragment",
    [
        ("échouer:07[pfv,inanim](E(p))", 0, "NA"),
        ("obliger:02[pfv,anim](zzz:01[pfv](E(p)))", 1, "zzz"),
        ("obliger:02[pfv,anim](garantir:05[imp](E(p)))", 1, "NA"),
    ],
)
def test_projection_errors_name_the_node(seed, text, depth, fragment):
    with pytest.raises(ProjectionError) as info:
        project(seed, parse_clause(text))
    assert info.value.depth == depth
    assert fragment in str(info.value)


def test_ungrammatical_slot_raises(toy):
    with pytest.raises(ProjectionError, match="UNGR"):
        project(toy, parse_clause("e:01[imp](E(p))"))


def test_ambiguous_unknown_animacy_error_mode(seed):
    with pytest.raises(ProjectionError):
        project(seed, parse_clause("obliger:02[pfv](E(p))"), pfv_unknown="error")
    leaf = project(seed, parse_clause("obliger:02[pfv](E(p))"))[-1]
    assert str(leaf.value()) == "PR+"


def test_matches_oracle_on_nested_toy_trees(toy):
    tree = "neg b:01[pfv,anim,mod=pr](d:01[imp,src=s](a:01[pfv,inanim](E(x))))"
    nodes = [
        {"lemma": "b", "rid": "01", "neg": True, "mod": "PR", "aspect": "pfv", "animacy": "anim"},
        {"lemma": "d", "rid": "01", "neg": False, "mod": "CT", "aspect": "imp", "animacy": "unknown", "src": "s"},
        {"lemma": "a", "rid": "01", "neg": False, "mod": "CT", "aspect": "pfv", "animacy": "inanim"},
    ]
    expected = oracles.oracle_project(TOY_ROWS, nodes, "x")
    got = [(p.event_label, [(str(c), str(v)) for c, v in p.assignments])
           for p in project(toy, parse_clause(tree))]
    assert got == expected
