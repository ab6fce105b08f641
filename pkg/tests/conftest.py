import io
import os
import sys

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

from factualis.lexicon import load_seed, load_tsv  # noqa: E402

settings.register_profile("ci", max_examples=1000, deadline=None)

# Five readings whose fifteen slots cover every inferential class; "d" is a
# source-introducing reading with cogniser signatures.
TOY_ROWS = {
    ("a", "01"): {"slots": {"pfv_anim": "1|-1", "pfv_inanim": "1|1", "imp": "-1|-1"}, "sip": False, "cog": None},
    ("b", "01"): {"slots": {"pfv_anim": "1|n", "pfv_inanim": "n|-1", "imp": "0.9|-0.9"}, "sip": False, "cog": None},
    ("c", "01"): {"slots": {"pfv_anim": "0.9|n", "pfv_inanim": "NA", "imp": "n|n"}, "sip": False, "cog": None},
    ("d", "01"): {
        "slots": {"pfv_anim": "n|n", "pfv_inanim": "NA", "imp": "0.7|-0.7"},
        "sip": True,
        "cog": {"pfv_anim": "1|-1", "pfv_inanim": "NA", "imp": "0.9|n"},
    },
    ("e", "01"): {"slots": {"pfv_anim": "-1|1", "pfv_inanim": "-0.7|-1", "imp": "UNGR"}, "sip": False, "cog": None},
}


def toy_tsv() -> str:
    lines = ["lemma\treading_id\tsource\tsip\tsig_pfv_anim\tsig_pfv_inanim\tsig_imp\tcog_pfv_anim\tcog_pfv_inanim\tcog_imp"]
    for (lemma, rid), e in TOY_ROWS.items():
        s = e["slots"]
        cog = e["cog"] or {"pfv_anim": "", "pfv_inanim": "", "imp": ""}
        lines.append("\t".join([
            lemma, rid, "LVF", "true" if e["sip"] else "false",
            s["pfv_anim"], s["pfv_inanim"], s["imp"],
            cog["pfv_anim"], cog["pfv_inanim"], cog["imp"],
        ]))
    return "\n".join(lines) + "\n"


def load_text(text):
    lex, errors = load_tsv(io.StringIO(text))
    assert errors == []
    return lex


@pytest.fixture(scope="session")
def seed():
    return load_seed()


@pytest.fixture(scope="session")
def toy():
    return load_text(toy_tsv())


# -- acceptance summary --------------------------------------------------------
# Each acceptance test carries @pytest.mark.criterion(n, title); one line per
# criterion is printed at the end of the run.

_CRITERIA: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    marker = getattr(report, "criterion", None)
    if marker is None:
        return
    number, title = marker
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        outcome = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[report.outcome]
        previous = _CRITERIA.get(number, ("PASS", title))[0]
        if previous != "FAIL":
            _CRITERIA[number] = (outcome, title)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        outcome.get_result().criterion = tuple(marker.args)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        outcome, title = _CRITERIA[number]
        terminalreporter.write_line(f"{outcome} criterion {number}: {title}")
