"""Command-line interface.

Exit codes: 0 success, 1 negative result (no match, validation errors,
rejected rows), 2 usage, parse or I/O errors.
"""

from __future__ import annotations

import argparse
import os
import re
import sys
from dataclasses import dataclass
from typing import Callable, Sequence

from . import stats
from .algebra import DegreeMapping, classify, format_grid, generate_grid, strength_level
from .convert import SheetFormatError, convert_sheet
from .core import ContextKey, Signature, SignatureParseError
from .lexicon import (
    ClassingPreference,
    Lexicon,
    LexiconFormatError,
    dump_tsv,
    load_path,
    load_seed,
    merge_duplicates,
    validate,
)
from .projection import ClauseSyntaxError, ProjectionError, parse_clause, project, render_profiles

ENV_LEXICON = "FACTUALIS_LEXICON"


class CliError(Exception):
    """Aborts the command with exit code 2."""


@dataclass(frozen=True)
class CliConfig:
    lexicon_path: str | None = None  # None: the bundled seed lexicon
    degree_mapping_mode: str = "paper"
    pfv_unknown_policy: str = "weaker"
    classing_slot: ClassingPreference = ClassingPreference.ANIM_FIRST
    output: str = "text"

    @property
    def mapping(self) -> DegreeMapping:
        return DegreeMapping.from_mode(self.degree_mapping_mode)

    def header(self) -> str:
        return (
            f"# lexicon={self.lexicon_path or 'seed'} mapping={self.degree_mapping_mode} "
            f"pfv-unknown={self.pfv_unknown_policy} classing={self.classing_slot}"
        )

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> CliConfig:
        return cls(
            lexicon_path=getattr(args, "lexicon", None) or os.environ.get(ENV_LEXICON) or None,
            degree_mapping_mode=getattr(args, "mapping", "paper"),
            pfv_unknown_policy=getattr(args, "pfv_unknown", "weaker"),
            classing_slot=ClassingPreference(getattr(args, "classing", "anim")),
            output="tsv" if getattr(args, "tsv", False) else "text",
        )


def _load(config: CliConfig) -> Lexicon:
    if config.lexicon_path is None:
        return load_seed()
    try:
        lex, errors = load_path(config.lexicon_path)
    except (OSError, LexiconFormatError, UnicodeDecodeError) as exc:
        raise CliError(f"cannot load lexicon {config.lexicon_path}: {exc}") from exc
    for err in errors:
        print(f"warning: {config.lexicon_path}: {err}", file=sys.stderr)
    return lex


def _table(rows: list[Sequence[object]], tsv: bool) -> str:
    cells = [[str(c) for c in row] for row in rows]
    if tsv:
        return "\n".join("\t".join(r) for r in cells)
    widths = [max(len(r[i]) for r in cells if i < len(r)) for i in range(max(map(len, cells)))]
    return "\n".join(
        "  ".join(c.ljust(widths[i]) for i, c in enumerate(r)).rstrip() for r in cells
    )


# -- commands ------------------------------------------------------------------


def cmd_lookup(args: argparse.Namespace, config: CliConfig) -> int:
    lex = _load(config)
    matches = lex.query(args.lemma, reading_id=args.reading_id)
    if not matches:
        print("no entries")
        return 1
    tsv = config.output == "tsv"
    blocks = []
    for r in matches:
        rows: list[list[object]] = []
        for k in ContextKey:
            slot = r.slots[k]
            cls = classify(slot) if isinstance(slot, Signature) else "-"
            rows.append([k, slot, cls, strength_level(slot)])
        if tsv:
            blocks.append(_table([[r.lemma, r.reading_id, r.source, *row] for row in rows], True))
            continue
        head = [
            f"{r.lemma} {r.reading_id} [{r.source}] {r.gloss}".rstrip(),
            f"  sip: {str(r.sip).lower()}  subcat: {'+'.join(sorted(map(str, r.subcat))) or '-'}"
            f"  events: {'+'.join(sorted(map(str, r.event_kinds)))}",
        ]
        body = _table([["context", "signature", "class", "level"], *rows], False)
        summary = "  signatures: " + " / ".join(str(r.slots[k]) for k in ContextKey)
        blocks.append("\n".join(head + ["  " + ln for ln in body.splitlines()] + [summary]))
    print(("\n" if tsv else "\n\n").join(blocks))
    return 0


def cmd_grid(args: argparse.Namespace, config: CliConfig) -> int:
    try:
        sig = Signature.parse(args.signature)
    except SignatureParseError as exc:
        raise CliError(str(exc)) from exc
    row = generate_grid(sig, config.mapping)
    if config.output == "tsv":
        print(format_grid(row))
    else:
        header = [f"{d}{p}" for d in ("CT", "PR", "PS", "U") for p in ("+", "-", "u")]
        print(_table([["context", *header], [str(sig), *row]], False))
    return 0


def cmd_project(args: argparse.Namespace, config: CliConfig) -> int:
    lex = _load(config)
    try:
        tree = parse_clause(args.expression)
        profiles = project(
            lex, tree, mapping=config.mapping, pfv_unknown=config.pfv_unknown_policy
        )
    except (ClauseSyntaxError, ProjectionError) as exc:
        raise CliError(str(exc)) from exc
    print(render_profiles(profiles))
    return 0


def _report_histogram(lex: Lexicon, config: CliConfig, sep: str) -> list[list[object]]:
    h = stats.strength_histogram(lex)
    rows: list[list[object]] = [["level", *ContextKey, "overall"]]
    overall = h.overall
    for lvl in range(5, -1, -1):
        rows.append([lvl, *(h.per_context[k][lvl] for k in ContextKey), overall[lvl]])
    rows.append(["total", *(sum(h.per_context[k].values()) for k in ContextKey), h.total])
    return rows


def _report_aspect(lex: Lexicon, config: CliConfig, sep: str) -> list[list[object]]:
    rep = stats.aspect_dependence(lex, config.classing_slot)
    rows: list[list[object]] = [["class under PFV", "with IMP and PFV signature", "IMP != PFV", "pct"]]
    for name, c in (("factive", rep.factive), ("implicative", rep.implicative)):
        rows.append([name, c.n_with_both_signatures, c.n_changed, _pct(c.pct_changed, sep, 0)])
    return rows


def _report_weakening(lex: Lexicon, config: CliConfig, sep: str) -> list[list[object]]:
    rep = stats.imperfective_weakening(lex, config.classing_slot)
    return [
        ["bucket", "count", "pct"],
        ["IMP weaker", rep.n_weaker, _pct(rep.pct_weaker, sep, 1)],
        ["IMP stronger", rep.n_stronger, _pct(rep.pct_stronger, sep, 1)],
        ["no change", rep.n_unchanged, _pct(rep.pct_unchanged, sep, 1)],
        ["incomparable", rep.n_incomparable, "-"],
        ["population", rep.population, ""],
    ]


def _report_means(lex: Lexicon, config: CliConfig, sep: str) -> list[list[object]]:
    means = stats.mean_strength_by_context(lex)
    return [["context", "mean level"], *([k, stats.format_mean(means[k], sep)] for k in ContextKey)]


def _report_animacy(lex: Lexicon, config: CliConfig, sep: str) -> list[list[object]]:
    verdicts = stats.animacy_comparison(lex)
    rows: list[list[object]] = [["lemma", "verdict"], *([lemma, v] for lemma, v in verdicts.items())]
    n_inanim = sum(v is stats.Verdict.INANIMATE_STRONGER for v in verdicts.values())
    rows.append(["verbs", f"{len(verdicts)} ({n_inanim} inanimate_stronger)"])
    return rows


def _report_factive_animacy(lex: Lexicon, config: CliConfig, sep: str) -> list[list[object]]:
    n_factive, n_inanim = stats.factive_animacy_restriction(lex)
    return [
        ["count", "readings"],
        ["factive with animate subject", n_factive],
        ["of which also inanimate", n_inanim],
    ]


def _report_crosstab(lex: Lexicon, config: CliConfig, sep: str) -> list[list[object]]:
    rep = stats.subcat_crosstab(lex, config.classing_slot)
    imp, fac = rep.implicative.percentages(), rep.factive.percentages()
    rows: list[list[object]] = [
        ["", f"implic. r. ({rep.implicative.population})", f"factive r. ({rep.factive.population})"]
    ]
    for key in imp:
        rows.append([key, _pct(imp[key], sep, 0), _pct(fac[key], sep, 0)])
    rows.append(["verbs", len(rep.verbs), ""])
    return rows


def _pct(value: float, sep: str, digits: int) -> str:
    return f"{value:.{digits}f}%".replace(".", sep)


REPORTS: dict[str, Callable[[Lexicon, CliConfig, str], list[list[object]]]] = {
    "histogram": _report_histogram,
    "aspect": _report_aspect,
    "weakening": _report_weakening,
    "means": _report_means,
    "animacy": _report_animacy,
    "factive-animacy": _report_factive_animacy,
    "crosstab": _report_crosstab,
}


def cmd_stats(args: argparse.Namespace, config: CliConfig) -> int:
    names = args.reports or ["all"]
    unknown = [n for n in names if n != "all" and n not in REPORTS]
    if unknown:
        raise CliError(f"unknown report {', '.join(unknown)}; valid: all, {', '.join(REPORTS)}")
    if "all" in names:
        names = list(REPORTS)
    lex = _load(config)
    tsv = config.output == "tsv"
    out = [config.header()]
    for name in names:
        rows = REPORTS[name](lex, config, args.decimal_separator)
        if tsv:
            out.append(_table([[name, *row] for row in rows], True))
        else:
            out.append(f"== {name} ==\n{_table(rows, False)}")
    print(("\n" if tsv else "\n\n").join(out))
    return 0


def cmd_validate(args: argparse.Namespace, config: CliConfig) -> int:
    path = args.path or config.lexicon_path
    if path is None:
        lex, errors = load_seed(), []
    else:
        try:
            lex, errors = load_path(path)
        except (OSError, LexiconFormatError, UnicodeDecodeError) as exc:
            raise CliError(f"cannot read {path}: {exc}") from exc
    report = validate(lex)
    for err in errors:
        print(f"error: {err}")
    print(report.render())
    return 0 if report.ok and not errors else 1


def cmd_convert(args: argparse.Namespace, config: CliConfig) -> int:
    try:
        with open(args.src, encoding="utf-8", newline="") as fh:
            readings, errors = convert_sheet(fh)
    except (OSError, SheetFormatError, UnicodeDecodeError) as exc:
        raise CliError(f"cannot convert {args.src}: {exc}") from exc
    if args.merge:
        readings = merge_duplicates(readings)
    try:
        with open(args.dst, "w", encoding="utf-8", newline="") as out:
            dump_tsv(readings, out)
    except OSError as exc:
        raise CliError(f"cannot write {args.dst}: {exc}") from exc
    for err in errors:
        print(f"rejected: {err}", file=sys.stderr)
    print(f"wrote {len(readings)} readings to {args.dst} ({len(errors)} rows rejected)")
    return 1 if errors else 0


# -- argument parsing ----------------------------------------------------------


def _common(suppress: bool) -> argparse.ArgumentParser:
    # added to the main parser and to every subcommand, so flags work in either position
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--lexicon", metavar="PATH", default=d(None),
                   help=f"lexicon TSV (default: ${ENV_LEXICON}, else the bundled seed)")
    p.add_argument("--mapping", choices=("paper", "fine"), default=d("paper"),
                   help="magnitude-to-degree mapping")
    p.add_argument("--pfv-unknown", choices=("weaker", "error"), default=d("weaker"),
                   help="perfective with unknown animacy: take the weaker slot or fail")
    p.add_argument("--classing", choices=("anim", "inanim"), default=d("anim"),
                   help="perfective slot used to class readings annotated for both")
    p.add_argument("--tsv", action="store_true", default=d(False), help="tab-separated output")
    return p


# Signatures such as "-1|1" start with a dash; argparse leaves arguments that
# look like negative numbers positional, so widen what counts as one.
_NEGATIVE_ARG = re.compile(r"^-[\d.−]")


def _positional_negatives(parser: argparse.ArgumentParser) -> argparse.ArgumentParser:
    parser._negative_number_matcher = _NEGATIVE_ARG
    return parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="factualis",
        description="Inferential signatures of clause-embedding verbs and event factuality.",
        parents=[_common(False)],
    )
    _positional_negatives(parser)
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    common = [_common(True)]

    p = sub.add_parser("lookup", parents=common, help="show the readings of a lemma")
    p.add_argument("lemma")
    p.add_argument("reading_id", nargs="?")
    p.set_defaults(func=cmd_lookup)

    p = _positional_negatives(
        sub.add_parser("grid", parents=common, help="factuality grid row for a signature")
    )
    p.add_argument("signature")
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("project", parents=common, help="project factuality through an expression")
    p.add_argument("expression")
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("stats", parents=common, help="lexicon statistics")
    p.add_argument("reports", nargs="*", metavar="REPORT",
                   help=f"all (default) or any of: {', '.join(REPORTS)}")
    p.add_argument("--decimal-separator", default=".", metavar="SEP")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("validate", parents=common, help="check a lexicon file")
    p.add_argument("path", nargs="?")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("convert", parents=common, help="spreadsheet CSV export to lexicon TSV")
    p.add_argument("src")
    p.add_argument("dst")
    p.add_argument("--merge", action="store_true", help="merge duplicate readings")
    p.set_defaults(func=cmd_convert)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    config = CliConfig.from_args(args)
    try:
        return args.func(args, config)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
