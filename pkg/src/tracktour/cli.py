"""Command-line front end.

Exit codes: 0 success, 1 domain failure, 2 usage error, 3 environment error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys

from . import bijection, counting, oeis, tournament
from .errors import (
    InvalidBinaryString,
    InvalidRule,
    InvalidTournament,
    NetworkError,
    NotDecomposable,
    NotUnique,
    ParseError,
)
from .rules import DEFAULT_RULE, TrackingRule, check_binary, compiled_dfa, is_tracking_oracle, run_dfa

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_ENV = 0, 1, 2, 3
METHODS = ("enum", "matrix", "recurrence")


class UsageError(Exception):
    pass


def _rule(text: str) -> TrackingRule:
    try:
        return TrackingRule.parse(text)
    except InvalidRule as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_track_check(args) -> int:
    s = check_binary(args.string)
    by_oracle = is_tracking_oracle(s, args.rule)
    by_dfa = run_dfa(compiled_dfa(args.rule), s)
    if by_oracle != by_dfa:
        raise AssertionError(f"oracle and automaton disagree on {s!r} under rule {args.rule}")
    label = "tracking" if by_dfa else "non-tracking"
    if args.format == "json":
        _emit(json.dumps({"string": s, "rule": str(args.rule), "tracking": by_dfa}))
    else:
        _emit(label)
    return EXIT_OK


def cmd_counts(args) -> int:
    if args.max_k < 0:
        raise UsageError("--max-k must be non-negative")
    methods = METHODS if args.method == "all" else (args.method,)
    if args.rule != DEFAULT_RULE:
        if args.method == "recurrence":
            raise UsageError("--method recurrence is only available for rule 3,5,2")
        methods = tuple(m for m in methods if m != "recurrence")
    if "enum" in methods and args.max_k > counting.MAX_ENUMERATION_K:
        raise UsageError(f"enumeration is limited to --max-k <= {counting.MAX_ENUMERATION_K}")

    tables = [counting.ntr_table(args.max_k, m, args.rule) for m in methods]
    agree = all(t.terms == tables[0].terms for t in tables)

    rows = [(k, m, t[k], 2**k - t[k]) for k in range(args.max_k + 1) for m, t in zip(methods, tables)]
    if args.format == "json":
        _emit(
            json.dumps(
                {
                    "rule": str(args.rule),
                    "max_k": args.max_k,
                    "agree": agree,
                    "tables": [json.loads(t.to_json()) for t in tables],
                }
            )
        )
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "method", "non_tracking", "tracking"])
        w.writerows(rows)
        _emit(buf.getvalue())
    else:
        lines = [f"{'k':>3} {'method':<10} {'NTr':>12} {'Tr':>12}"]
        lines += [f"{k:>3} {m:<10} {ntr:>12} {tr:>12}" for k, m, ntr, tr in rows]
        if len(methods) > 1:
            lines.append("methods agree" if agree else "METHODS DISAGREE")
        _emit("\n".join(lines))
    return EXIT_OK if agree else EXIT_DOMAIN


def _read_tournament(text: str) -> tournament.Tournament:
    text = text.strip()
    if text.startswith("{"):
        return tournament.Tournament.from_json(text)
    return tournament.Tournament.from_hex(text)


def _il_argument(text: str) -> str:
    check_binary(text)
    if not bijection.is_il_string(text):
        raise NotDecomposable(text)
    return text


def cmd_bijection(args) -> int:
    fmt = args.format
    if fmt == "dot" and args.action != "to-tournament":
        raise UsageError("--format dot is only valid for to-tournament")
    if args.action == "to-string":
        il = bijection.tournament_to_string(_read_tournament(args.argument))
        _emit(json.dumps(il) if fmt == "json" else il)
        return EXIT_OK

    il = _il_argument(args.argument)
    if args.action == "decompose":
        blocks = bijection.decompose_blocks(il)
        _emit(bijection.blocks_to_json(blocks) if fmt == "json" else " + ".join(blocks))
    elif args.action == "to-tournament":
        t = bijection.string_to_tournament(il)
        if fmt == "dot":
            _emit(t.to_dot())
        elif fmt == "json":
            _emit(t.to_json())
        else:
            _emit(t.to_hex())
    elif args.action == "score":
        sv = bijection.score_vector_from_string(il)
        _emit(json.dumps(list(sv)) if fmt == "json" else " ".join(map(str, sv)))
    elif args.action == "dual":
        d = bijection.string_dual(il)
        _emit(json.dumps(d) if fmt == "json" else d)
    return EXIT_OK


def cmd_census(args) -> int:
    if not 1 <= args.n <= tournament.MAX_CENSUS_N:
        raise UsageError(f"n must be between 1 and {tournament.MAX_CENSUS_N}")
    census = tournament.unique_census(args.n)
    expected = counting.ut(args.n)
    vectors = sorted(census.non_unique_score_vectors)
    if args.format == "json":
        _emit(
            json.dumps(
                {
                    "n": args.n,
                    "count": census.count,
                    "expected": expected,
                    "non_unique_score_vectors": [list(v) for v in vectors],
                    "classes": {" ".join(map(str, v)): census.class_count(v) for v in vectors},
                }
            )
        )
    else:
        lines = [f"n = {args.n}", f"unique tournaments: {census.count}", f"ut({args.n}) = {expected}"]
        if vectors:
            lines.append("non-unique score vectors:")
            lines += [f"  {{{','.join(map(str, v))}}}: {census.class_count(v)} classes" for v in vectors]
        else:
            lines.append("non-unique score vectors: none")
        lines.append("match" if census.count == expected else "MISMATCH")
        _emit("\n".join(lines))
    return EXIT_OK if census.count == expected else EXIT_DOMAIN


def cmd_verify(args) -> int:
    from .verify import run_checks

    outcomes = run_checks(args.level)
    for o in outcomes:
        status = "PASS" if o.ok else "FAIL"
        detail = f"{o.items} items" if o.ok else o.error
        _emit(f"{status} [{o.check.module}] {o.check.name}: {detail} ({o.seconds:.2f}s)")
    failed = [o for o in outcomes if not o.ok]
    total = sum(o.items for o in outcomes)
    _emit(f"{len(outcomes) - len(failed)}/{len(outcomes)} checks passed, {total} items examined")
    return EXIT_DOMAIN if failed else EXIT_OK


def cmd_oeis_check(args) -> int:
    try:
        bfile = oeis.fetch_bfile(args.sequence, args.cache_dir, offline=args.offline, snapshot=args.snapshot)
    except NetworkError as exc:
        print(f"fetch failed: {exc}", file=sys.stderr)
        return EXIT_ENV
    except ParseError as exc:
        print(f"bad b-file: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    last = bfile.entries[-1][0] if bfile.entries else 1
    report = oeis.compare(counting.ut_table(max(last, 1)), bfile)
    if args.format == "json":
        _emit(
            json.dumps(
                {
                    "sequence": args.sequence,
                    "terms": len(report.matches),
                    "match_length": report.match_length,
                    "first_mismatch": report.first_mismatch,
                }
            )
        )
    else:
        _emit(f"{args.sequence}: {report.summary()}")
    return EXIT_OK if report.full_match else EXIT_DOMAIN


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tracktour", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def add_rule(sp):
        sp.add_argument("--rule", type=_rule, default=DEFAULT_RULE, help="m,n,l (default 3,5,2)")

    def add_format(sp, choices=("plain", "json")):
        sp.add_argument("--format", choices=choices, default="plain")

    sp = sub.add_parser("track-check", help="classify one observation string")
    sp.add_argument("string")
    add_rule(sp)
    add_format(sp)
    sp.set_defaults(func=cmd_track_check)

    sp = sub.add_parser("counts", help="NTr(k) and Tr(k) for k = 0..K")
    sp.add_argument("--max-k", type=int, required=True)
    sp.add_argument("--method", choices=(*METHODS, "all"), default="matrix")
    add_rule(sp)
    add_format(sp, ("plain", "json", "csv"))
    sp.set_defaults(func=cmd_counts)

    sp = sub.add_parser("bijection", help="initial-loss strings <-> unique tournaments")
    sp.add_argument("action", choices=("decompose", "to-tournament", "to-string", "score", "dual"))
    sp.add_argument("argument", help="'0'/'1' string, or tournament as n:hex or JSON for to-string")
    add_format(sp, ("plain", "json", "dot"))
    sp.set_defaults(func=cmd_bijection)

    sp = sub.add_parser("census", help="brute-force count of unique tournaments")
    sp.add_argument("n", type=int)
    add_format(sp)
    sp.set_defaults(func=cmd_census)

    sp = sub.add_parser("verify", help="run the self-verification suite")
    sp.add_argument("--level", choices=("quick", "full"), default="quick")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("oeis-check", help="compare UT(n) with the A000570 b-file")
    sp.add_argument("--offline", action="store_true")
    sp.add_argument("--cache-dir", default=None, help=f"defaults to ${oeis.CACHE_ENV} or ~/.cache/tracktour")
    sp.add_argument("--snapshot", default=None, help="offline snapshot file (default: bundled copy)")
    sp.add_argument("--sequence", default="A000570", help=argparse.SUPPRESS)
    add_format(sp)
    sp.set_defaults(func=cmd_oeis_check)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (UsageError, InvalidBinaryString, InvalidTournament) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NotDecomposable:
        print("not an initial-loss non-tracking string", file=sys.stderr)
        return EXIT_DOMAIN
    except NotUnique:
        print("not a unique tournament", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
