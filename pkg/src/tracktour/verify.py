"""Self-verification: every published value and exhaustive invariant.

``quick`` covers the published values plus short round-trips; ``full``
adds the exhaustive sweeps.  Each check returns how many items it examined
and raises ``AssertionError`` on the first violation.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from typing import Callable

from . import bijection, counting, oeis, rules, tournament
from .rules import DEFAULT_RULE, TrackingRule

NTR_LISTED = (2, 4, 7, 11, 18, 31, 53, 89, 149, 251, 424, 715, 1204, 2028)
UT_LISTED = (1, 1, 2, 4, 7, 11, 18, 31, 53, 89, 149, 251, 424, 715, 1204, 2028, 3418)

NONTRACKING_LISTED = {
    1: "0 1",
    2: "00 01 10 11",
    3: "000 001 010 011 100 101 110",
    4: "0000 0001 0010 0011 0100 0101 0110 1000 1001 1010 1100",
    5: "00000 00001 00010 00011 00100 00101 00110 01000 01001 01010 01100 "
    "10000 10001 10010 10011 10100 11000 11001",
}

DECOMPOSITION_TABLE = {
    "1": ("001", ["001"]),
    "01": ("0001", ["0", "001"]),
    "11": ("0011", ["0011"]),
    "001": ("00001", ["0", "0", "001"]),
    "011": ("00011", ["0", "0011"]),
    "101": ("00101", ["00101"]),
}

EQUIVALENCE_RULES = (TrackingRule(3, 5, 2), TrackingRule(2, 3, 2), TrackingRule(3, 4, 2), TrackingRule(4, 6, 3))


@dataclass(frozen=True)
class Check:
    module: str
    name: str
    level: str
    fn: Callable[[], int]


CHECKS: list[Check] = []


def check(module: str, name: str, level: str = "quick"):
    def register(fn):
        CHECKS.append(Check(module, name, level, fn))
        return fn

    return register


# rule_automaton


@check("rule_automaton", "listed non-tracking strings")
def _listed_strings() -> int:
    for k, listed in NONTRACKING_LISTED.items():
        got = counting.nontracking_strings(k)
        assert got == sorted(listed.split()), f"k={k}: {got}"
        assert [s for s in rules.all_strings(k) if not rules.is_tracking_oracle(s)] == got
    return len(NONTRACKING_LISTED)


@check("rule_automaton", "oracle/automaton equivalence", "full")
def _equivalence() -> int:
    n = 0
    for rule in EQUIVALENCE_RULES:
        d = rules.minimize_dfa(rules.build_dfa(rule))
        for k in range(13):
            for s in rules.all_strings(k):
                assert rules.run_dfa(d, s) == rules.is_tracking_oracle(s, rule), (rule, s)
                n += 1
    return n


@check("rule_automaton", "absorption and prefix closure", "full")
def _absorption() -> int:
    n = 0
    for rule in EQUIVALENCE_RULES:
        for k in range(12):
            for s in rules.all_strings(k):
                if rules.is_tracking_oracle(s, rule):
                    assert rules.is_tracking_oracle(s + "0", rule) and rules.is_tracking_oracle(s + "1", rule), s
                n += 1
    return n


# counting


@check("counting", "three-way NTr agreement k=1..14")
def _ntr_listed() -> int:
    for method in ("enum", "matrix", "recurrence"):
        table = counting.ntr_table(14, method)
        assert table.terms[1:] == NTR_LISTED, (method, table.terms)
    return 3 * len(NTR_LISTED)


@check("counting", "UT listing and compositions")
def _ut_listed() -> int:
    assert tuple(counting.ut(n) for n in range(1, 18)) == UT_LISTED
    assert tuple(counting.count_compositions(n) for n in range(1, 18)) == UT_LISTED
    return 2 * len(UT_LISTED)


@check("counting", "three-way NTr agreement k<=20", "full")
def _three_way() -> int:
    d = rules.compiled_dfa(DEFAULT_RULE)
    for k in range(21):
        tr, ntr = counting.count_by_enumeration(k)
        assert tr + ntr == 2**k
        assert ntr == counting.count_by_transfer_matrix(k, d) == counting.recurrence_ntr(k), k
    return 21


@check("counting", "recurrence, shift and composition identities k<=40", "full")
def _identities() -> int:
    d = rules.compiled_dfa(DEFAULT_RULE)
    ntr = [counting.count_by_transfer_matrix(k, d) for k in range(41)]
    for k in range(5, 41):
        assert ntr[k] == ntr[k - 1] + ntr[k - 3] + ntr[k - 4] + ntr[k - 5], k
    for k in range(41):
        assert counting.recurrence_ntr(k) == counting.ut(k + 2) == ntr[k], k
    for n in range(1, 41):
        assert counting.count_compositions(n) == counting.ut(n), n
    return 36 + 41 + 40


# tournament_core


@check("tournament_core", "basic score vectors and self-duality")
def _basics() -> int:
    expected = {1: (0,), 3: (1, 1, 1), 4: (1, 1, 2, 2), 5: (2, 2, 2, 2, 2)}
    for size, sv in expected.items():
        t = tournament.basic_tournament(size)
        assert tournament.score_vector(t) == sv, size
        assert tournament.is_isomorphic(t, tournament.dual(t)), size
    return len(expected)


@check("tournament_core", "census n<=5")
def _census_small() -> int:
    for n in range(1, 6):
        c = tournament.unique_census(n)
        assert c.count == UT_LISTED[n - 1], n
    c5 = tournament.unique_census(5)
    assert c5.non_unique_score_vectors == {(1, 2, 2, 2, 3), (1, 1, 2, 3, 3)}
    assert c5.class_count((1, 2, 2, 2, 3)) == 3
    return 5


@check("tournament_core", "census n<=7", "full")
def _census_full() -> int:
    for n in range(1, 8):
        assert tournament.unique_census(n).count == UT_LISTED[n - 1], n
    return 7


@check("tournament_core", "canonical form iff isomorphic n<=5", "full")
def _canonical() -> int:
    n_checked = 0
    for n in range(1, 6):
        reps: dict[str, tournament.Tournament] = {}
        for code in range(1 << (n * (n - 1) // 2)):
            t = tournament.Tournament.from_code(n, code)
            form = tournament.canonical_form(t)
            if form in reps:
                assert tournament.is_isomorphic(t, reps[form]), (n, code)
            else:
                reps[form] = t
            n_checked += 1
        for a, b in itertools.combinations(reps.values(), 2):
            assert not tournament.is_isomorphic(a, b), (n, a, b)
    return n_checked


@check("tournament_core", "uniqueness characterisation n<=6", "full")
def _characterisation() -> int:
    n_checked = 0
    for n in range(1, 7):
        bad = tournament.unique_census(n).non_unique_score_vectors
        for code in range(1 << (n * (n - 1) // 2)):
            t = tournament.Tournament.from_code(n, code)
            assert tournament.is_unique(t) == (tournament.score_vector(t) not in bad), (n, code)
            n_checked += 1
    return n_checked


@check("tournament_core", "dual reverses decomposition n<=8", "full")
def _dual_reverse() -> int:
    rng = random.Random(0)
    n_checked = 0
    for n in range(1, 9):
        for parts in _compositions(n):
            t = tournament.rebuild(parts)
            perm = list(range(n))
            rng.shuffle(perm)
            t = t.relabel(perm)
            assert tournament.decompose_unique(tournament.dual(t)) == list(reversed(tournament.decompose_unique(t)))
            assert tournament.is_isomorphic(tournament.rebuild(tournament.decompose_unique(t)), t)
            n_checked += 1
    return n_checked


def _compositions(n: int):
    if n == 0:
        yield []
        return
    for p in tournament.BASIC_SIZES:
        if p <= n:
            for rest in _compositions(n - p):
                yield [p, *rest]


# bijection


@check("bijection", "decomposition table and score adjustments")
def _table() -> int:
    for s, (il, blocks) in DECOMPOSITION_TABLE.items():
        assert bijection.il_from_nontracking(s) == il
        assert bijection.decompose_blocks(il) == blocks, il
    assert bijection.score_vector_from_string("00101") == (2, 2, 2, 2, 2)
    assert bijection.score_vector_from_string("0") == (0,)
    return len(DECOMPOSITION_TABLE) + 2


def _roundtrips(max_len: int) -> int:
    n = 0
    for k in range(1, max_len + 1):
        for il in bijection.il_strings(k):
            assert "".join(bijection.decompose_blocks(il)) == il, f"codec round-trip {il}"
            n += 1
    return n


@check("bijection", "codec round-trip len<=8")
def _codec_quick() -> int:
    return _roundtrips(8)


@check("bijection", "tournament round-trip, scores and duality len<=8")
def _bijection_quick() -> int:
    n = 0
    for k in range(1, 9):
        for il in bijection.il_strings(k):
            t = bijection.string_to_tournament(il)
            assert t.n == k
            assert bijection.tournament_to_string(t) == il, il
            assert bijection.score_vector_from_string(il) == tournament.score_vector(t), il
            assert tournament.is_isomorphic(bijection.string_to_tournament(bijection.string_dual(il)), tournament.dual(t)), il
            n += 1
    return n


@check("bijection", "codec round-trip len<=12", "full")
def _codec_full() -> int:
    return _roundtrips(12)


@check("bijection", "unique decodability len<=12", "full")
def _unique_decodability() -> int:
    n = 0
    for k in range(13):
        for s in rules.all_strings(k):
            assert _factorisations(s) <= 1, s
            n += 1
    return n


def _factorisations(s: str) -> int:
    ways = [1] + [0] * len(s)
    for end in range(1, len(s) + 1):
        ways[end] = sum(ways[end - len(b)] for b in bijection.BLOCKS if s.endswith(b, 0, end))
    return ways[len(s)]


@check("bijection", "census tournaments map back n<=6", "full")
def _census_roundtrip() -> int:
    n_checked = 0
    for n in range(1, 7):
        for t in tournament.unique_census(n).unique_tournaments():
            il = bijection.tournament_to_string(t)
            assert bijection.is_il_string(il), il
            assert tournament.is_isomorphic(bijection.string_to_tournament(il), t)
            n_checked += 1
    return n_checked


@check("bijection", "score consistency len<=10", "full")
def _scores_full() -> int:
    n = 0
    for k in range(1, 11):
        for il in bijection.il_strings(k):
            assert bijection.score_vector_from_string(il) == tournament.score_vector(bijection.string_to_tournament(il)), il
            n += 1
    return n


@check("bijection", "IL string counts len<=12", "full")
def _il_counts() -> int:
    for k in range(1, 13):
        assert sum(1 for _ in bijection.il_strings(k)) == counting.ut(k), k
    return 12


@check("bijection", "champion and absolute loser", "full")
def _champion() -> int:
    n = 0
    for k in range(1, 11):
        for il in bijection.il_strings(k):
            t = bijection.string_to_tournament(il)
            if il.endswith("0"):
                assert max(t.scores()) == k - 1, il
            if il.startswith("000"):
                assert t.scores()[0] == 0, il
            n += 1
    return n


# oeis_client


@check("oeis_client", "offline A000570 snapshot")
def _oeis() -> int:
    bfile = oeis.fetch_bfile("A000570", offline=True)
    report = oeis.compare(counting.ut_table(len(bfile.entries)), bfile)
    assert report.full_match, report.summary()
    return len(report.matches)


@dataclass(frozen=True)
class Outcome:
    check: Check
    ok: bool
    items: int
    seconds: float
    error: str = ""


def run_checks(level: str = "quick") -> list[Outcome]:
    if level not in ("quick", "full"):
        raise ValueError(f"level must be quick or full, got {level!r}")
    selected = [c for c in CHECKS if level == "full" or c.level == "quick"]
    outcomes = []
    for c in selected:
        t0 = time.perf_counter()
        try:
            items = c.fn()
            outcomes.append(Outcome(c, True, items, time.perf_counter() - t0))
        except Exception as exc:  # noqa: BLE001 - every failure is reported, not raised
            outcomes.append(Outcome(c, False, 0, time.perf_counter() - t0, f"{type(exc).__name__}: {exc}"))
    return outcomes
