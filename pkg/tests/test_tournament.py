import itertools
import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tracktour.errors import InvalidBasicSize, InvalidTournament, NotUnique, SizeTooLarge
from tracktour.tournament import (
    BASIC_SIZES,
    Tournament,
    basic_tournament,
    canonical_form,
    compose,
    condensation,
    decompose_unique,
    dual,
    is_isomorphic,
    is_unique,
    rebuild,
    score_vector,
    unique_census,
)

SINGLE = basic_tournament(1)
CYCLE = Tournament.from_edges(3, [(0, 1), (1, 2), (2, 0)])
CHAIN3 = Tournament.transitive(3)


def all_tournaments(n):
    for code in range(1 << (n * (n - 1) // 2)):
        yield Tournament.from_code(n, code)


def brute_isomorphic(a, b):
    """Try every node bijection."""
    if a.n != b.n:
        return False
    return any(
        all(a.beats(i, j) == b.beats(p[i], p[j]) for i in range(a.n) for j in range(a.n))
        for p in itertools.permutations(range(a.n))
    )


def brute_classes(tournaments):
    reps = []
    for t in tournaments:
        if not any(brute_isomorphic(t, r) for r in reps):
            reps.append(t)
    return reps


def brute_reach(t, i):
    seen, stack = {i}, [i]
    while stack:
        u = stack.pop()
        for v in range(t.n):
            if t.beats(u, v) and v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


@pytest.fixture(scope="module")
def fig2():
    group = [t for t in all_tournaments(5) if score_vector(t) == (1, 2, 2, 2, 3)]
    return brute_classes(group)


def shuffled(t, seed):
    perm = list(range(t.n))
    random.Random(seed).shuffle(perm)
    return t.relabel(perm)


@st.composite
def tournaments(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    code = draw(st.integers(0, (1 << (n * (n - 1) // 2)) - 1))
    return Tournament.from_code(n, code)


def test_score_vector_examples():
    assert score_vector(CYCLE) == (1, 1, 1)
    assert score_vector(CHAIN3) == (0, 1, 2)
    assert score_vector(SINGLE) == (0,)


def test_invalid_tournaments():
    with pytest.raises(InvalidTournament):
        Tournament(2, (0, 0))
    with pytest.raises(InvalidTournament):
        Tournament(2, (0b10, 0b01))
    with pytest.raises(InvalidTournament):
        Tournament(1, (1,))
    with pytest.raises(InvalidTournament):
        Tournament(0, ())


def test_compose_examples():
    t = compose(SINGLE, CYCLE)
    assert score_vector(t) == (0, 2, 2, 2)
    assert [sum(t.beats(i, j) for j in range(4)) for i in range(4)] == [0, 2, 2, 2]
    assert score_vector(compose(SINGLE, SINGLE)) == (0, 1)


@given(tournaments(4), tournaments(4))
def test_compose_score_formula(a, b):
    expected = sorted(a.scores() + tuple(s + a.n for s in b.scores()))
    assert list(score_vector(compose(a, b))) == expected


@given(tournaments(3), tournaments(3), tournaments(3))
def test_compose_associative(a, b, c):
    assert is_isomorphic(compose(compose(a, b), c), compose(a, compose(b, c)))


def test_dual_examples():
    assert is_isomorphic(dual(CYCLE), CYCLE)
    assert score_vector(dual(CHAIN3)) == (0, 1, 2)


@given(tournaments())
def test_dual_involution_and_scores(t):
    assert dual(dual(t)) == t
    assert score_vector(dual(t)) == tuple(sorted(t.n - 1 - x for x in t.scores()))


def test_isomorphism_examples(fig2):
    assert is_isomorphic(CYCLE, shuffled(CYCLE, 1))
    assert not is_isomorphic(CYCLE, CHAIN3)
    assert len(fig2) == 3
    for a, b in itertools.combinations(fig2, 2):
        assert not is_isomorphic(a, b)


@given(tournaments(6), st.randoms())
def test_isomorphic_to_relabelling(t, rnd):
    perm = list(range(t.n))
    rnd.shuffle(perm)
    assert is_isomorphic(t, t.relabel(perm))
    assert canonical_form(t) == canonical_form(t.relabel(perm))


def test_isomorphism_against_brute_force_n4():
    ts = list(all_tournaments(4))
    rng = random.Random(3)
    for _ in range(300):
        a, b = rng.choice(ts), rng.choice(ts)
        assert is_isomorphic(a, b) == brute_isomorphic(a, b)


def test_canonical_form_examples(fig2):
    assert len({canonical_form(t) for t in all_tournaments(3)}) == 2
    assert len({canonical_form(t) for t in fig2}) == 3
    with pytest.raises(SizeTooLarge):
        canonical_form(Tournament.transitive(9))
    assert canonical_form(Tournament.transitive(8)) == canonical_form(shuffled(Tournament.transitive(8), 0))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_canonical_form_iff_isomorphic(n):
    by_form = {}
    for t in all_tournaments(n):
        by_form.setdefault(canonical_form(t), []).append(t)
    for group in by_form.values():
        assert all(is_isomorphic(group[0], t) for t in group)
    reps = [g[0] for g in by_form.values()]
    assert all(not is_isomorphic(a, b) for a, b in itertools.combinations(reps, 2))
    # frozen from brute_classes: non-isomorphic tournaments on 1..5 nodes
    assert len(by_form) == [1, 1, 2, 4, 12][n - 1]


def test_brute_class_counts():
    assert [len(brute_classes(all_tournaments(n))) for n in range(1, 5)] == [1, 1, 2, 4]


@pytest.mark.parametrize(
    "size, sv", [(1, (0,)), (3, (1, 1, 1)), (4, (1, 1, 2, 2)), (5, (2, 2, 2, 2, 2))]
)
def test_basic_tournaments(size, sv):
    t = basic_tournament(size)
    assert score_vector(t) == sv
    assert is_isomorphic(t, dual(t))
    assert brute_isomorphic(t, dual(t))


def test_basic_edges_pinned():
    t4 = basic_tournament(4)
    assert set(t4.edges()) == {(0, 1), (1, 2), (2, 0), (3, 0), (3, 1), (2, 3)}
    t5 = basic_tournament(5)
    assert all(t5.beats(i, (i + 1) % 5) and t5.beats(i, (i + 2) % 5) for i in range(5))


def test_basic_invalid_size():
    for size in (0, 2, 6):
        with pytest.raises(InvalidBasicSize):
            basic_tournament(size)


def test_regular_five_is_unique():
    regular = [t for t in all_tournaments(5) if score_vector(t) == (2, 2, 2, 2, 2)]
    assert regular
    assert all(is_isomorphic(t, basic_tournament(5)) for t in regular)
    assert all(brute_isomorphic(t, basic_tournament(5)) for t in regular[:5])


def test_condensation_examples():
    assert condensation(CHAIN3) == [frozenset({0}), frozenset({1}), frozenset({2})]
    assert condensation(CYCLE) == [frozenset({0, 1, 2})]
    assert condensation(compose(SINGLE, CYCLE)) == [frozenset({0}), frozenset({1, 2, 3})]


@given(tournaments())
def test_condensation_against_reachability(t):
    comps = condensation(t)
    assert sorted(v for c in comps for v in c) == list(range(t.n))
    reach = [brute_reach(t, i) for i in range(t.n)]
    for c in comps:
        for u in c:
            assert {v for v in range(t.n) if u in reach[v] and v in reach[u]} == set(c)
    for lo, hi in itertools.combinations(range(len(comps)), 2):
        assert all(t.beats(v, u) for u in comps[lo] for v in comps[hi])


def test_decompose_examples(fig2):
    assert decompose_unique(CHAIN3) == [1, 1, 1]
    assert decompose_unique(basic_tournament(5)) == [5]
    for t in fig2:
        with pytest.raises(NotUnique):
            decompose_unique(t)


def test_dual_reverses_decomposition():
    def comps(n):
        if n == 0:
            yield []
            return
        for p in BASIC_SIZES:
            if p <= n:
                for rest in comps(n - p):
                    yield [p, *rest]

    for n in range(1, 9):
        for i, parts in enumerate(comps(n)):
            t = shuffled(rebuild(parts), i)
            assert decompose_unique(t) == parts
            assert decompose_unique(dual(t)) == parts[::-1]
            assert is_isomorphic(rebuild(decompose_unique(t)), t)


@pytest.mark.parametrize("n", range(1, 7))
def test_characterisation_consistent_with_census(n):
    bad = unique_census(n).non_unique_score_vectors
    for t in all_tournaments(n):
        assert is_unique(t) == (score_vector(t) not in bad)


@pytest.mark.parametrize("n, count", [(1, 1), (2, 1), (3, 2), (4, 4), (5, 7), (6, 11)])
def test_census_counts(n, count):
    assert unique_census(n).count == count


def test_census_five(census5, fig2):
    assert census5.non_unique_score_vectors == {(1, 2, 2, 2, 3), (1, 1, 2, 3, 3)}
    assert census5.class_count((1, 2, 2, 2, 3)) == 3
    assert census5.class_count((1, 1, 2, 3, 3)) == len(
        brute_classes(t for t in all_tournaments(5) if score_vector(t) == (1, 1, 2, 3, 3))
    )
    assert unique_census(4).non_unique_score_vectors == set()
    forms = set(census5.classes[(1, 2, 2, 2, 3)])
    assert forms == {canonical_form(t) for t in fig2}


def test_census_unique_tournaments_are_unique():
    for n in range(1, 7):
        ts = unique_census(n).unique_tournaments()
        assert len(ts) == unique_census(n).count
        assert all(is_unique(t) for t in ts)


def test_census_size_guard():
    for n in (0, 8):
        with pytest.raises(SizeTooLarge):
            unique_census(n)


@given(tournaments())
def test_serialisation_round_trips(t):
    assert Tournament.from_hex(t.to_hex()) == t
    assert Tournament.from_json(t.to_json()) == t
    assert Tournament.from_code(t.n, t.code()) == t


def test_serialisation_formats():
    assert SINGLE.to_hex() == "1:"
    assert CHAIN3.to_hex() == "3:0"
    assert json.loads(CYCLE.to_json()) == {"n": 3, "edges": [[0, 1], [2, 0], [1, 2]]}
    dot = CYCLE.to_dot()
    assert dot.startswith("digraph T {") and "0 -> 1;" in dot and "2 -> 0;" in dot
    for bad in ("3:zz", "3", "3:00", "3:1"):
        with pytest.raises(InvalidTournament):
            Tournament.from_hex(bad)
    with pytest.raises(InvalidTournament):
        Tournament.from_json('{"n": 2, "edges": []}')
