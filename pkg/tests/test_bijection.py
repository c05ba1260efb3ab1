import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tracktour.bijection import (
    BLOCKS,
    blocks_from_json,
    blocks_to_json,
    count_il_strings,
    decompose_blocks,
    il_from_nontracking,
    il_strings,
    is_il_string,
    raw_scores_from_string,
    score_vector_from_string,
    string_dual,
    string_to_tournament,
    strip_initial_loss,
    tournament_to_string,
)
from tracktour.counting import recurrence_ntr, ut
from tracktour.errors import InputTracks, NotDecomposable, NotUnique, TooShort
from tracktour.rules import is_tracking_oracle
from tracktour.tournament import (
    Tournament,
    basic_tournament,
    compose,
    dual,
    is_isomorphic,
    score_vector,
    unique_census,
)

from .conftest import binary_strings


def brute_il_strings(k):
    """Straight from the definition: non-tracking, no detection in the first two slots."""
    return [
        s
        for s in binary_strings(k)
        if len(s) == k and k >= 1 and "1" not in s[:2] and not is_tracking_oracle(s)
    ]


def factorisations(s):
    if not s:
        return [[]]
    out = []
    for b in BLOCKS:
        if s.startswith(b):
            out += [[b, *rest] for rest in factorisations(s[len(b):])]
    return out


ALL_IL = [il for k in range(1, 13) for il in il_strings(k)]
SHORT_IL = [il for il in ALL_IL if len(il) <= 8]


def test_il_strings_match_definition():
    for k in range(1, 11):
        assert list(il_strings(k)) == brute_il_strings(k)


@pytest.mark.parametrize("s, il", [("1", "001"), ("101", "00101"), ("", "00"), ("01", "0001")])
def test_il_from_nontracking(s, il):
    assert il_from_nontracking(s) == il
    assert strip_initial_loss(il) == s


def test_il_from_tracking_string_rejected():
    with pytest.raises(InputTracks):
        il_from_nontracking("111")


def test_strip_errors():
    with pytest.raises(TooShort):
        strip_initial_loss("0")
    with pytest.raises(NotDecomposable):
        strip_initial_loss("0111")


@pytest.mark.parametrize(
    "il, blocks",
    [
        ("0001", ["0", "001"]),
        ("00011", ["0", "0011"]),
        ("00001", ["0", "0", "001"]),
        ("001", ["001"]),
        ("0011", ["0011"]),
        ("00101", ["00101"]),
        ("00010011", ["0", "001", "0011"]),
    ],
)
def test_decompose_examples(il, blocks):
    assert decompose_blocks(il) == blocks
    assert "".join(blocks) == il
    assert factorisations(il) == [blocks]


@pytest.mark.parametrize("bad", ["", "1", "01", "0111", "00111", "10"])
def test_decompose_rejects(bad):
    with pytest.raises(NotDecomposable):
        decompose_blocks(bad)


def test_codec_round_trip_exhaustive():
    for il in ALL_IL:
        assert "".join(decompose_blocks(il)) == il


def test_unique_decodability():
    for s in binary_strings(12):
        assert len(factorisations(s)) <= 1, s


def test_decodable_strings_are_exactly_il_strings():
    for s in binary_strings(12):
        assert (len(factorisations(s)) == 1 and s != "") == is_il_string(s), s


def test_block_json():
    assert blocks_to_json(["0", "001"]) == '["0", "001"]'
    assert blocks_from_json('["0", "001"]') == ["0", "001"]
    with pytest.raises(NotDecomposable):
        blocks_from_json('["0111"]')


def test_string_to_tournament_examples():
    assert score_vector(string_to_tournament("0")) == (0,)
    assert string_to_tournament("00101") == basic_tournament(5)
    assert string_to_tournament("0001") == compose(basic_tournament(1), basic_tournament(3))
    assert score_vector(string_to_tournament("0001")) == (0, 2, 2, 2)


def test_tournament_to_string_examples(census5):
    assert tournament_to_string(basic_tournament(3)) == "001"
    assert tournament_to_string(compose(basic_tournament(1), basic_tournament(3))) == "0001"
    fig2 = [Tournament.from_code(5, int(f, 2)) for f in census5.classes[(1, 2, 2, 2, 3)]]
    for t in fig2:
        with pytest.raises(NotUnique):
            tournament_to_string(t)


def test_bijection_round_trips():
    for il in SHORT_IL:
        t = string_to_tournament(il)
        assert t.n == len(il)
        assert tournament_to_string(t) == il


def test_census_tournaments_round_trip():
    for n in range(1, 7):
        strings = set()
        for t in unique_census(n).unique_tournaments():
            il = tournament_to_string(t)
            assert is_il_string(il)
            assert is_isomorphic(string_to_tournament(il), t)
            strings.add(il)
        assert strings == set(il_strings(n))


@pytest.mark.parametrize("il, sv", [("00101", (2, 2, 2, 2, 2)), ("0", (0,)), ("00011", (0, 2, 2, 3, 3))])
def test_score_examples(il, sv):
    assert score_vector_from_string(il) == sv


def test_score_consistency():
    for il in ALL_IL:
        if len(il) > 10:
            break
        t = string_to_tournament(il)
        assert score_vector_from_string(il) == score_vector(t)
        assert raw_scores_from_string(il) == t.scores()


@pytest.mark.parametrize("il, d", [("0001", "0010"), ("001", "001"), ("00010011", "00110010")])
def test_string_dual_examples(il, d):
    assert string_dual(il) == d


def test_dual_example_scores():
    # {0,2,2,2} on 4 nodes dualises to {3-x}
    assert score_vector_from_string(string_dual("0001")) == (1, 1, 1, 3)


def test_duality_commutes():
    for il in SHORT_IL:
        d = string_dual(il)
        assert is_il_string(d)
        assert string_dual(d) == il
        assert is_isomorphic(string_to_tournament(d), dual(string_to_tournament(il)))


def test_il_counts():
    for k in range(1, 13):
        n = sum(1 for il in ALL_IL if len(il) == k)
        assert n == ut(k) == count_il_strings(k)
        if k >= 2:
            assert n == recurrence_ntr(k - 2)


def test_champion_and_absolute_loser():
    for il in ALL_IL:
        scores = raw_scores_from_string(il)
        if il.endswith("0"):
            assert max(scores) == len(il) - 1
        if il.startswith("000"):
            assert min(scores) == 0 and scores[0] == 0


@given(st.lists(st.sampled_from(BLOCKS), min_size=1, max_size=12))
def test_concatenated_blocks_decode(blocks):
    s = "".join(blocks)
    assert decompose_blocks(s) == blocks
    assert is_il_string(s)
    assert string_dual(s) == "".join(reversed(blocks))
    t = string_to_tournament(s)
    assert score_vector_from_string(s) == score_vector(t)
    assert tournament_to_string(t) == s


def test_zero_runs_scores():
    # runs of misses are chains of single-node blocks: a transitive tournament
    for k in range(1, 8):
        assert raw_scores_from_string("0" * k) == tuple(range(k))


def test_every_basic_window_is_listed():
    assert sorted(map(len, BLOCKS)) == [1, 3, 4, 5]
    assert all(b == "0" or b.startswith("00") for b in BLOCKS)
    assert list(itertools.chain.from_iterable(decompose_blocks(b) for b in BLOCKS)) == list(BLOCKS)
