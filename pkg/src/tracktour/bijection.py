"""Initial-loss non-tracking strings and unique tournaments.

An initial-loss string is a non-tracking string (rule 3,5,2) that starts
with two misses, or the single string ``"0"``.  Each one factors uniquely
into the blocks ``0``, ``001``, ``0011``, ``00101``, which stand for the
basic tournaments on 1, 3, 4 and 5 nodes.  The leftmost block is the
bottom (all-losing) group of the composition.
"""

from __future__ import annotations

import json
from functools import reduce
from typing import Iterator

from .counting import recurrence_ntr
from .errors import InputTracks, NotDecomposable, TooShort
from .rules import DEFAULT_RULE, all_strings, check_binary, compiled_dfa, run_dfa
from .tournament import Tournament, basic_tournament, compose, decompose_unique

BLOCKS = ("0", "001", "0011", "00101")
BLOCK_BY_SIZE = {len(b): b for b in BLOCKS}

# per-position score offsets within each block
SCORE_ADJUSTMENTS = {
    "0": (0,),
    "001": (1, 0, -1),
    "0011": (1, 0, 0, -1),
    "00101": (2, 1, 0, -1, -2),
}


def is_nontracking(s: str) -> bool:
    return not run_dfa(compiled_dfa(DEFAULT_RULE), s)


def is_il_string(s: str) -> bool:
    check_binary(s)
    if s == "0":
        return True
    return len(s) >= 2 and s.startswith("00") and is_nontracking(s)


def il_from_nontracking(s: str) -> str:
    check_binary(s)
    if not is_nontracking(s):
        raise InputTracks(f"{s!r} is a tracking string")
    return "00" + s


def strip_initial_loss(il: str) -> str:
    if il == "0":
        raise TooShort('"0" has no non-tracking preimage')
    if not is_il_string(il):
        raise NotDecomposable(f"{il!r} is not an initial-loss non-tracking string")
    return il[2:]


def decompose_blocks(il: str) -> list[str]:
    """Unique factorisation into basic blocks, peeled off from the right.

    Read backwards the blocks are ``0``, ``100``, ``1100``, ``10100``, a
    prefix-free set, so at each step at most one block fits.
    """
    check_binary(il)
    if not il:
        raise NotDecomposable("the empty string is not an initial-loss string")
    blocks = []
    end = len(il)
    while end:
        for b in BLOCKS:
            if il.endswith(b, 0, end):
                blocks.append(b)
                end -= len(b)
                break
        else:
            raise NotDecomposable(f"{il!r} has no basic block ending at position {end}")
    blocks.reverse()
    return blocks


def blocks_to_json(blocks: list[str]) -> str:
    return json.dumps(blocks)


def blocks_from_json(text: str) -> list[str]:
    blocks = json.loads(text)
    if not isinstance(blocks, list) or any(b not in BLOCKS for b in blocks):
        raise NotDecomposable(f"not a list of basic blocks: {text!r}")
    return blocks


def string_to_tournament(il: str) -> Tournament:
    blocks = decompose_blocks(il)
    return reduce(compose, (basic_tournament(len(b)) for b in blocks))


def tournament_to_string(t: Tournament) -> str:
    return "".join(BLOCK_BY_SIZE[size] for size in decompose_unique(t))


def score_vector_from_string(il: str) -> tuple[int, ...]:
    """Scores read straight off the string: position plus block adjustment.

    Positions are 0-based across the whole string.
    """
    scores = []
    pos = 0
    for b in decompose_blocks(il):
        for adj in SCORE_ADJUSTMENTS[b]:
            scores.append(pos + adj)
            pos += 1
    return tuple(sorted(scores))


def raw_scores_from_string(il: str) -> tuple[int, ...]:
    """Per-node scores in string order (node ``i`` is character ``i``)."""
    out = []
    pos = 0
    for b in decompose_blocks(il):
        for adj in SCORE_ADJUSTMENTS[b]:
            out.append(pos + adj)
            pos += 1
    return tuple(out)


def string_dual(il: str) -> str:
    return "".join(reversed(decompose_blocks(il)))


def il_strings(k: int) -> Iterator[str]:
    """All initial-loss strings of length ``k`` in lexicographic order."""
    if k == 1:
        yield "0"
    elif k >= 2:
        d = compiled_dfa(DEFAULT_RULE)
        for s in all_strings(k - 2):
            if not run_dfa(d, s):
                yield "00" + s


def count_il_strings(k: int) -> int:
    """Closed count: 1 for k = 1, otherwise NTr(k - 2)."""
    if k < 1:
        return 0
    return 1 if k == 1 else recurrence_ntr(k - 2)
