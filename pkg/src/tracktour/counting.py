"""Counting tracking and non-tracking strings, and unique tournaments.

Three independent routes to NTr(k): brute-force enumeration through the
compiled automaton, a transfer-matrix walk over automaton states, and the
order-5 linear recurrence.  UT(n) is NTr(n - 2) shifted, and is also the
number of ordered compositions of ``n`` into parts 1, 3, 4, 5.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

import numpy as np

from .errors import RangeTooLarge
from .rules import DEFAULT_RULE, Dfa, TrackingRule, all_strings, compiled_dfa, run_dfa

MAX_ENUMERATION_K = 24

NTR_SEEDS = (1, 2, 4, 7, 11, 18)
RECURRENCE_LAGS = (1, 3, 4, 5)
BLOCK_SIZES = (1, 3, 4, 5)


def count_by_enumeration(k: int, rule: TrackingRule = DEFAULT_RULE) -> tuple[int, int]:
    """Classify every length-``k`` string with the compiled automaton.

    Returns ``(tracking, non_tracking)``.  The strings are run in bulk: one
    state per string, advanced one bit position at a time.
    """
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    if k > MAX_ENUMERATION_K:
        raise RangeTooLarge(f"enumeration limited to k <= {MAX_ENUMERATION_K}, got {k}")
    d = compiled_dfa(rule)
    table = np.array(d.transitions, dtype=np.int32)
    words = np.arange(1 << k, dtype=np.int64)
    states = np.full(words.shape, d.start, dtype=np.int32)
    for pos in range(k - 1, -1, -1):
        states = table[states, (words >> pos) & 1]
    tracking = int(np.count_nonzero(states == d.tracked))
    return tracking, (1 << k) - tracking


def nontracking_strings(k: int, rule: TrackingRule = DEFAULT_RULE) -> list[str]:
    """Explicit list of length-``k`` non-tracking strings, lexicographic."""
    if k > MAX_ENUMERATION_K:
        raise RangeTooLarge(f"enumeration limited to k <= {MAX_ENUMERATION_K}, got {k}")
    d = compiled_dfa(rule)
    return [s for s in all_strings(k) if not run_dfa(d, s)]


def count_by_transfer_matrix(k: int, d: Dfa | None = None) -> int:
    """Number of length-``k`` strings that never reach ``d.tracked``."""
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    if d is None:
        d = compiled_dfa(DEFAULT_RULE)
    occupancy = [0] * d.state_count
    occupancy[d.start] = 1
    for _ in range(k):
        nxt = [0] * d.state_count
        for q, c in enumerate(occupancy):
            if c and q != d.tracked:
                a, b = d.transitions[q]
                nxt[a] += c
                nxt[b] += c
        occupancy = nxt
    return sum(c for q, c in enumerate(occupancy) if q != d.tracked)


def tracking_counts(k: int, rule: TrackingRule = DEFAULT_RULE) -> tuple[int, int]:
    """``(Tr(k), NTr(k))`` via the transfer matrix; works for any ``k``."""
    ntr = count_by_transfer_matrix(k, compiled_dfa(rule))
    return (1 << k) - ntr, ntr


def recurrence_ntr(k: int) -> int:
    """NTr(k) for the 3-out-of-5-loss-2 rule.

    NTr(k) = NTr(k-1) + NTr(k-3) + NTr(k-4) + NTr(k-5), seeded with
    NTr(0..5) = 1, 2, 4, 7, 11, 18.
    """
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    if k < len(NTR_SEEDS):
        return NTR_SEEDS[k]
    window = list(NTR_SEEDS)
    for _ in range(len(NTR_SEEDS), k + 1):
        window.append(sum(window[-lag] for lag in RECURRENCE_LAGS))
        window.pop(0)
    return window[-1]


def ut(n: int) -> int:
    """Number of unique tournaments on ``n`` nodes (offset 1)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n == 1:
        return 1
    return recurrence_ntr(n - 2)


def count_compositions(n: int, parts: tuple[int, ...] = BLOCK_SIZES) -> int:
    """Ordered compositions of ``n`` with every part drawn from ``parts``."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    ways = [1] + [0] * n
    for total in range(1, n + 1):
        ways[total] = sum(ways[total - p] for p in parts if p <= total)
    return ways[n]


@dataclass(frozen=True)
class SequenceTable:
    name: str
    offset: int
    terms: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(int(t) for t in self.terms))
        if not self.terms:
            raise ValueError("sequence table needs at least one term")
        if any(t < 0 for t in self.terms):
            raise ValueError("sequence terms must be non-negative")

    def __getitem__(self, index: int) -> int:
        i = index - self.offset
        if not 0 <= i < len(self.terms):
            raise IndexError(index)
        return self.terms[i]

    def indices(self) -> range:
        return range(self.offset, self.offset + len(self.terms))

    def items(self):
        return zip(self.indices(), self.terms)

    def to_json(self) -> str:
        return json.dumps({"name": self.name, "offset": self.offset, "terms": list(self.terms)})

    @classmethod
    def from_json(cls, text: str) -> "SequenceTable":
        obj = json.loads(text)
        return cls(obj["name"], int(obj["offset"]), tuple(obj["terms"]))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "value"])
        w.writerows(self.items())
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, name: str) -> "SequenceTable":
        rows = list(csv.DictReader(io.StringIO(text)))
        ks = [int(r["k"]) for r in rows]
        if ks != list(range(ks[0], ks[0] + len(ks))):
            raise ValueError("csv indices must be contiguous")
        return cls(name, ks[0], tuple(int(r["value"]) for r in rows))

    def to_bfile(self) -> str:
        return "".join(f"{i} {v}\n" for i, v in self.items())


def ntr_table(max_k: int, method: str = "matrix", rule: TrackingRule = DEFAULT_RULE) -> SequenceTable:
    """NTr(0..max_k) computed by one of ``enum``, ``matrix``, ``recurrence``."""
    if method == "enum":
        terms = [count_by_enumeration(k, rule)[1] for k in range(max_k + 1)]
    elif method == "matrix":
        d = compiled_dfa(rule)
        terms = [count_by_transfer_matrix(k, d) for k in range(max_k + 1)]
    elif method == "recurrence":
        if rule != DEFAULT_RULE:
            raise ValueError("the recurrence is only known for rule 3,5,2")
        terms = [recurrence_ntr(k) for k in range(max_k + 1)]
    else:
        raise ValueError(f"unknown method {method!r}")
    return SequenceTable(f"NTr[{rule}]/{method}", 0, tuple(terms))


def ut_table(max_n: int) -> SequenceTable:
    return SequenceTable("UT", 1, tuple(ut(n) for n in range(1, max_n + 1)))
