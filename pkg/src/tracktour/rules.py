"""Tracking rules "m out of n with loss l" and their automata.

A binary observation string tracks when some window of at most ``n``
consecutive observations holds ``m`` or more detections and no run of ``l``
consecutive misses.  Windows are normalised to start and end on a detection;
trimming boundary misses never lowers the detection count.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .errors import InvalidBinaryString, InvalidRule, WindowTooLarge

MAX_WINDOW = 16


@dataclass(frozen=True)
class TrackingRule:
    m: int = 3
    n: int = 5
    l: int = 2  # noqa: E741

    def __post_init__(self):
        for name in ("m", "n", "l"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool):
                raise InvalidRule(f"{name} must be an integer, got {value!r}")
        if not 1 <= self.m <= self.n:
            raise InvalidRule(f"need 1 <= m <= n, got m={self.m}, n={self.n}")
        if not 1 <= self.l <= self.n:
            raise InvalidRule(f"need 1 <= l <= n, got l={self.l}, n={self.n}")

    @classmethod
    def parse(cls, text: str) -> "TrackingRule":
        """Parse the ``"m,n,l"`` text form, e.g. ``"3,5,2"``."""
        parts = text.split(",")
        if len(parts) != 3:
            raise InvalidRule(f"rule must look like 'm,n,l', got {text!r}")
        try:
            m, n, l = (int(p.strip()) for p in parts)  # noqa: E741
        except ValueError:
            raise InvalidRule(f"rule must look like 'm,n,l', got {text!r}") from None
        return cls(m, n, l)

    def __str__(self) -> str:
        return f"{self.m},{self.n},{self.l}"


DEFAULT_RULE = TrackingRule()


def check_binary(s: str) -> str:
    if not isinstance(s, str) or any(c not in "01" for c in s):
        raise InvalidBinaryString(f"expected a string over '0'/'1', got {s!r}")
    return s


def _window_ok(w: str, rule: TrackingRule) -> bool:
    return (
        len(w) <= rule.n
        and w[0] == "1"
        and w[-1] == "1"
        and w.count("1") >= rule.m
        and "0" * rule.l not in w
    )


def is_tracking_oracle(s: str, rule: TrackingRule = DEFAULT_RULE) -> bool:
    """Reference classifier: direct scan over every window of ``s``."""
    check_binary(s)
    for i in range(len(s)):
        for j in range(i, min(len(s), i + rule.n)):
            if _window_ok(s[i : j + 1], rule):
                return True
    return False


def _tracks_at_end(w: str, rule: TrackingRule) -> bool:
    # only windows that end on the newest bit
    return any(_window_ok(w[i:], rule) for i in range(len(w)))


@dataclass(frozen=True)
class Dfa:
    """Total deterministic automaton over {0, 1}.

    ``transitions[q]`` is the pair of successors of state ``q`` on bits 0 and
    1.  ``tracked`` is the single accepting state and is absorbing.
    ``labels`` optionally names each state (the remembered suffix for
    automata produced by :func:`build_dfa`).
    """

    start: int
    tracked: int
    transitions: tuple[tuple[int, int], ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        k = len(self.transitions)
        if k == 0:
            raise ValueError("automaton needs at least one state")
        for q in (self.start, self.tracked):
            if not 0 <= q < k:
                raise ValueError(f"state {q} out of range")
        for row in self.transitions:
            if len(row) != 2 or not all(0 <= r < k for r in row):
                raise ValueError(f"bad transition row {row!r}")
        if self.transitions[self.tracked] != (self.tracked, self.tracked):
            raise ValueError("tracked state must be absorbing")

    @property
    def state_count(self) -> int:
        return len(self.transitions)

    def step(self, state: int, bit: int) -> int:
        return self.transitions[state][bit]

    def final_state(self, s: str) -> int:
        q = self.start
        for c in s:
            q = self.transitions[q][c == "1"]
        return q


def build_dfa(rule: TrackingRule = DEFAULT_RULE) -> Dfa:
    """Compile ``rule`` into an automaton whose states remember the last
    ``n - 1`` observations, plus one absorbing tracked state.

    The history starts padded with misses; a window never begins on a miss,
    so padding cannot create a track and the state set stays within
    ``2**(n-1) + 1``.
    """
    if rule.n > MAX_WINDOW:
        raise WindowTooLarge(f"window n={rule.n} exceeds {MAX_WINDOW}")
    keep = rule.n - 1
    TRACKED = "<tracked>"
    start = "0" * keep
    index = {start: 0, TRACKED: 1}
    labels = [start, TRACKED]
    rows: list[list[int]] = [[-1, -1], [1, 1]]
    queue = deque([start])
    while queue:
        suffix = queue.popleft()
        for bit in (0, 1):
            w = suffix + "01"[bit]
            if _tracks_at_end(w, rule):
                target = TRACKED
            else:
                target = w[1:]
            if target not in index:
                index[target] = len(labels)
                labels.append(target)
                rows.append([-1, -1])
                queue.append(target)
            rows[index[suffix]][bit] = index[target]
    return Dfa(
        start=0,
        tracked=1,
        transitions=tuple((a, b) for a, b in rows),
        labels=tuple(labels),
    )


def run_dfa(d: Dfa, s: str) -> bool:
    check_binary(s)
    return d.final_state(s) == d.tracked


def minimize_dfa(d: Dfa) -> Dfa:
    """Merge indistinguishable states by partition refinement (Moore).

    Unreachable states are dropped first.  States of the result are numbered
    in breadth-first order from the start state, so equal languages give
    identical automata.
    """
    reach = _reachable(d)
    # block id per state; accepting set is {tracked}
    block = {q: int(q == d.tracked) for q in reach}
    while True:
        sig = {q: (block[q], block[d.transitions[q][0]], block[d.transitions[q][1]]) for q in reach}
        ids: dict[tuple[int, int, int], int] = {}
        new_block = {q: ids.setdefault(sig[q], len(ids)) for q in sorted(reach)}
        if len(ids) == len(set(block.values())):
            break
        block = new_block
    block = new_block

    order = {block[d.start]: 0}
    queue = deque([d.start])
    rep = {block[d.start]: d.start}
    while queue:
        q = queue.popleft()
        for r in d.transitions[q]:
            if block[r] not in order:
                order[block[r]] = len(order)
                rep[block[r]] = r
                queue.append(r)
    rows: list = [None] * len(order)
    labels: list = [None] * len(order)
    for b, i in order.items():
        q = rep[b]
        rows[i] = tuple(order[block[r]] for r in d.transitions[q])
        if d.labels is not None:
            labels[i] = d.labels[q]
    if d.tracked in reach:
        tracked = order[block[d.tracked]]
    else:
        # keep an isolated absorbing state so the result is still a valid Dfa
        tracked = len(rows)
        rows.append((tracked, tracked))
        labels.append(d.labels[d.tracked] if d.labels is not None else None)
    return Dfa(
        start=0,
        tracked=tracked,
        transitions=tuple(rows),
        labels=tuple(labels) if d.labels is not None else None,
    )


def _reachable(d: Dfa) -> set[int]:
    seen = {d.start}
    queue = deque([d.start])
    while queue:
        q = queue.popleft()
        for r in d.transitions[q]:
            if r not in seen:
                seen.add(r)
                queue.append(r)
    return seen


@lru_cache(maxsize=None)
def compiled_dfa(rule: TrackingRule = DEFAULT_RULE) -> Dfa:
    """Minimised automaton for ``rule``, memoised per rule."""
    return minimize_dfa(build_dfa(rule))


def all_strings(k: int) -> Iterable[str]:
    """All ``2**k`` binary strings of length ``k`` in lexicographic order."""
    for x in range(1 << k):
        yield format(x, f"0{k}b") if k else ""
