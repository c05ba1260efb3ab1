"""Tournaments (complete oriented graphs), score vectors and uniqueness.

A tournament on ``n`` nodes is stored as one bitmask per node:
bit ``j`` of ``rows[i]`` is set iff node ``i`` beat node ``j``.

The integer *code* of a tournament lists the upper triangle row by row,
pair (0, 1) first and most significant; a set bit means the lower-numbered
node won.  Codes index all ``2**(n(n-1)/2)`` labelled tournaments, and
lexicographic order of bit strings coincides with integer order of codes.
"""

from __future__ import annotations

import itertools
import json
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidBasicSize, InvalidTournament, NotUnique, SizeTooLarge

MAX_CANONICAL_N = 8
MAX_CENSUS_N = 7
BASIC_SIZES = (1, 3, 4, 5)


@dataclass(frozen=True)
class Tournament:
    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1 or len(self.rows) != self.n:
            raise InvalidTournament(f"need n >= 1 rows, got n={self.n}, {len(self.rows)} rows")
        full = (1 << self.n) - 1
        for i, r in enumerate(self.rows):
            if r & ~full or r >> i & 1:
                raise InvalidTournament(f"row {i} has out-of-range or self bits")
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if (self.rows[i] >> j & 1) == (self.rows[j] >> i & 1):
                    raise InvalidTournament(f"pair ({i}, {j}) needs exactly one winner")

    def beats(self, i: int, j: int) -> bool:
        return bool(self.rows[i] >> j & 1)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Tournament":
        """Build from ``(winner, loser)`` pairs; every pair must appear once."""
        rows = [0] * n
        for w, l in edges:
            if not (0 <= w < n and 0 <= l < n):
                raise InvalidTournament(f"edge ({w}, {l}) out of range for n={n}")
            rows[w] |= 1 << l
        return cls(n, tuple(rows))

    @classmethod
    def transitive(cls, n: int) -> "Tournament":
        """Node ``i`` beats every lower-numbered node; node 0 loses all."""
        return cls(n, tuple((1 << i) - 1 for i in range(n)))

    @classmethod
    def from_code(cls, n: int, code: int) -> "Tournament":
        rows = [0] * n
        for e, (i, j) in enumerate(_pairs(n)):
            if code >> (_edge_count(n) - 1 - e) & 1:
                rows[i] |= 1 << j
            else:
                rows[j] |= 1 << i
        return cls(n, tuple(rows))

    def code(self) -> int:
        c = 0
        for i, j in _pairs(self.n):
            c = c << 1 | (self.rows[i] >> j & 1)
        return c

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) if self.beats(i, j) else (j, i) for i, j in _pairs(self.n)]

    def scores(self) -> tuple[int, ...]:
        """Raw out-degree of each node, in node order."""
        return tuple(r.bit_count() for r in self.rows)

    def relabel(self, perm: Sequence[int]) -> "Tournament":
        """Node ``i`` becomes node ``perm[i]``."""
        rows = [0] * self.n
        for i, r in enumerate(self.rows):
            for j in range(self.n):
                if r >> j & 1:
                    rows[perm[i]] |= 1 << perm[j]
        return Tournament(self.n, tuple(rows))

    def induced(self, nodes: Sequence[int]) -> "Tournament":
        nodes = list(nodes)
        return Tournament.from_edges(
            len(nodes),
            [(a, b) for a, u in enumerate(nodes) for b, v in enumerate(nodes) if self.beats(u, v)],
        )

    # serialisation

    def to_hex(self) -> str:
        """``"<n>:<hex>"``; the code padded with zero bits to a multiple of 4."""
        e = _edge_count(self.n)
        width = -(-e // 4)
        if width == 0:
            return f"{self.n}:"
        return f"{self.n}:{self.code() << (4 * width - e):0{width}x}"

    @classmethod
    def from_hex(cls, text: str) -> "Tournament":
        try:
            n_text, hex_text = text.strip().split(":")
            n = int(n_text)
            e = _edge_count(n)
            width = -(-e // 4)
            if len(hex_text) != width:
                raise ValueError
            value = int(hex_text, 16) if width else 0
        except ValueError:
            raise InvalidTournament(f"bad tournament hex {text!r}") from None
        pad = 4 * width - e
        if value & ((1 << pad) - 1):
            raise InvalidTournament(f"nonzero padding bits in {text!r}")
        return cls.from_code(n, value >> pad)

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "edges": [list(e) for e in self.edges()]})

    @classmethod
    def from_json(cls, text: str) -> "Tournament":
        try:
            obj = json.loads(text)
            return cls.from_edges(int(obj["n"]), [tuple(e) for e in obj["edges"]])
        except (ValueError, KeyError, TypeError) as exc:
            raise InvalidTournament(f"bad tournament json: {exc}") from None

    def to_dot(self, name: str = "T") -> str:
        lines = [f"digraph {name} {{"]
        lines += [f"  {i};" for i in range(self.n)]
        lines += [f"  {w} -> {l};" for w, l in self.edges()]
        lines.append("}")
        return "\n".join(lines) + "\n"


def _edge_count(n: int) -> int:
    return n * (n - 1) // 2


@lru_cache(maxsize=None)
def _pairs(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(itertools.combinations(range(n), 2))


def score_vector(t: Tournament) -> tuple[int, ...]:
    return tuple(sorted(t.scores()))


def compose(a: Tournament, b: Tournament) -> Tournament:
    """``a + b``: both groups keep their games and every ``b`` node beats every ``a`` node."""
    all_a = (1 << a.n) - 1
    return Tournament(a.n + b.n, a.rows + tuple(r << a.n | all_a for r in b.rows))


def dual(t: Tournament) -> Tournament:
    full = (1 << t.n) - 1
    return Tournament(t.n, tuple(~r & full & ~(1 << i) for i, r in enumerate(t.rows)))


def is_isomorphic(a: Tournament, b: Tournament) -> bool:
    """Backtracking search over node maps that preserve raw scores."""
    if a.n != b.n or score_vector(a) != score_vector(b):
        return False
    sa, sb = a.scores(), b.scores()
    # map rarest score classes first to prune early
    freq = defaultdict(int)
    for s in sa:
        freq[s] += 1
    order = sorted(range(a.n), key=lambda i: (freq[sa[i]], sa[i], i))
    image = [-1] * a.n
    used = [False] * b.n

    def extend(depth: int) -> bool:
        if depth == a.n:
            return True
        u = order[depth]
        for v in range(b.n):
            if used[v] or sb[v] != sa[u]:
                continue
            if all(a.beats(u, w) == b.beats(v, image[w]) for w in order[:depth]):
                image[u] = v
                used[v] = True
                if extend(depth + 1):
                    return True
                used[v] = False
        image[u] = -1
        return False

    return extend(0)


def _score_sorted_perms(scores: Sequence[int]) -> Iterable[list[int]]:
    """Relabelings after which raw scores read non-decreasing in node order."""
    n = len(scores)
    classes: dict[int, list[int]] = defaultdict(list)
    for i, s in enumerate(scores):
        classes[s].append(i)
    slots = []
    pos = 0
    for s in sorted(classes):
        slots.append((classes[s], list(range(pos, pos + len(classes[s])))))
        pos += len(classes[s])
    for choice in itertools.product(*(itertools.permutations(targets) for _, targets in slots)):
        perm = [0] * n
        for (members, _), targets in zip(slots, choice):
            for node, target in zip(members, targets):
                perm[node] = target
        yield perm


def canonical_form(t: Tournament) -> str:
    """Least code bit string over relabelings that sort the scores.

    Two tournaments share a canonical form iff they are isomorphic.
    """
    if t.n > MAX_CANONICAL_N:
        raise SizeTooLarge(f"canonical form limited to n <= {MAX_CANONICAL_N}, got {t.n}")
    best = min(t.relabel(p).code() for p in _score_sorted_perms(t.scores()))
    e = _edge_count(t.n)
    return format(best, f"0{e}b") if e else ""


_BASIC_EDGES = {
    1: [],
    3: [(0, 1), (1, 2), (2, 0)],
    4: [(0, 1), (1, 2), (2, 0), (3, 0), (3, 1), (2, 3)],
    5: [(i, (i + d) % 5) for i in range(5) for d in (1, 2)],
}


def basic_tournament(size: int) -> Tournament:
    """Fixed representative of the indecomposable unique tournament on ``size`` nodes."""
    if size not in _BASIC_EDGES:
        raise InvalidBasicSize(f"basic sizes are {BASIC_SIZES}, got {size}")
    return Tournament.from_edges(size, _BASIC_EDGES[size])


def rebuild(parts: Sequence[int]) -> Tournament:
    """Compose basic tournaments bottom group first."""
    if not parts:
        raise InvalidTournament("cannot rebuild an empty decomposition")
    return reduce(compose, (basic_tournament(p) for p in parts))


def condensation(t: Tournament) -> list[frozenset[int]]:
    """Strong components, bottom (all-losing) group first.

    In a tournament the components are totally ordered, and a component's
    rank is given by how many nodes it can reach along ``beats`` edges.
    """
    reach = []
    for i in range(t.n):
        seen = 1 << i
        frontier = seen
        while frontier:
            nxt = 0
            for j in range(t.n):
                if frontier >> j & 1:
                    nxt |= t.rows[j]
            frontier = nxt & ~seen
            seen |= nxt
        reach.append(seen)
    comps: dict[int, set[int]] = {}
    for i in range(t.n):
        # i and j share a component iff each reaches the other
        key = min(j for j in range(t.n) if reach[i] >> j & 1 and reach[j] >> i & 1)
        comps.setdefault(key, set()).add(i)
    ordered = sorted(comps.values(), key=lambda c: reach[next(iter(c))].bit_count())
    return [frozenset(c) for c in ordered]


def decompose_unique(t: Tournament) -> list[int]:
    """Sizes of the basic blocks of a unique tournament, bottom group first.

    Raises :class:`NotUnique` if some strong component is not one of the
    four basic tournaments.
    """
    parts = []
    for comp in condensation(t):
        size = len(comp)
        if size not in _BASIC_EDGES or not is_isomorphic(t.induced(sorted(comp)), basic_tournament(size)):
            raise NotUnique(f"strong component of size {size} is not a basic tournament")
        parts.append(size)
    return parts


def is_unique(t: Tournament) -> bool:
    try:
        decompose_unique(t)
    except NotUnique:
        return False
    return True


@dataclass(frozen=True)
class Census:
    n: int
    classes: dict[tuple[int, ...], tuple[str, ...]]

    @property
    def count(self) -> int:
        return sum(1 for forms in self.classes.values() if len(forms) == 1)

    @property
    def non_unique_score_vectors(self) -> set[tuple[int, ...]]:
        return {sv for sv, forms in self.classes.items() if len(forms) > 1}

    def class_count(self, sv: Sequence[int]) -> int:
        return len(self.classes[tuple(sv)])

    def unique_tournaments(self) -> list[Tournament]:
        e = _edge_count(self.n)
        return [
            Tournament.from_code(self.n, int(forms[0], 2) if e else 0)
            for forms in self.classes.values()
            if len(forms) == 1
        ]


def _labelled_scores(n: int) -> np.ndarray:
    """Raw scores of every labelled tournament, one row per code."""
    e = _edge_count(n)
    codes = np.arange(1 << e, dtype=np.int64)
    scores = np.zeros((1 << e, n), dtype=np.int8)
    for idx, (i, j) in enumerate(_pairs(n)):
        bit = ((codes >> (e - 1 - idx)) & 1).astype(np.int8)
        scores[:, i] += bit
        scores[:, j] += 1 - bit
    return scores


def _orbit_codes(n: int, code: int, perm_dest: np.ndarray, perm_flip: np.ndarray) -> np.ndarray:
    e = _edge_count(n)
    bits = np.array([code >> (e - 1 - idx) & 1 for idx in range(e)], dtype=np.int64)
    image_bits = bits[None, :] ^ perm_flip
    return (image_bits << perm_dest).sum(axis=1)


def _perm_tables(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """For every node permutation: where each edge bit lands, and whether it flips."""
    e = _edge_count(n)
    pair_index = {p: idx for idx, p in enumerate(_pairs(n))}
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    dest = np.zeros((len(perms), e), dtype=np.int64)
    flip = np.zeros((len(perms), e), dtype=np.int64)
    for idx, (i, j) in enumerate(_pairs(n)):
        pi, pj = perms[:, i], perms[:, j]
        lo, hi = np.minimum(pi, pj), np.maximum(pi, pj)
        target = np.array([pair_index[(a, b)] for a, b in zip(lo.tolist(), hi.tolist())])
        dest[:, idx] = e - 1 - target
        flip[:, idx] = (pi > pj).astype(np.int64)
    return perms, dest, flip


def unique_census(n: int) -> Census:
    """Brute-force census of all labelled tournaments on ``n`` nodes.

    Labelled tournaments are bucketed by score vector; within a bucket each
    not-yet-seen labelling opens a new isomorphism class, and its whole orbit
    under node permutations is marked seen.  Each class is recorded by its
    canonical form, read off the orbit as the least code among score-sorted
    relabelings.
    """
    if not 1 <= n <= MAX_CENSUS_N:
        raise SizeTooLarge(f"census limited to 1 <= n <= {MAX_CENSUS_N}, got {n}")
    e = _edge_count(n)
    scores = _labelled_scores(n)
    sorted_scores = np.sort(scores, axis=1)
    perms, dest, flip = _perm_tables(n)
    seen = np.zeros(1 << e, dtype=bool)
    classes: dict[tuple[int, ...], list[str]] = defaultdict(list)
    for code in range(1 << e):
        if seen[code]:
            continue
        images = _orbit_codes(n, code, dest, flip)
        seen[images] = True
        # relabel node i -> perm[i]; scores read sorted iff inverse perm sorts them
        raw = scores[code]
        relabelled = np.empty_like(perms)
        relabelled[np.arange(len(perms))[:, None], perms] = raw[None, :]
        ok = np.all(np.diff(relabelled, axis=1) >= 0, axis=1) if n > 1 else np.ones(len(perms), bool)
        best = int(images[ok].min())
        sv = tuple(int(x) for x in sorted_scores[code])
        classes[sv].append(format(best, f"0{e}b") if e else "")
    return Census(n, {sv: tuple(sorted(forms)) for sv, forms in sorted(classes.items())})
