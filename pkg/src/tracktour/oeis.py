"""OEIS b-file parsing, caching and comparison.

Only the plain b-file text format is supported.  Online fetches go to
``https://oeis.org/<id>/b<digits>.txt``; the raw text is cached as
``<cache_dir>/<id>.bfile.txt``.  Offline mode reads the cache, then the
snapshot bundled with the package.
"""

from __future__ import annotations

import logging
import os
import re
import urllib.error
import urllib.request
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .counting import SequenceTable
from .errors import GapError, NetworkError, NoOverlap, ParseError, SnapshotMissing

log = logging.getLogger(__name__)

CACHE_ENV = "TRACKTOUR_CACHE_DIR"
DEFAULT_CACHE = Path.home() / ".cache" / "tracktour"
SEQUENCE_ID = re.compile(r"^A(\d{6})$")
TIMEOUT = 30


@dataclass(frozen=True)
class BFile:
    sequence_id: str
    entries: tuple[tuple[int, int], ...] = field(default_factory=tuple)

    def __getitem__(self, index: int) -> int:
        first = self.entries[0][0]
        return self.entries[index - first][1]

    def as_dict(self) -> dict[int, int]:
        return dict(self.entries)

    def serialize(self) -> str:
        return "".join(f"{i} {v}\n" for i, v in self.entries)


def parse_bfile(text: str, sequence_id: str = "") -> BFile:
    entries: list[tuple[int, int]] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        fields = stripped.split()
        if len(fields) != 2:
            raise ParseError(f"expected 'index value', got {stripped!r}", lineno)
        try:
            index, value = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(f"non-integer field in {stripped!r}", lineno) from None
        if entries and index != entries[-1][0] + 1:
            raise GapError(f"index {index} follows {entries[-1][0]}", lineno)
        entries.append((index, value))
    return BFile(sequence_id, tuple(entries))


def check_sequence_id(sequence_id: str) -> str:
    m = SEQUENCE_ID.match(sequence_id)
    if not m:
        raise ValueError(f"OEIS ids look like 'A000570', got {sequence_id!r}")
    return m.group(1)


def default_cache_dir() -> Path:
    return Path(os.environ.get(CACHE_ENV, DEFAULT_CACHE))


def bundled_snapshot(sequence_id: str) -> str | None:
    res = resources.files("tracktour") / "data" / f"{sequence_id}.bfile.txt"
    return res.read_text() if res.is_file() else None


def _download(url: str) -> str:
    try:
        with urllib.request.urlopen(url, timeout=TIMEOUT) as resp:
            return resp.read().decode("ascii")
    except (urllib.error.URLError, OSError, UnicodeDecodeError) as exc:
        raise NetworkError(f"fetching {url} failed: {exc}") from exc


def fetch_bfile(
    sequence_id: str,
    cache_dir: str | Path | None = None,
    offline: bool = True,
    snapshot: str | Path | None = None,
    downloader=_download,
) -> BFile:
    """Load a b-file from cache, network or a snapshot file.

    A cache hit never touches the network.  ``snapshot`` replaces the copy
    bundled with the package.  ``downloader`` is swappable so the online path
    can be exercised without a live server.
    """
    digits = check_sequence_id(sequence_id)
    cache = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    cached = cache / f"{sequence_id}.bfile.txt"
    if cached.is_file():
        log.debug("cache hit %s", cached)
        return parse_bfile(cached.read_text(), sequence_id)
    if offline:
        if snapshot is not None:
            path = Path(snapshot)
            text = path.read_text() if path.is_file() else None
        else:
            text = bundled_snapshot(sequence_id)
        if text is None:
            raise SnapshotMissing(f"no cached or bundled b-file for {sequence_id}")
        return parse_bfile(text, sequence_id)
    url = f"https://oeis.org/{sequence_id}/b{digits}.txt"
    log.info("downloading %s", url)
    text = downloader(url)
    bfile = parse_bfile(text, sequence_id)
    cache.mkdir(parents=True, exist_ok=True)
    cached.write_text(text)
    return bfile


@dataclass(frozen=True)
class Comparison:
    matches: tuple[tuple[int, int, int, bool], ...]  # (remote index, local, remote, ok)

    @property
    def mismatches(self) -> list[int]:
        return [i for i, _, _, ok in self.matches if not ok]

    @property
    def first_mismatch(self) -> int | None:
        bad = self.mismatches
        return bad[0] if bad else None

    @property
    def full_match(self) -> bool:
        return not self.mismatches

    @property
    def match_length(self) -> int:
        """Number of leading overlap indices that agree."""
        n = 0
        for *_, ok in self.matches:
            if not ok:
                break
            n += 1
        return n

    def summary(self) -> str:
        if self.full_match:
            return f"full match over {len(self.matches)} terms"
        i = self.first_mismatch
        return f"first mismatch at index {i} ({self.match_length} of {len(self.matches)} leading terms agree)"


def compare(local: SequenceTable, remote: BFile, shift: int = 0) -> Comparison:
    """Compare ``local[k]`` against ``remote[k + shift]`` over the overlap."""
    remote_values = remote.as_dict()
    rows = []
    for k, value in local.items():
        r = remote_values.get(k + shift)
        if r is not None:
            rows.append((k + shift, value, r, value == r))
    if not rows:
        raise NoOverlap(f"{local.name} and {remote.sequence_id} share no indices")
    return Comparison(tuple(rows))
