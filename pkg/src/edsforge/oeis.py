"""OEIS b-file retrieval with bundled fixtures and an on-disk cache."""

from __future__ import annotations

import os
import re
import threading
import urllib.error
import urllib.request
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

from edsforge.series import as_fraction

ID_PATTERN = re.compile(r"^A\d{6}$")
BFILE_URL = "https://oeis.org/{id}/b{digits}.txt"
CITED = ("A000045", "A000108", "A000129", "A006720", "A006769", "A025262",
         "A056010", "A157003", "A178072", "A178078", "A178079")
SIGN_RULES = ("none", "alternate_pairs", "alternate")

_cache_lock = threading.Lock()


class OeisError(Exception):
    pass


class NotFound(OeisError):
    pass


class NetworkDisabled(OeisError):
    pass


class ParseError(OeisError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


@dataclass(frozen=True)
class OeisRecord:
    id: str
    offset: int
    terms: tuple
    source: str  # "fixture", "cache" or "network"

    def term(self, n: int) -> int:
        return self.terms[n - self.offset]

    def has(self, n: int) -> bool:
        return 0 <= n - self.offset < len(self.terms)


def check_id(id: str) -> str:
    if not isinstance(id, str) or not ID_PATTERN.match(id):
        raise ValueError(f"{id!r} is not an OEIS A-number (A followed by six digits)")
    return id


def parse_bfile(text: str) -> tuple:
    """Parse b-file text into ``(offset, terms)``; indices must be consecutive."""
    offset, terms = None, []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(lineno, f"expected 'n a(n)', got {raw!r}")
        try:
            n, value = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(lineno, f"non-integer field in {raw!r}") from None
        if offset is None:
            offset = n
        elif n != offset + len(terms):
            raise ParseError(lineno, f"index {n} breaks the run starting at {offset}")
        terms.append(value)
    if offset is None:
        raise ParseError(0, "no data lines")
    return offset, tuple(terms)


def format_bfile(record: OeisRecord, comment: str = "") -> str:
    lines = [f"# {line}" for line in comment.splitlines()]
    lines += [f"{record.offset + i} {v}" for i, v in enumerate(record.terms)]
    return "\n".join(lines) + "\n"


def default_cache_dir() -> Path:
    env = os.environ.get("EDSFORGE_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "edsforge"


def _fixture_text(id: str) -> Optional[str]:
    path = resources.files("edsforge") / "data" / f"b{id[1:]}.txt"
    if path.is_file():
        return path.read_text()
    return None


def _write_cache(path: Path, text: str) -> None:
    with _cache_lock:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(text)
        os.replace(tmp, path)


def fetch(id: str, offline: Optional[bool] = None, cache_dir: Optional[Path] = None,
          use_fixtures: bool = True, timeout: float = 20.0) -> OeisRecord:
    """Look up a sequence: bundled fixture, then cache, then the OEIS b-file."""
    check_id(id)
    if offline is None:
        offline = os.environ.get("EDSFORGE_OFFLINE", "") not in ("", "0")
    if use_fixtures:
        text = _fixture_text(id)
        if text is not None:
            return OeisRecord(id, *parse_bfile(text), "fixture")
    path = Path(cache_dir or default_cache_dir()) / f"b{id[1:]}.txt"
    if path.is_file():
        return OeisRecord(id, *parse_bfile(path.read_text()), "cache")
    if offline:
        raise NetworkDisabled(f"{id} is neither bundled nor cached and offline mode is set")
    url = BFILE_URL.format(id=id, digits=id[1:])
    try:
        with urllib.request.urlopen(url, timeout=timeout) as response:
            text = response.read().decode("utf-8")
    except urllib.error.HTTPError as exc:
        if exc.code == 404:
            raise NotFound(f"{id}: no b-file at {url}") from exc
        raise OeisError(f"{id}: HTTP {exc.code} from {url}") from exc
    except urllib.error.URLError as exc:
        raise OeisError(f"{id}: cannot reach {url} ({exc.reason})") from exc
    record = OeisRecord(id, *parse_bfile(text), "network")
    _write_cache(path, text)
    return record


def sign_factor(rule: str, n: int) -> int:
    if rule == "none":
        return 1
    if rule == "alternate_pairs":
        return -1 if (n * (n - 1) // 2) % 2 else 1
    if rule == "alternate":
        return -1 if n % 2 else 1
    raise ValueError(f"unknown sign rule {rule!r}; expected one of {SIGN_RULES}")


def compare_terms(computed: Sequence, expected: Sequence, start: int = 0) -> dict:
    """Term-by-term comparison; indices in the report start at ``start``."""
    n = min(len(computed), len(expected))
    first = None
    for i in range(n):
        if as_fraction(computed[i]) != as_fraction(expected[i]):
            first = {"index": start + i, "computed": as_fraction(computed[i]),
                     "expected": as_fraction(expected[i])}
            break
    matched = n if first is None else first["index"] - start
    return {"compared": n, "matched": matched, "first_mismatch": first,
            "passed": n > 0 and first is None}


def cross_check(computed, id: str, shift: int = 0, sign_rule: str = "none",
                offline: Optional[bool] = None, record: Optional[OeisRecord] = None) -> dict:
    """Compare computed terms with an OEIS entry.

    The computed term of index n is matched with ``sign * A(n + shift)`` where
    the sign is (-1)^C(n,2) under ``alternate_pairs``.
    """
    record = record or fetch(id, offline=offline)
    offset = getattr(computed, "offset", 0)
    terms = computed.terms if hasattr(computed, "terms") else list(computed)
    got, want = [], []
    for i, v in enumerate(terms):
        n = offset + i
        if not record.has(n + shift):
            if got:
                break
            continue
        got.append(v)
        want.append(sign_factor(sign_rule, n) * record.term(n + shift))
    start = offset + next((i for i in range(len(terms)) if record.has(offset + i + shift)), 0)
    result = compare_terms(got, want, start)
    return {"id": id, "shift": shift, "sign_rule": sign_rule, "source": record.source, **result}
