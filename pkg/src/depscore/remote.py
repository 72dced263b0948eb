"""Sentiment from an external HTTP service, with a record/replay cache.

Wire format: ``POST {"text": ...}`` answered by ``{"score": s, "magnitude": m}``.
The cache is JSON Lines: a header ``{"fingerprint": ..., "version": 1}`` and then
one ``{"hash", "score", "magnitude"}`` object per unit. The fingerprint hashes
the preprocessing configuration, since the cache key is the preprocessed text.
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
import urllib.error
import urllib.request
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Iterable, Sequence

from depscore.corpus import WordList
from depscore.errors import CacheMiss, FingerprintMismatch, MalformedReply, TransportError
from depscore.preprocess import CleanUtterance
from depscore.sentiment import NEUTRAL, Sentiment

ENDPOINT_ENV = "DEPSCORE_ENDPOINT"
CACHE_VERSION = 1


class Mode(str, Enum):
    LIVE = "live"
    REPLAY = "replay"
    RECORD = "record"


@dataclass(frozen=True)
class RemoteConfig:
    endpoint: str | None = None
    timeout: float = 10.0
    mode: Mode = Mode.REPLAY
    cache_path: Path | None = None
    max_in_flight: int = 4

    def resolved_endpoint(self) -> str:
        url = self.endpoint or os.environ.get(ENDPOINT_ENV)
        if not url:
            raise TransportError(f"no endpoint configured (set --endpoint or ${ENDPOINT_ENV})")
        return url


def text_hash(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def preprocessing_fingerprint(stopwords: WordList, fillers: WordList, agent_label: str) -> str:
    payload = json.dumps(
        {
            "agent_label": agent_label.strip().casefold(),
            "stopwords": sorted(stopwords.words),
            "fillers": sorted(fillers.words),
        },
        sort_keys=True,
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


class SentimentCache:
    """Exact-match map from unit-text hash to :class:`Sentiment`."""

    def __init__(self, fingerprint: str, entries: dict[str, Sentiment] | None = None) -> None:
        self.fingerprint = fingerprint
        self.entries: dict[str, Sentiment] = dict(entries or {})
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, key: object) -> bool:
        return key in self.entries

    def get(self, key: str) -> Sentiment | None:
        return self.entries.get(key)

    def put(self, key: str, sent: Sentiment) -> None:
        with self._lock:
            self.entries[key] = sent

    @classmethod
    def load(cls, path: Path | str, expected_fingerprint: str | None = None) -> "SentimentCache":
        path = Path(path)
        if not path.exists():
            raise CacheMiss(f"cache file {path} does not exist")
        lines = [ln for ln in path.read_text(encoding="utf-8").split("\n") if ln.strip()]
        if not lines:
            raise CacheMiss(f"cache file {path} is empty")
        try:
            header = json.loads(lines[0])
            fingerprint = header["fingerprint"]
            entries = {}
            for ln in lines[1:]:
                obj = json.loads(ln)
                entries[obj["hash"]] = Sentiment(float(obj["score"]), float(obj["magnitude"]))
        except (ValueError, KeyError, TypeError) as exc:
            raise MalformedReply(f"cache file {path} is corrupt: {exc}") from None
        if expected_fingerprint is not None and fingerprint != expected_fingerprint:
            raise FingerprintMismatch(
                f"cache {path} was recorded under a different preprocessing configuration"
            )
        return cls(fingerprint, entries)

    def save(self, path: Path | str) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with self._lock:
            lines = [json.dumps({"fingerprint": self.fingerprint, "version": CACHE_VERSION}, sort_keys=True)]
            for key in sorted(self.entries):
                s = self.entries[key]
                lines.append(json.dumps({"hash": key, "score": s.score, "magnitude": s.magnitude}, sort_keys=True))
        tmp = path.with_suffix(path.suffix + ".tmp")
        tmp.write_text("\n".join(lines) + "\n", encoding="utf-8")
        tmp.replace(path)


def parse_reply(body: bytes | str) -> Sentiment:
    try:
        obj = json.loads(body)
        score = obj["score"]
        magnitude = obj["magnitude"]
    except (ValueError, KeyError, TypeError) as exc:
        raise MalformedReply(f"unreadable reply: {exc}") from None
    if isinstance(score, bool) or isinstance(magnitude, bool) or not all(
        isinstance(v, (int, float)) for v in (score, magnitude)
    ):
        raise MalformedReply("score and magnitude must be numbers")
    try:
        return Sentiment(float(score), float(magnitude))
    except ValueError as exc:
        raise MalformedReply(str(exc)) from None


def post_text(text: str, endpoint: str, timeout: float) -> Sentiment:
    req = urllib.request.Request(
        endpoint,
        data=json.dumps({"text": text}).encode("utf-8"),
        headers={"Content-Type": "application/json"},
        method="POST",
    )
    try:
        with urllib.request.urlopen(req, timeout=timeout) as resp:
            status = resp.status
            body = resp.read()
    except urllib.error.HTTPError as exc:
        raise TransportError(f"{endpoint} answered HTTP {exc.code}") from None
    except (urllib.error.URLError, OSError) as exc:
        raise TransportError(f"request to {endpoint} failed: {exc}") from None
    if not 200 <= status < 300:
        raise TransportError(f"{endpoint} answered HTTP {status}")
    return parse_reply(body)


def fetch_sentiment(unit: CleanUtterance | str, cfg: RemoteConfig, cache: SentimentCache) -> Sentiment:
    """Sentiment for one unit according to ``cfg.mode``.

    Replay never touches the network. Units whose text is empty are neutral
    and are neither sent nor cached.
    """
    text = unit.text if isinstance(unit, CleanUtterance) else unit
    if not text:
        return NEUTRAL
    key = text_hash(text)
    if cfg.mode is Mode.REPLAY:
        hit = cache.get(key)
        if hit is None:
            raise CacheMiss(f"no cached sentiment for unit {key[:12]} ({text[:40]!r})")
        return hit
    sent = post_text(text, cfg.resolved_endpoint(), cfg.timeout)
    if cfg.mode is Mode.RECORD:
        cache.put(key, sent)
    return sent


class RemoteEngine:
    """Engine backed by :func:`fetch_sentiment`."""

    def __init__(self, cfg: RemoteConfig, cache: SentimentCache) -> None:
        self.cfg = cfg
        self.cache = cache
        self.identifier = f"remote:{cfg.mode.value}"
        # Replay is a read-only lookup; record writes go through the cache lock.
        self.concurrent_safe = True

    def analyze(self, unit: CleanUtterance) -> Sentiment:
        return fetch_sentiment(unit, self.cfg, self.cache)

    def analyze_many(self, units: Sequence[CleanUtterance]) -> list[Sentiment]:
        if self.cfg.mode is Mode.REPLAY or len(units) < 2:
            return [self.analyze(u) for u in units]
        with ThreadPoolExecutor(max_workers=max(1, self.cfg.max_in_flight)) as pool:
            return list(pool.map(self.analyze, units))


def record_units(units: Iterable[CleanUtterance], cfg: RemoteConfig, cache: SentimentCache) -> int:
    """Fetch and cache every unit not already cached; returns the number fetched."""
    todo: dict[str, CleanUtterance] = {}
    for u in units:
        if u.text and text_hash(u.text) not in cache:
            todo.setdefault(text_hash(u.text), u)
    rec = RemoteConfig(cfg.endpoint, cfg.timeout, Mode.RECORD, cfg.cache_path, cfg.max_in_flight)
    RemoteEngine(rec, cache).analyze_many(list(todo.values()))
    return len(todo)


def missing_units(units: Iterable[CleanUtterance], cache: SentimentCache) -> list[CleanUtterance]:
    return [u for u in units if u.text and text_hash(u.text) not in cache]
