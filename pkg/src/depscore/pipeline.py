"""End-to-end scoring of one transcript under a :class:`RunConfig`."""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from depscore import corpus
from depscore.config import RunConfig
from depscore.corpus import Lexicon, Transcript, WordList, WordListKind
from depscore.errors import EmptySession, MalformedRow
from depscore.metrics import DepressionLevel, MetricComponents, classify, compute_components, intensity_overall
from depscore.preprocess import CleanUtterance, prepare_transcript
from depscore.remote import Mode, RemoteConfig, RemoteEngine, SentimentCache, preprocessing_fingerprint
from depscore.sentiment import Engine, LexiconEngine, PosWeights, Sentiment, line_emotion, pronoun_rate
from depscore.timeline import ConsistencyReport, MoodTimeline, bin_intervals, consistency_check

_PID = re.compile(r"\d+")


@dataclass(frozen=True)
class Resources:
    lexicon: Lexicon
    stopwords: WordList
    fillers: WordList
    pronouns: WordList


def load_resources(cfg: RunConfig) -> Resources:
    def wordlist(path, kind):
        if path is None:
            return corpus.default_wordlist(kind)
        return corpus.load_wordlist(corpus.read_path(path), kind)

    lexicon = corpus.default_lexicon() if cfg.lexicon is None else corpus.load_lexicon(corpus.read_path(cfg.lexicon))
    return Resources(
        lexicon=lexicon,
        stopwords=wordlist(cfg.stopwords, WordListKind.STOPWORDS),
        fillers=wordlist(cfg.fillers, WordListKind.FILLERS),
        pronouns=wordlist(cfg.pronouns, WordListKind.PRONOUNS),
    )


def fingerprint(cfg: RunConfig, res: Resources) -> str:
    return preprocessing_fingerprint(res.stopwords, res.fillers, cfg.agent_label)


def remote_config(cfg: RunConfig, mode: Mode | None = None) -> RemoteConfig:
    return RemoteConfig(
        endpoint=cfg.endpoint,
        timeout=cfg.timeout,
        mode=mode or Mode(cfg.mode),
        cache_path=Path(cfg.cache) if cfg.cache else None,
        max_in_flight=cfg.max_in_flight,
    )


def open_cache(cfg: RunConfig, res: Resources, mode: Mode) -> SentimentCache:
    """Load the cache for ``mode``; record and live start empty when no file exists yet."""
    fp = fingerprint(cfg, res)
    if cfg.cache and (mode is Mode.REPLAY or Path(cfg.cache).exists()):
        return SentimentCache.load(cfg.cache, expected_fingerprint=fp)
    return SentimentCache(fp)


def build_engine(cfg: RunConfig, res: Resources) -> Engine:
    if cfg.engine == "lexicon":
        weights = PosWeights(cfg.pos_adjective, cfg.pos_adverb, cfg.pos_verb, cfg.pos_other)
        return LexiconEngine(res.lexicon, weights, cfg.boost, cfg.scale)
    rcfg = remote_config(cfg)
    return RemoteEngine(rcfg, open_cache(cfg, res, rcfg.mode))


def participant_id_from_path(path: str | Path) -> int:
    m = _PID.search(Path(path).name)
    if m is None:
        raise MalformedRow(f"cannot derive a participant id from file name {Path(path).name!r}")
    return int(m.group())


def read_transcript(path: str | Path, cfg: RunConfig) -> Transcript:
    return corpus.parse_transcript(corpus.read_path(path), participant_id_from_path(path), cfg.delimiter)


@dataclass(frozen=True)
class ParticipantResult:
    participant_id: int
    n_utterances: int
    units: tuple[CleanUtterance, ...]
    sentiments: tuple[Sentiment, ...]
    emotions: tuple[float, ...]
    components: MetricComponents
    level: DepressionLevel
    intensity_percent: float
    pronoun_rate: float
    timeline: MoodTimeline | None
    consistency: ConsistencyReport | None

    def to_dict(self) -> dict:
        return {
            "participant_id": self.participant_id,
            "n_utterances": self.n_utterances,
            "n_units": len(self.units),
            "components": self.components.to_dict(),
            "score": self.components.s,
            "level": self.level.label,
            "intensity_percent": self.intensity_percent,
            "pronoun_rate": self.pronoun_rate,
            "attention": self.timeline.attention if self.timeline else False,
            "timeline": self.timeline.to_dict() if self.timeline else None,
            "consistency": self.consistency.to_dict() if self.consistency else None,
            "units": [
                {
                    "start": u.start,
                    "stop": u.stop,
                    "text": u.text,
                    "score": s.score,
                    "magnitude": s.magnitude,
                    "emotion": e,
                }
                for u, s, e in zip(self.units, self.sentiments, self.emotions)
            ],
        }


def score_units(units: Sequence[CleanUtterance], engine: Engine, lock: threading.Lock | None = None) -> list[Sentiment]:
    if isinstance(engine, RemoteEngine):
        return engine.analyze_many(units)
    if lock is not None and not engine.concurrent_safe:
        with lock:
            return [engine.analyze(u) for u in units]
    return [engine.analyze(u) for u in units]


def analyze_transcript(
    transcript: Transcript,
    cfg: RunConfig,
    res: Resources,
    engine: Engine,
    lock: threading.Lock | None = None,
) -> ParticipantResult:
    units = prepare_transcript(transcript, res.stopwords, res.fillers, cfg.agent_label)
    sentiments = score_units(units, engine, lock)
    emotions = [line_emotion(s) for s in sentiments]
    components = compute_components(sentiments, cfg.negative_window)
    intensity = intensity_overall(emotions)
    try:
        timeline = bin_intervals(units, emotions, cfg.bins, cfg.attention_threshold)
    except EmptySession:
        timeline = None
    consistency = consistency_check(timeline, intensity, cfg.consistency_tolerance) if timeline else None
    return ParticipantResult(
        participant_id=transcript.participant_id,
        n_utterances=len(transcript),
        units=tuple(units),
        sentiments=tuple(sentiments),
        emotions=tuple(emotions),
        components=components,
        level=classify(components.s),
        intensity_percent=intensity,
        pronoun_rate=pronoun_rate(units, res.pronouns),
        timeline=timeline,
        consistency=consistency,
    )
