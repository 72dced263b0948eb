"""Per-utterance sentiment: the engine contract and the weighted-lexicon engine.

Every engine maps one :class:`~depscore.preprocess.CleanUtterance` to a
:class:`Sentiment` pair. ``score`` is the signed leaning in [-1, 1];
``magnitude`` is the unnormalized amount of emotion, so longer replies tend to
carry more of it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Protocol, runtime_checkable

from depscore.corpus import Lexicon, PosClass, WordList
from depscore.preprocess import CleanUtterance

DEFAULT_SCALE = 4.0
DEFAULT_BOOST = 2.0


@dataclass(frozen=True)
class Sentiment:
    score: float
    magnitude: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.score) and -1.0 <= self.score <= 1.0):
            raise ValueError(f"sentiment score {self.score!r} outside [-1, 1]")
        if not (math.isfinite(self.magnitude) and self.magnitude >= 0.0):
            raise ValueError(f"sentiment magnitude {self.magnitude!r} must be finite and >= 0")


NEUTRAL = Sentiment(0.0, 0.0)


@dataclass(frozen=True)
class PosWeights:
    """Multipliers applied to a lexicon weight by part-of-speech class.

    Defaults rank adjectives over adverbs over verbs (4/3/2); everything else
    counts once.
    """

    adjective: float = 4.0
    adverb: float = 3.0
    verb: float = 2.0
    other: float = 1.0

    def __getitem__(self, pos: PosClass) -> float:
        return getattr(self, pos.value)


@runtime_checkable
class Engine(Protocol):
    """What the pipeline needs from a sentiment engine.

    ``concurrent_safe`` declares whether ``analyze`` may be called from several
    threads at once; callers serialize calls otherwise.
    """

    identifier: str
    concurrent_safe: bool

    def analyze(self, unit: CleanUtterance) -> Sentiment: ...


def token_contribution(token: str, lex: Lexicon, weights: PosWeights = PosWeights(), boost: float = DEFAULT_BOOST) -> float:
    if boost < 1:
        raise ValueError(f"boost must be >= 1, got {boost}")
    entry = lex.get(token)
    if entry is None:
        return 0.0
    value = entry.sign * entry.weight * weights[entry.pos_class]
    return value * boost if entry.depression_term else value


def analyze_lexicon(
    unit: CleanUtterance | Iterable[str],
    lex: Lexicon,
    weights: PosWeights = PosWeights(),
    boost: float = DEFAULT_BOOST,
    scale: float = DEFAULT_SCALE,
) -> Sentiment:
    """Score a unit by summing signed token contributions.

    score = clamp(sum / scale, -1, 1); magnitude = sum of |contribution| / scale.
    The plain sum (rather than a mean) keeps the score monotone: one more
    negative word can only pull it down.
    """
    if scale <= 0:
        raise ValueError(f"scale must be > 0, got {scale}")
    tokens = unit.tokens if isinstance(unit, CleanUtterance) else unit
    contributions = [c for c in (token_contribution(t, lex, weights, boost) for t in tokens) if c != 0.0]
    if not contributions:
        return NEUTRAL
    raw = math.fsum(contributions)
    score = min(1.0, max(-1.0, raw / scale))
    magnitude = math.fsum(abs(c) for c in contributions) / scale
    return Sentiment(score, magnitude)


class LexiconEngine:
    """Immutable weighted-lexicon engine; safe to share between threads."""

    concurrent_safe = True

    def __init__(
        self,
        lexicon: Lexicon,
        weights: PosWeights = PosWeights(),
        boost: float = DEFAULT_BOOST,
        scale: float = DEFAULT_SCALE,
    ) -> None:
        if boost < 1:
            raise ValueError(f"boost must be >= 1, got {boost}")
        if scale <= 0:
            raise ValueError(f"scale must be > 0, got {scale}")
        self.lexicon = lexicon
        self.weights = weights
        self.boost = boost
        self.scale = scale
        self.identifier = "lexicon"

    def analyze(self, unit: CleanUtterance) -> Sentiment:
        return analyze_lexicon(unit, self.lexicon, self.weights, self.boost, self.scale)


def line_emotion(unit: CleanUtterance | Sentiment, engine: Engine | None = None) -> float:
    """Signed emotion mass of one line: score times magnitude."""
    sent = unit if isinstance(unit, Sentiment) else engine.analyze(unit)
    return sent.score * sent.magnitude


def pronoun_rate(units: Iterable[CleanUtterance | Iterable[str]], pronouns: WordList) -> float:
    """Share of first-person singular pronouns among all tokens.

    Counted on the stream before stopword removal, since most of these
    pronouns are stopwords themselves.
    """
    if not len(pronouns):
        raise ValueError("pronoun list is empty")
    total = hits = 0
    for unit in units:
        tokens = unit.tokens_with_stopwords if isinstance(unit, CleanUtterance) else unit
        for tok in tokens:
            total += 1
            hits += tok in pronouns
    return hits / total if total else 0.0
