"""Transcript-level depression score and its four-level classification.

The score combines three statistics of the *negative* utterances (score in the
closed window [-1.0, -0.25]):

* x: fraction of utterances that are negative,
* y: mean score of the negative utterances,
* z: mean magnitude of the negative utterances,

as ``s = 100*x + |y|/2 + z/4``, clamped to [0, 100].
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from enum import IntEnum
from typing import Sequence

from depscore.errors import OutOfRange
from depscore.sentiment import Sentiment

NEGATIVE_WINDOW = (-1.0, -0.25)


@dataclass(frozen=True)
class MetricComponents:
    x: float
    y: float
    z: float
    s: float
    n_total: int
    n_negative: int

    def to_dict(self) -> dict:
        return asdict(self)


class DepressionLevel(IntEnum):
    HAPPY = 0
    LOW_DEPRESSED = 1
    MEDIUM_DEPRESSED = 2
    HIGH_DEPRESSED = 3

    @property
    def label(self) -> str:
        return _LEVEL_LABELS[self]


_LEVEL_LABELS = {
    DepressionLevel.HAPPY: "Happy",
    DepressionLevel.LOW_DEPRESSED: "LowDepressed",
    DepressionLevel.MEDIUM_DEPRESSED: "MediumDepressed",
    DepressionLevel.HIGH_DEPRESSED: "HighDepressed",
}

# Upper (inclusive) edge of each band; bands are [0,25], (25,50], (50,75], (75,100].
_BAND_EDGES = ((25.0, DepressionLevel.HAPPY), (50.0, DepressionLevel.LOW_DEPRESSED),
               (75.0, DepressionLevel.MEDIUM_DEPRESSED), (100.0, DepressionLevel.HIGH_DEPRESSED))


def is_negative(sent: Sentiment | float, window: tuple[float, float] = NEGATIVE_WINDOW) -> bool:
    score = sent.score if isinstance(sent, Sentiment) else sent
    lo, hi = window
    return lo <= score <= hi


def compute_components(sents: Sequence[Sentiment], window: tuple[float, float] = NEGATIVE_WINDOW) -> MetricComponents:
    n_total = len(sents)
    negatives = [s for s in sents if is_negative(s, window)]
    n_neg = len(negatives)
    if n_neg == 0:
        return MetricComponents(0.0, 0.0, 0.0, 0.0, n_total, 0)
    x = n_neg / n_total
    y = math.fsum(s.score for s in negatives) / n_neg
    z = math.fsum(s.magnitude for s in negatives) / n_neg
    s = min(100.0, max(0.0, 100.0 * x + abs(y) / 2.0 + z / 4.0))
    return MetricComponents(x, y, z, s, n_total, n_neg)


def classify(s: float) -> DepressionLevel:
    if not (0.0 <= s <= 100.0):
        raise OutOfRange(f"score {s!r} outside [0, 100]")
    for edge, level in _BAND_EDGES:
        if s <= edge:
            return level
    raise AssertionError("unreachable")


def _clamp_unit(v: float) -> float:
    return min(1.0, max(-1.0, v))


def emotion_to_percent(mean_emotion: float) -> float:
    """Map a mean line emotion in [-1, 1] to a sadness percentage (-1 -> 100, +1 -> 0)."""
    return (1.0 - mean_emotion) / 2.0 * 100.0


def intensity_overall(line_emotions: Sequence[float]) -> float:
    """Average line emotion expressed as a sadness percentage in [0, 100].

    Each line is clamped to [-1, 1] first; an empty transcript maps to 50.
    """
    if not line_emotions:
        return emotion_to_percent(0.0)
    m = math.fsum(_clamp_unit(e) for e in line_emotions) / len(line_emotions)
    return emotion_to_percent(m)
