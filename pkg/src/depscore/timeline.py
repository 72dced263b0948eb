"""Duration-based mood tracking: equal time bins over the session."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from depscore.errors import BadK, EmptySession
from depscore.metrics import emotion_to_percent
from depscore.preprocess import CleanUtterance

DEFAULT_BINS = 10
DEFAULT_ATTENTION_THRESHOLD = 0.5


@dataclass(frozen=True)
class IntervalScore:
    index: int
    t_start: float
    t_end: float
    mean_emotion: float | None  # None when no unit starts inside the bin
    n_units: int

    @property
    def defined(self) -> bool:
        return self.mean_emotion is not None

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "t_start": self.t_start,
            "t_end": self.t_end,
            "mean_emotion": self.mean_emotion,
            "n_units": self.n_units,
        }


@dataclass(frozen=True)
class MoodTimeline:
    intervals: tuple[IntervalScore, ...]
    overall_mean: float
    attention: bool
    session_start: float = 0.0
    session_end: float = 0.0

    def to_dict(self) -> dict:
        return {
            "session_start": self.session_start,
            "session_end": self.session_end,
            "overall_mean": self.overall_mean,
            "attention": self.attention,
            "intervals": [iv.to_dict() for iv in self.intervals],
        }


@dataclass(frozen=True)
class ConsistencyReport:
    timeline_percent: float
    intensity_percent: float
    diff: float
    tolerance: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "timeline_percent": self.timeline_percent,
            "intensity_percent": self.intensity_percent,
            "diff": self.diff,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


def session_duration(units: Sequence[CleanUtterance]) -> tuple[float, float]:
    if not units:
        raise EmptySession("no participant utterances to time")
    return min(u.start for u in units), max(u.stop for u in units)


def bin_edges(start: float, end: float, k: int) -> np.ndarray:
    edges = start + (end - start) * np.arange(k + 1, dtype=float) / k
    edges[-1] = end
    return edges


def assign_bins(starts: Sequence[float], edges: np.ndarray) -> np.ndarray:
    """Bin index for each start time; bins are left-closed, the last one right-closed."""
    k = len(edges) - 1
    idx = np.searchsorted(edges, np.asarray(starts, dtype=float), side="right") - 1
    return np.clip(idx, 0, k - 1)


def attention_flag(timeline: MoodTimeline | Sequence[IntervalScore], threshold: float = DEFAULT_ATTENTION_THRESHOLD) -> bool:
    """True when negative-mean bins make up more than ``threshold`` of the defined bins."""
    intervals = timeline.intervals if isinstance(timeline, MoodTimeline) else timeline
    defined = [iv for iv in intervals if iv.defined]
    if not defined:
        return False
    negative = sum(1 for iv in defined if iv.mean_emotion < 0)
    return negative / len(defined) > threshold


def bin_intervals(
    units: Sequence[CleanUtterance],
    emotions: Sequence[float],
    k: int = DEFAULT_BINS,
    attention_threshold: float = DEFAULT_ATTENTION_THRESHOLD,
) -> MoodTimeline:
    if len(units) != len(emotions):
        raise ValueError(f"{len(units)} units but {len(emotions)} emotions")
    if k < 1:
        raise BadK(f"bin count must be >= 1, got {k}")
    start, end = session_duration(units)
    edges = bin_edges(start, end, k)
    idx = assign_bins([u.start for u in units], edges)

    clamped = np.clip(np.asarray(emotions, dtype=float), -1.0, 1.0)
    counts = np.bincount(idx, minlength=k).tolist()
    sums = np.bincount(idx, weights=clamped, minlength=k).tolist()
    bounds = edges.tolist()
    intervals = tuple(
        IntervalScore(i, bounds[i], bounds[i + 1], sums[i] / counts[i] if counts[i] else None, counts[i])
        for i in range(k)
    )
    # n_units-weighted mean of bin means == plain mean over all units; fsum keeps it order-independent.
    overall = math.fsum(clamped.tolist()) / len(units)
    return MoodTimeline(
        intervals=intervals,
        overall_mean=overall,
        attention=attention_flag(intervals, attention_threshold),
        session_start=start,
        session_end=end,
    )


def consistency_check(timeline: MoodTimeline, intensity_percent: float, tolerance: float = 5.0) -> ConsistencyReport:
    if tolerance < 0:
        raise ValueError(f"tolerance must be >= 0, got {tolerance}")
    timeline_percent = emotion_to_percent(timeline.overall_mean)
    diff = abs(timeline_percent - intensity_percent)
    return ConsistencyReport(timeline_percent, intensity_percent, diff, tolerance, diff <= tolerance)
