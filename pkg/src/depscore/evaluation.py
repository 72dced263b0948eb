"""Compare algorithm scores with PHQ-8 reference scores."""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Sequence, TextIO

import numpy as np

from depscore.corpus import PhqRecord
from depscore.errors import MalformedRow, MissingColumn, NoOverlap, OutOfRange
from depscore.metrics import DepressionLevel, classify

CAVEAT = (
    "Algorithm scores are derived from the sentiment of interview text, while PHQ8 "
    "scores are self-reported questionnaire totals. The two are measured in different "
    "ways and are not directly comparable; concordance and correlation reported here are "
    "diagnostics only, not a validation of clinical accuracy."
)


class PhqCategory(str, Enum):
    NORMAL = "Normal"
    MAJOR = "MajorDepression"
    SEVERE = "SevereMajorDepression"


def phq8_category(total_score: int) -> PhqCategory:
    if not 0 <= total_score <= 24:
        raise OutOfRange(f"PHQ8 score {total_score} outside 0..24")
    if total_score >= 20:
        return PhqCategory.SEVERE
    if total_score >= 10:
        return PhqCategory.MAJOR
    return PhqCategory.NORMAL


def format_score(value: float) -> str:
    """Render a score the way it would be printed: no trailing ``.0`` on integers."""
    if float(value).is_integer():
        return str(int(value))
    return repr(float(value))


@dataclass(frozen=True)
class ComparisonRow:
    participant_id: int
    algorithm_score: float
    algorithm_level: DepressionLevel
    phq8_score: int
    phq8_category: PhqCategory

    @property
    def concordant(self) -> bool:
        # Only the binary alignment is scored: Happy <-> Normal, any depressed level <-> PHQ8 >= 10.
        return (self.algorithm_level is DepressionLevel.HAPPY) == (self.phq8_category is PhqCategory.NORMAL)

    def to_dict(self) -> dict:
        return {
            "participant_id": self.participant_id,
            "algorithm_score": self.algorithm_score,
            "algorithm_level": self.algorithm_level.label,
            "phq8_score": self.phq8_score,
            "phq8_category": self.phq8_category.value,
            "concordant": self.concordant,
        }


@dataclass(frozen=True)
class ComparisonReport:
    rows: tuple[ComparisonRow, ...]
    pearson: float | None
    spearman: float | None
    caveat: str = CAVEAT

    @property
    def concordance(self) -> float:
        return sum(r.concordant for r in self.rows) / len(self.rows)

    def to_dict(self) -> dict:
        return {
            "rows": [r.to_dict() for r in self.rows],
            "n": len(self.rows),
            "concordance": self.concordance,
            "pearson": "undefined" if self.pearson is None else self.pearson,
            "spearman": "undefined" if self.spearman is None else self.spearman,
            "caveat": self.caveat,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_text(self) -> str:
        headers = ("Transcript Number", "Algorithm Score", "PHQ8 Score")
        body = [(str(r.participant_id), format_score(r.algorithm_score), str(r.phq8_score)) for r in self.rows]
        widths = [max(len(h), *(len(b[i]) for b in body)) for i, h in enumerate(headers)]

        def line(cells):
            return "| " + " | ".join(c.ljust(w) for c, w in zip(cells, widths)) + " |"

        out = [line(headers), "|" + "|".join("-" * (w + 2) for w in widths) + "|"]
        out += [line(b) for b in body]
        out.append("")
        out.append(f"concordant (Happy <-> Normal): {sum(r.concordant for r in self.rows)}/{len(self.rows)}")
        out.append(f"pearson: {_fmt_corr(self.pearson)}")
        out.append(f"spearman: {_fmt_corr(self.spearman)}")
        out.append("")
        out.append(f"Note: {self.caveat}")
        return "\n".join(out) + "\n"


def _fmt_corr(value: float | None) -> str:
    return "undefined" if value is None else f"{value:.6f}"


def average_ranks(values: Sequence[float]) -> np.ndarray:
    """1-based ranks, ties sharing the mean of the positions they span."""
    a = np.asarray(values, dtype=float)
    order = np.argsort(a, kind="mergesort")
    ranks = np.empty(len(a), dtype=float)
    sorted_a = a[order]
    i = 0
    while i < len(a):
        j = i
        while j + 1 < len(a) and sorted_a[j + 1] == sorted_a[i]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def pearson(a: Sequence[float], b: Sequence[float]) -> float | None:
    """Pearson correlation, or ``None`` with fewer than two points or zero variance."""
    x = np.asarray(a, dtype=float)
    y = np.asarray(b, dtype=float)
    if len(x) != len(y):
        raise ValueError("sequences differ in length")
    if len(x) < 2:
        return None
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    if sxx == 0.0 or syy == 0.0:
        return None
    r = float(dx @ dy) / math.sqrt(sxx * syy)
    return min(1.0, max(-1.0, r))


def spearman(a: Sequence[float], b: Sequence[float]) -> float | None:
    if len(a) < 2:
        return None
    return pearson(average_ranks(a), average_ranks(b))


def compare(scores: Mapping[int, float], refs: Sequence[PhqRecord]) -> ComparisonReport:
    by_id = {r.participant_id: r for r in refs}
    joined = sorted(set(scores) & set(by_id))
    if not joined:
        raise NoOverlap("no participant appears in both the scores and the reference")
    rows = tuple(
        ComparisonRow(
            participant_id=pid,
            algorithm_score=float(scores[pid]),
            algorithm_level=classify(float(scores[pid])),
            phq8_score=by_id[pid].total_score,
            phq8_category=phq8_category(by_id[pid].total_score),
        )
        for pid in joined
    )
    algo = [r.algorithm_score for r in rows]
    phq = [r.phq8_score for r in rows]
    return ComparisonReport(rows, pearson(algo, phq), spearman(algo, phq))


def parse_scores(raw: TextIO | str) -> dict[int, float]:
    """Read a ``participant_id,score`` CSV as written by ``depscore analyze``."""
    text = raw if isinstance(raw, str) else raw.read()
    reader = csv.DictReader(text.lstrip("﻿").splitlines())
    fields = [f.strip() for f in reader.fieldnames or []]
    for col in ("participant_id", "score"):
        if col not in fields:
            raise MissingColumn(f"scores file lacks column {col!r}")
    reader.fieldnames = fields
    out: dict[int, float] = {}
    for lineno, row in enumerate(reader, start=2):
        try:
            pid = int(row["participant_id"].strip())
            score = float(row["score"].strip())
        except (AttributeError, ValueError):
            raise MalformedRow(f"scores line {lineno}: bad row {row}") from None
        if not math.isfinite(score):
            raise MalformedRow(f"scores line {lineno}: non-finite score")
        if pid in out:
            raise MalformedRow(f"scores line {lineno}: duplicate participant {pid}")
        out[pid] = score
    return out
