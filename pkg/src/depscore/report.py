"""Artifact writers. Output is a pure function of the inputs: no timestamps, sorted keys."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Iterable

from depscore.config import RunConfig
from depscore.pipeline import ParticipantResult
from depscore.timeline import MoodTimeline


def report_json(result: ParticipantResult, cfg: RunConfig, engine_id: str) -> str:
    doc = result.to_dict()
    doc["engine"] = engine_id
    doc["config"] = cfg.to_dict()
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def timeline_csv(timeline: MoodTimeline | None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["index", "t_start", "t_end", "mean_emotion", "n_units"])
    for iv in timeline.intervals if timeline else ():
        w.writerow([iv.index, repr(iv.t_start), repr(iv.t_end), "" if iv.mean_emotion is None else repr(iv.mean_emotion), iv.n_units])
    return buf.getvalue()


def timeline_svg(timeline: MoodTimeline | None, title: str = "") -> str:
    """Static line chart: x = bin index, y = mean emotion in [-1, 1], dashed zero line."""
    width, height, pad = 640, 320, 48
    plot_w, plot_h = width - 2 * pad, height - 2 * pad
    intervals = timeline.intervals if timeline else ()
    k = max(1, len(intervals))

    def px(i: int) -> float:
        return pad + (plot_w * i / (k - 1) if k > 1 else plot_w / 2)

    def py(v: float) -> float:
        return pad + plot_h * (1.0 - (v + 1.0) / 2.0)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.2f}" y="24" text-anchor="middle" font-family="sans-serif" font-size="14">{title}</text>',
        f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{height - pad}" stroke="black"/>',
        f'<line x1="{pad}" y1="{py(0.0):.2f}" x2="{width - pad}" y2="{py(0.0):.2f}" stroke="gray" stroke-dasharray="4 4"/>',
    ]
    for v in (-1.0, 0.0, 1.0):
        parts.append(
            f'<text x="{pad - 6}" y="{py(v) + 4:.2f}" text-anchor="end" font-family="sans-serif" font-size="11">{v:+.1f}</text>'
        )
    points = [(px(iv.index), py(iv.mean_emotion)) for iv in intervals if iv.mean_emotion is not None]
    if len(points) > 1:
        coords = " ".join(f"{x:.2f},{y:.2f}" for x, y in points)
        parts.append(f'<polyline points="{coords}" fill="none" stroke="steelblue" stroke-width="2"/>')
    for x, y in points:
        parts.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="steelblue"/>')
    for iv in intervals:
        parts.append(
            f'<text x="{px(iv.index):.2f}" y="{height - pad + 16}" text-anchor="middle" font-family="sans-serif" font-size="11">{iv.index}</text>'
        )
    parts.append(
        f'<text x="{width / 2:.2f}" y="{height - 8}" text-anchor="middle" font-family="sans-serif" font-size="12">interval</text>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def scores_csv(results: Iterable[ParticipantResult]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["participant_id", "score", "level"])
    for r in sorted(results, key=lambda r: r.participant_id):
        w.writerow([r.participant_id, repr(r.components.s), r.level.label])
    return buf.getvalue()


def write_participant(result: ParticipantResult, cfg: RunConfig, engine_id: str, out_dir: Path) -> list[Path]:
    out_dir.mkdir(parents=True, exist_ok=True)
    pid = result.participant_id
    written = []
    if "json" in cfg.formats:
        written.append(write_text(out_dir / f"{pid}_report.json", report_json(result, cfg, engine_id)))
    if "csv" in cfg.formats:
        written.append(write_text(out_dir / f"{pid}_timeline.csv", timeline_csv(result.timeline)))
    if "svg" in cfg.formats:
        written.append(write_text(out_dir / f"{pid}_timeline.svg", timeline_svg(result.timeline, f"Participant {pid}")))
    return written


def write_text(path: Path, text: str) -> Path:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return path
