"""Run configuration: defaults < config file < command-line flags."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Any, Mapping

from depscore.errors import ParseError

FORMATS = ("json", "csv", "svg")


@dataclass(frozen=True)
class RunConfig:
    engine: str = "lexicon"
    lexicon: str | None = None  # None selects the bundled file
    stopwords: str | None = None
    fillers: str | None = None
    pronouns: str | None = None
    scale: float = 4.0
    boost: float = 2.0
    pos_adjective: float = 4.0
    pos_adverb: float = 3.0
    pos_verb: float = 2.0
    pos_other: float = 1.0
    negative_lower: float = -1.0
    negative_upper: float = -0.25
    bins: int = 10
    attention_threshold: float = 0.5
    consistency_tolerance: float = 5.0
    agent_label: str = "Ellie"
    delimiter: str = "\t"
    out: str = "out"
    formats: tuple[str, ...] = FORMATS
    mode: str = "replay"
    cache: str | None = None
    endpoint: str | None = None
    timeout: float = 10.0
    max_in_flight: int = 4
    workers: int | None = None  # None = available parallelism

    def __post_init__(self) -> None:
        if self.engine not in ("lexicon", "remote"):
            raise ParseError(f"engine must be 'lexicon' or 'remote', got {self.engine!r}")
        if self.mode not in ("live", "replay", "record"):
            raise ParseError(f"mode must be live, replay or record, got {self.mode!r}")
        bad = [f for f in self.formats if f not in FORMATS]
        if bad or not self.formats:
            raise ParseError(f"formats must be drawn from {FORMATS}, got {self.formats}")
        if self.bins < 1:
            raise ParseError(f"bins must be >= 1, got {self.bins}")
        if self.scale <= 0 or self.boost < 1:
            raise ParseError("scale must be > 0 and boost >= 1")
        if not 0.0 <= self.attention_threshold <= 1.0:
            raise ParseError("attention threshold must lie in [0, 1]")
        if self.negative_lower > self.negative_upper:
            raise ParseError("negative window lower bound exceeds upper bound")
        if self.engine == "remote" and self.mode != "live" and not self.cache:
            raise ParseError("remote engine in replay/record mode needs --cache")

    @property
    def negative_window(self) -> tuple[float, float]:
        return (self.negative_lower, self.negative_upper)

    def to_dict(self) -> dict[str, Any]:
        d = dataclasses.asdict(self)
        d["formats"] = list(self.formats)
        d["workers"] = "auto" if self.workers is None else self.workers
        return d


_FIELD_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _coerce(key: str, value: str) -> Any:
    kind = _FIELD_TYPES[key]
    if "tuple" in kind:
        return tuple(v.strip() for v in value.split(",") if v.strip())
    if value.lower() in ("none", "") and "None" in kind:
        return None
    try:
        if kind.startswith("float"):
            return float(value)
        if kind.startswith("int"):
            return int(value)
    except ValueError:
        raise ParseError(f"config key {key!r}: cannot read {value!r}") from None
    if key == "delimiter":
        return {"\\t": "\t", "tab": "\t", "comma": ","}.get(value, value)
    return value


def parse_config_text(text: str) -> dict[str, Any]:
    """Read a flat ``key = value`` file; ``#`` starts a comment line."""
    out: dict[str, Any] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ParseError(f"config line {lineno}: expected key = value")
        key, value = (p.strip() for p in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _FIELD_TYPES:
            raise ParseError(f"config line {lineno}: unknown key {key!r}")
        out[key] = _coerce(key, value)
    return out


def load_config(path: str | Path | None, overrides: Mapping[str, Any] | None = None) -> RunConfig:
    base: dict[str, Any] = {}
    if path is not None:
        base = parse_config_text(Path(path).read_text(encoding="utf-8"))
    merged = {**base, **{k: v for k, v in (overrides or {}).items() if v is not None}}
    try:
        return RunConfig(**merged)
    except TypeError as exc:
        raise ParseError(str(exc)) from None
