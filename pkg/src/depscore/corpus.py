"""Readers for interview transcripts, PHQ-8 reference splits, lexicons and word lists.

Transcripts follow the DAIC-WOZ layout: tab-delimited, one timed turn per row,
header ``start_time  stop_time  speaker  value``. Reference files follow the
AVEC2017 split CSV (``Participant_ID, PHQ8_Binary, PHQ8_Score, Gender`` plus
optional per-item columns).
"""

from __future__ import annotations

import csv
import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from types import MappingProxyType
from typing import Mapping, TextIO

from depscore.errors import (
    BadPosClass,
    DuplicateToken,
    EmptyFile,
    EmptyList,
    InconsistentBinary,
    InconsistentItems,
    MalformedRow,
    MissingColumn,
    NegativeDuration,
    NonPositiveWeight,
    ScoreOutOfRange,
)

logger = logging.getLogger(__name__)

TRANSCRIPT_HEADER = ("start_time", "stop_time", "speaker", "value")
REFERENCE_COLUMNS = ("Participant_ID", "PHQ8_Binary", "PHQ8_Score", "Gender")
PHQ8_ITEM_COLUMNS = (
    "PHQ8_NoInterest",
    "PHQ8_Depressed",
    "PHQ8_Sleep",
    "PHQ8_Tired",
    "PHQ8_Appetite",
    "PHQ8_Failure",
    "PHQ8_Concentrating",
    "PHQ8_Moving",
)
PHQ8_MAX = 24
PHQ8_CUT = 10

# Plain decimal only: no thousands separators, no inf/nan, no underscores.
_DECIMAL = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")


@dataclass(frozen=True)
class Utterance:
    """One timed dialogue turn."""

    start: float
    stop: float
    speaker: str
    text: str
    # Original field text, kept so a parsed file serializes back unchanged.
    start_raw: str | None = field(default=None, compare=False, repr=False)
    stop_raw: str | None = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.start < 0:
            raise MalformedRow(f"negative start time {self.start}")
        if self.stop < self.start:
            raise NegativeDuration(f"stop {self.stop} < start {self.start}")
        if not self.speaker.strip():
            raise MalformedRow("empty speaker label")

    def speaker_is(self, label: str) -> bool:
        return self.speaker.strip().casefold() == label.strip().casefold()


@dataclass(frozen=True)
class Transcript:
    participant_id: int
    utterances: tuple[Utterance, ...] = ()

    def __len__(self) -> int:
        return len(self.utterances)


@dataclass(frozen=True)
class PhqRecord:
    participant_id: int
    binary_label: int
    total_score: int
    gender: str
    items: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if not 0 <= self.total_score <= PHQ8_MAX:
            raise ScoreOutOfRange(
                f"participant {self.participant_id}: PHQ8 score {self.total_score} not in 0..{PHQ8_MAX}"
            )
        if self.binary_label not in (0, 1):
            raise InconsistentBinary(f"participant {self.participant_id}: binary label must be 0 or 1")
        if self.binary_label != int(self.total_score >= PHQ8_CUT):
            raise InconsistentBinary(
                f"participant {self.participant_id}: binary {self.binary_label} contradicts score {self.total_score}"
            )
        if self.items:
            if len(self.items) != 8 or any(not 0 <= v <= 3 for v in self.items):
                raise InconsistentItems(f"participant {self.participant_id}: items must be eight values in 0..3")
            if sum(self.items) != self.total_score:
                raise InconsistentItems(
                    f"participant {self.participant_id}: items sum {sum(self.items)} != score {self.total_score}"
                )


class PosClass(str, Enum):
    ADJECTIVE = "adjective"
    ADVERB = "adverb"
    VERB = "verb"
    OTHER = "other"


@dataclass(frozen=True)
class LexEntry:
    sign: int
    weight: float
    pos_class: PosClass
    depression_term: bool = False


@dataclass(frozen=True)
class Lexicon:
    entries: Mapping[str, LexEntry]

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", MappingProxyType(dict(self.entries)))

    def get(self, token: str) -> LexEntry | None:
        return self.entries.get(token)

    def __contains__(self, token: object) -> bool:
        return token in self.entries

    def __len__(self) -> int:
        return len(self.entries)


class WordListKind(str, Enum):
    STOPWORDS = "stopwords"
    FILLERS = "fillers"
    PRONOUNS = "pronouns_first_singular"


@dataclass(frozen=True)
class WordList:
    kind: WordListKind
    words: frozenset[str]

    def __contains__(self, token: object) -> bool:
        return token in self.words

    def __len__(self) -> int:
        return len(self.words)


def _parse_time(value: str, lineno: int) -> float:
    text = value.strip()
    if not _DECIMAL.fullmatch(text):
        raise MalformedRow(f"line {lineno}: unparsable time {value!r}")
    return float(text)


def _lines(raw: TextIO | str) -> list[str]:
    text = raw if isinstance(raw, str) else raw.read()
    # Only LF / CRLF break lines; other Unicode separators may appear in utterance text.
    return text.replace("\r\n", "\n").split("\n")


def parse_transcript(raw: TextIO | str, participant_id: int, delimiter: str = "\t") -> Transcript:
    """Parse a timed transcript into a :class:`Transcript`.

    Rows out of start-time order are re-sorted (stable) with a logged warning
    rather than rejected.

    Raises:
        EmptyFile: no header, or header without data rows.
        MalformedRow: wrong column count, bad header or unparsable time.
        NegativeDuration: a row stops before it starts.
    """
    lines = _lines(raw)
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise EmptyFile("transcript is empty")
    header = tuple(h.strip().lower() for h in lines[0].lstrip("﻿").split(delimiter))
    if header != TRANSCRIPT_HEADER:
        raise MalformedRow(f"line 1: expected header {TRANSCRIPT_HEADER}, got {header}")
    if len(lines) == 1:
        raise EmptyFile("transcript has a header but no rows")

    utterances = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        cols = line.rstrip("\r\n").split(delimiter)
        if len(cols) != len(TRANSCRIPT_HEADER):
            raise MalformedRow(f"line {lineno}: expected 4 columns, got {len(cols)}")
        start_raw, stop_raw, speaker, text = cols
        start = _parse_time(start_raw, lineno)
        stop = _parse_time(stop_raw, lineno)
        if stop < start:
            raise NegativeDuration(f"line {lineno}: stop {stop} < start {start}")
        try:
            utterances.append(Utterance(start, stop, speaker, text, start_raw=start_raw, stop_raw=stop_raw))
        except MalformedRow as exc:
            raise MalformedRow(f"line {lineno}: {exc}") from None

    ordered = sorted(utterances, key=lambda u: u.start)
    if ordered != utterances:
        logger.warning("participant %s: utterances out of time order, re-sorted by start time", participant_id)
    return Transcript(participant_id, tuple(ordered))


def serialize_transcript(transcript: Transcript, delimiter: str = "\t") -> str:
    out = [delimiter.join(TRANSCRIPT_HEADER)]
    for u in transcript.utterances:
        start = u.start_raw if u.start_raw is not None else repr(u.start)
        stop = u.stop_raw if u.stop_raw is not None else repr(u.stop)
        out.append(delimiter.join((start, stop, u.speaker, u.text)))
    return "\n".join(out) + "\n"


def _int_field(row: dict, column: str, lineno: int) -> int:
    value = (row.get(column) or "").strip()
    try:
        number = float(value)
    except ValueError:
        raise MalformedRow(f"line {lineno}: {column} is not a number: {value!r}") from None
    if not number.is_integer():
        raise MalformedRow(f"line {lineno}: {column} is not an integer: {value!r}")
    return int(number)


def parse_reference(raw: TextIO | str) -> list[PhqRecord]:
    """Parse a PHQ-8 reference CSV into records, in file order."""
    text = raw if isinstance(raw, str) else raw.read()
    reader = csv.DictReader(text.lstrip("﻿").splitlines())
    fields = [f.strip() for f in reader.fieldnames or []]
    if not fields:
        raise EmptyFile("reference file is empty")
    reader.fieldnames = fields
    missing = [c for c in REFERENCE_COLUMNS if c not in fields]
    if missing:
        raise MissingColumn(f"reference file lacks column(s): {', '.join(missing)}")
    has_items = all(c in fields for c in PHQ8_ITEM_COLUMNS)

    records = []
    for lineno, row in enumerate(reader, start=2):
        if not any((v or "").strip() for v in row.values()):
            continue
        items: tuple[int, ...] = ()
        if has_items and all((row.get(c) or "").strip() for c in PHQ8_ITEM_COLUMNS):
            items = tuple(_int_field(row, c, lineno) for c in PHQ8_ITEM_COLUMNS)
        records.append(
            PhqRecord(
                participant_id=_int_field(row, "Participant_ID", lineno),
                binary_label=_int_field(row, "PHQ8_Binary", lineno),
                total_score=_int_field(row, "PHQ8_Score", lineno),
                gender=(row.get("Gender") or "").strip(),
                items=items,
            )
        )
    return records


def load_lexicon(raw: TextIO | str) -> Lexicon:
    """Read a five-column lexicon: ``token sign weight pos_class depression_flag``.

    Blank lines and lines starting with ``#`` are skipped; tokens are lowercased.
    """
    entries: dict[str, LexEntry] = {}
    for lineno, line in enumerate(_lines(raw), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cols = [c.strip() for c in line.split("\t")]
        if len(cols) != 5:
            raise MalformedRow(f"lexicon line {lineno}: expected 5 columns, got {len(cols)}")
        token, sign_s, weight_s, pos_s, flag_s = cols
        token = token.lower()
        if not token:
            raise MalformedRow(f"lexicon line {lineno}: empty token")
        if token in entries:
            raise DuplicateToken(f"lexicon line {lineno}: duplicate token {token!r}")
        if sign_s not in ("1", "+1", "-1"):
            raise MalformedRow(f"lexicon line {lineno}: sign must be +1 or -1, got {sign_s!r}")
        if not _DECIMAL.fullmatch(weight_s):
            raise MalformedRow(f"lexicon line {lineno}: bad weight {weight_s!r}")
        weight = float(weight_s)
        if weight <= 0:
            raise NonPositiveWeight(f"lexicon line {lineno}: weight must be > 0, got {weight_s}")
        try:
            pos = PosClass(pos_s.lower())
        except ValueError:
            raise BadPosClass(f"lexicon line {lineno}: unknown POS class {pos_s!r}") from None
        if flag_s not in ("0", "1"):
            raise MalformedRow(f"lexicon line {lineno}: depression flag must be 0 or 1, got {flag_s!r}")
        entries[token] = LexEntry(int(sign_s), weight, pos, flag_s == "1")
    return Lexicon(entries)


def load_wordlist(raw: TextIO | str, kind: WordListKind | str, allow_empty: bool = False) -> WordList:
    kind = WordListKind(kind)
    words = frozenset(
        w for w in (line.strip().lower() for line in _lines(raw)) if w and not w.startswith("#")
    )
    if not words and not allow_empty:
        raise EmptyList(f"{kind.value} list is empty")
    return WordList(kind, words)


_BUNDLED_WORDLISTS = {
    WordListKind.STOPWORDS: "stopwords.txt",
    WordListKind.FILLERS: "fillers.txt",
    WordListKind.PRONOUNS: "pronouns.txt",
}


def _read_bundled(name: str) -> str:
    return resources.files("depscore").joinpath("data", name).read_text(encoding="utf-8")


def default_lexicon() -> Lexicon:
    return load_lexicon(_read_bundled("lexicon.tsv"))


def default_wordlist(kind: WordListKind | str) -> WordList:
    kind = WordListKind(kind)
    return load_wordlist(_read_bundled(_BUNDLED_WORDLISTS[kind]), kind)


def read_path(path) -> str:
    with open(path, encoding="utf-8", newline="") as fh:
        return fh.read()
