"""Reduce a transcript to the participant's replies as clean token sequences.

Execution order: drop agent turns, strip ``<...>`` action annotations, drop
replies that were nothing but annotations, then tokenize on whitespace with
filler and stopword removal.
"""

from __future__ import annotations

import re
import string
from dataclasses import dataclass, replace

from depscore.corpus import Transcript, Utterance, WordList

DEFAULT_AGENT = "Ellie"

_ANNOTATION = re.compile(r"<[^<>]*>")
_SPLIT = re.compile(r"[\s<>]+")
_EDGE_PUNCT = string.punctuation


@dataclass(frozen=True)
class CleanUtterance:
    source: Utterance
    clean_text: str
    tokens: tuple[str, ...]
    # Filler-free tokens before stopword removal; pronoun counts need these.
    tokens_with_stopwords: tuple[str, ...] = ()

    @property
    def start(self) -> float:
        return self.source.start

    @property
    def stop(self) -> float:
        return self.source.stop

    @property
    def text(self) -> str:
        """Scoring text: surviving tokens joined by single spaces."""
        return " ".join(self.tokens)


def filter_participant(t: Transcript, agent_label: str = DEFAULT_AGENT) -> Transcript:
    if not agent_label.strip():
        raise ValueError("agent label must be non-empty")
    kept = tuple(u for u in t.utterances if not u.speaker_is(agent_label))
    return replace(t, utterances=kept)


def strip_annotations(text: str) -> str:
    """Remove ``<...>`` spans and collapse whitespace.

    An unmatched ``<`` or ``>`` is left in place. Nested spans are removed
    innermost first until none remain.
    """
    prev = None
    while prev != text:
        prev, text = text, _ANNOTATION.sub(" ", text)
    return " ".join(text.split())


def _split_tokens(text: str) -> list[str]:
    out = []
    for piece in _SPLIT.split(text.lower()):
        token = piece.strip(_EDGE_PUNCT)
        if token:
            out.append(token)
    return out


def tokenize_clean(text: str, stopwords: WordList, fillers: WordList) -> list[str]:
    return [t for t in _split_tokens(text) if t not in fillers and t not in stopwords]


def prepare_transcript(
    t: Transcript,
    stopwords: WordList,
    fillers: WordList,
    agent_label: str = DEFAULT_AGENT,
) -> list[CleanUtterance]:
    units = []
    for u in filter_participant(t, agent_label).utterances:
        clean = strip_annotations(u.text)
        if not clean:
            continue
        unfilled = [tok for tok in _split_tokens(clean) if tok not in fillers]
        tokens = tuple(tok for tok in unfilled if tok not in stopwords)
        units.append(CleanUtterance(u, clean, tokens, tuple(unfilled)))
    return units
