"""Depression-level scoring of interview transcripts from per-utterance sentiment."""

from depscore.corpus import (
    Lexicon,
    PhqRecord,
    Transcript,
    Utterance,
    WordList,
    load_lexicon,
    load_wordlist,
    parse_reference,
    parse_transcript,
)
from depscore.evaluation import compare, phq8_category
from depscore.metrics import DepressionLevel, MetricComponents, classify, compute_components, intensity_overall, is_negative
from depscore.preprocess import CleanUtterance, prepare_transcript
from depscore.sentiment import LexiconEngine, Sentiment, analyze_lexicon, line_emotion
from depscore.timeline import bin_intervals, consistency_check

__version__ = "0.1.0"

__all__ = [
    "CleanUtterance",
    "DepressionLevel",
    "Lexicon",
    "LexiconEngine",
    "MetricComponents",
    "PhqRecord",
    "Sentiment",
    "Transcript",
    "Utterance",
    "WordList",
    "analyze_lexicon",
    "bin_intervals",
    "classify",
    "compare",
    "compute_components",
    "consistency_check",
    "intensity_overall",
    "is_negative",
    "line_emotion",
    "load_lexicon",
    "load_wordlist",
    "parse_reference",
    "parse_transcript",
    "phq8_category",
    "prepare_transcript",
]
