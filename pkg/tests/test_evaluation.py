import json

import pytest
import scipy.stats
from hypothesis import given, strategies as st

from depscore.corpus import PhqRecord, parse_reference, read_path
from depscore.errors import NoOverlap, OutOfRange
from depscore.evaluation import (
    CAVEAT,
    PhqCategory,
    average_ranks,
    compare,
    format_score,
    parse_scores,
    pearson,
    phq8_category,
    spearman,
)
from depscore.metrics import DepressionLevel

SAMPLE7 = {302: (20.2, 2), 346: (36, 23), 367: (28, 19), 382: (12, 0), 439: (29, 1), 440: (19, 19), 482: (25, 1)}
# Exact rational computation (Fraction/Decimal, brute-force ranks) done before the build.
SAMPLE7_PEARSON = 0.4972756594690466464
SAMPLE7_SPEARMAN = 0.4909902530309828578


def _refs():
    return [PhqRecord(pid, int(phq >= 10), phq, "0") for pid, (_, phq) in SAMPLE7.items()]


@pytest.mark.parametrize(
    "score, cat",
    [(0, PhqCategory.NORMAL), (1, PhqCategory.NORMAL), (9, PhqCategory.NORMAL), (10, PhqCategory.MAJOR),
     (19, PhqCategory.MAJOR), (20, PhqCategory.SEVERE), (23, PhqCategory.SEVERE), (24, PhqCategory.SEVERE)],
)
def test_phq8_category(score, cat):
    assert phq8_category(score) is cat


def test_phq8_category_range():
    with pytest.raises(OutOfRange):
        phq8_category(25)
    with pytest.raises(OutOfRange):
        phq8_category(-1)


def test_phq8_monotone():
    order = [PhqCategory.NORMAL, PhqCategory.MAJOR, PhqCategory.SEVERE]
    cats = [order.index(phq8_category(s)) for s in range(25)]
    assert cats == sorted(cats)


def test_sample7_compare():
    rep = compare({pid: a for pid, (a, _) in SAMPLE7.items()}, _refs())
    assert [(r.participant_id, r.algorithm_score, r.phq8_score) for r in rep.rows] == [
        (pid, float(a), p) for pid, (a, p) in sorted(SAMPLE7.items())
    ]
    assert rep.pearson == pytest.approx(SAMPLE7_PEARSON, abs=1e-9)
    assert rep.spearman == pytest.approx(SAMPLE7_SPEARMAN, abs=1e-9)
    row439 = next(r for r in rep.rows if r.participant_id == 439)
    assert row439.algorithm_level is DepressionLevel.LOW_DEPRESSED
    assert row439.phq8_category is PhqCategory.NORMAL
    assert row439.concordant is False
    assert rep.caveat == CAVEAT


def test_sample7_scipy_crosscheck():
    a = [SAMPLE7[p][0] for p in sorted(SAMPLE7)]
    b = [SAMPLE7[p][1] for p in sorted(SAMPLE7)]
    assert pearson(a, b) == pytest.approx(scipy.stats.pearsonr(a, b)[0], abs=1e-12)
    assert spearman(a, b) == pytest.approx(scipy.stats.spearmanr(a, b)[0], abs=1e-12)


def test_identical_scores_pearson_one():
    assert pearson([1, 2, 3, 5], [1, 2, 3, 5]) == pytest.approx(1.0)


def test_undefined_correlation():
    rep = compare({439: 29.0}, _refs())
    assert rep.pearson is None and rep.spearman is None
    d = rep.to_dict()
    assert d["pearson"] == "undefined" and d["spearman"] == "undefined"
    assert "NaN" not in rep.to_json()
    assert pearson([1, 1, 1], [1, 2, 3]) is None


def test_no_overlap():
    with pytest.raises(NoOverlap):
        compare({1: 10.0}, _refs())


def test_rows_sorted_regardless_of_order():
    scores = {pid: a for pid, (a, _) in reversed(list(SAMPLE7.items()))}
    refs = list(reversed(_refs()))
    assert compare(scores, refs) == compare({pid: a for pid, (a, _) in SAMPLE7.items()}, _refs())


@given(st.floats(0.01, 100), st.floats(-100, 100))
def test_pearson_affine_invariance(scale, shift):
    a = [SAMPLE7[p][0] for p in sorted(SAMPLE7)]
    b = [SAMPLE7[p][1] for p in sorted(SAMPLE7)]
    assert abs(pearson([scale * x + shift for x in a], b) - pearson(a, b)) <= 1e-12


def test_average_ranks_ties():
    assert list(average_ranks([2, 23, 19, 0, 1, 19, 1])) == [4, 7, 5.5, 1, 2.5, 5.5, 2.5]


def test_text_report_contains_table_and_caveat(fixtures_dir):
    rep = compare(parse_scores(read_path(fixtures_dir / "sample7_scores.csv")),
                  parse_reference(read_path(fixtures_dir / "sample7_reference.csv")))
    text = rep.to_text()
    assert text.startswith(read_path(fixtures_dir / "sample7_expected.txt"))
    assert CAVEAT in text
    assert json.loads(rep.to_json())["caveat"] == CAVEAT


@pytest.mark.parametrize("value, text", [(20.2, "20.2"), (36.0, "36"), (29.455, "29.455"), (0.0, "0")])
def test_format_score(value, text):
    assert format_score(value) == text
