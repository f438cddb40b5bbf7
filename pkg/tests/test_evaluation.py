import random

import pytest
from hypothesis import given, settings, strategies as st

from legalner.core import EntityLabel, EntitySpan
from legalner.evaluation import (EvalReport, Scheme, per_entity_table, prf, score, score_units,
                                 table_rows)

from generators import perturb, random_flat_spans
from oracles import optimal_match_count, oracle_prf


def S(start, end, label):
    return EntitySpan(start, end, label)


def test_prefix_missing_precedent():
    gold_text = "Mr Amit Kumar Vs State of Maharashtra"
    gold = [S(0, len(gold_text), "PRECEDENT")]
    pred = [S(3, len(gold_text), "PRECEDENT")]
    strict = score(gold, pred, Scheme.STRICT).overall
    typed = score(gold, pred, Scheme.TYPE_MATCH).overall
    assert (strict.tp, strict.fp, strict.fn) == (0, 1, 1)
    assert (typed.tp, typed.fp, typed.fn) == (1, 0, 0)


@pytest.mark.parametrize("scheme", list(Scheme))
def test_identity(scheme):
    gold = [S(0, 5, "ORG"), S(10, 20, "DATE")]
    o = score(gold, list(gold), scheme).overall
    assert (o.precision, o.recall, o.f1) == (1.0, 1.0, 1.0)


def test_half_right():
    # oracle: 2 gold, 2 pred, best assignment has 1 match -> P = R = F1 = 0.5
    gold = [S(0, 5, "ORG"), S(10, 20, "DATE")]
    pred = [S(0, 5, "ORG"), S(30, 40, "GPE")]
    assert optimal_match_count(gold, pred, "STRICT") == 1
    assert oracle_prf(1, 2, 2) == (0.5, 0.5, 0.5)
    o = score(gold, pred, Scheme.STRICT).overall
    assert (o.precision, o.recall, o.f1) == (0.5, 0.5, 0.5)


def test_type_mismatch_never_counts():
    o = score([S(0, 5, "ORG")], [S(0, 5, "GPE")], Scheme.TYPE_MATCH).overall
    assert (o.tp, o.fp, o.fn) == (0, 1, 1)


def test_one_prediction_spanning_two_golds_matches_one():
    gold = [S(0, 5, "ORG"), S(6, 10, "ORG")]
    o = score(gold, [S(0, 10, "ORG")], Scheme.TYPE_MATCH).overall
    assert (o.tp, o.fp, o.fn) == (1, 0, 1)


def test_overlapping_input_rejected():
    with pytest.raises(ValueError):
        score([S(0, 5, "ORG"), S(3, 8, "GPE")], [], Scheme.STRICT)
    with pytest.raises(ValueError):
        score([], [S(0, 5, "ORG"), S(4, 8, "GPE")], Scheme.TYPE_MATCH)


def test_prf_zero_denominators():
    assert prf(0, 0, 0) == (0.0, 0.0, 0.0)
    assert prf(0, 3, 0) == (0.0, 0.0, 0.0)


def test_per_label_and_micro_overall():
    gold = [S(0, 4, "ORG"), S(5, 9, "ORG"), S(10, 14, "GPE")]
    pred = [S(0, 4, "ORG"), S(10, 14, "DATE")]
    rep = score(gold, pred, Scheme.STRICT)
    org, gpe, date = (rep.per_label[EntityLabel(x)] for x in ("ORG", "GPE", "DATE"))
    assert (org.tp, org.fp, org.fn) == (1, 0, 1)
    assert (gpe.tp, gpe.fp, gpe.fn) == (0, 0, 1)
    assert (date.tp, date.fp, date.fn) == (0, 1, 0)
    o = rep.overall
    assert (o.tp, o.fp, o.fn, o.support) == (1, 1, 2, 3)
    assert o.avg_gold_len == 4.0


def test_units_merge_by_summation():
    gold = {"a": [S(0, 4, "ORG")], "b": [S(0, 3, "GPE")]}
    pred = {"a": [S(0, 4, "ORG")], "b": [S(1, 3, "GPE")], "c": [S(0, 2, "DATE")]}
    rep = score_units(gold, pred, Scheme.STRICT)
    o = rep.overall
    assert (o.tp, o.fp, o.fn) == (1, 2, 1)
    parts = [score(gold.get(k, []), pred.get(k, []), "strict") for k in "abc"]
    total = EvalReport(Scheme.STRICT)
    for p in parts:
        total.merge(p)
    assert total.as_dict() == rep.as_dict()


def test_table_empty_is_all_zero():
    table = per_entity_table(EvalReport(Scheme.STRICT), EvalReport(Scheme.TYPE_MATCH))
    lines = table.splitlines()
    assert [c.strip() for c in lines[0].split("|")[1:]] == ["Count", "Avg. Len.", "F1", "Type match F1"]
    assert len(lines) == 2 + 14 + 1
    for line in lines[2:]:
        assert [c.strip() for c in line.split("|")[1:]] == ["0", "0", "0.0", "0.0"]


def test_table_single_label():
    # hand count: gold PROVISION spans of length 10 and 14 (avg 12); strict tp 1 of 2
    # preds -> P = R = 0.5, F1 = 50.0; type-match tp 2 -> F1 = 100.0
    gold = [S(0, 10, "PROVISION"), S(20, 34, "PROVISION")]
    pred = [S(0, 10, "PROVISION"), S(22, 34, "PROVISION")]
    table = per_entity_table(score(gold, pred, "strict"), score(gold, pred, "typematch"))
    rows = {l.split("|")[0].strip(): [c.strip() for c in l.split("|")[1:]] for l in table.splitlines()[2:]}
    assert rows["PROVISION"] == ["2", "12", "50.0", "100.0"]
    assert rows["Overall"] == ["2", "12", "50.0", "100.0"]
    assert rows["ORG"] == ["0", "0", "0.0", "0.0"]
    assert table_rows(score(gold, pred, "strict"), score(gold, pred, "typematch"))["PROVISION"]["f1"] == 0.5


def test_greedy_equals_oracle_on_random_units():
    for seed in range(300):
        rng = random.Random(seed)
        gold = random_flat_spans(rng)
        pred = perturb(rng, gold)
        for scheme in ("STRICT", "TYPE_MATCH"):
            assert score(gold, pred, scheme).overall.tp == optimal_match_count(gold, pred, scheme)


flat_spans = st.lists(st.tuples(st.integers(0, 60), st.integers(1, 8), st.sampled_from(["ORG", "GPE"])),
                      max_size=8).map(
    lambda raw: sorted({S(a, a + n, l) for a, n, l in raw}, key=lambda s: (s.start, s.end)))


def _flatten(spans):
    out = []
    for s in spans:
        if not out or s.start >= out[-1].end:
            out.append(s)
    return out


@settings(max_examples=200, deadline=None)
@given(flat_spans, flat_spans, st.randoms(use_true_random=False))
def test_dominance_bound_and_shuffle(g, p, rnd):
    gold, pred = _flatten(g), _flatten(p)
    strict = score(gold, pred, "strict").overall
    typed = score(gold, pred, "typematch").overall
    assert strict.tp <= typed.tp and strict.f1 <= typed.f1
    if strict.precision and strict.recall:
        assert min(strict.precision, strict.recall) - 1e-12 <= strict.f1 <= max(strict.precision, strict.recall) + 1e-12
    shuffled = list(pred)
    rnd.shuffle(shuffled)
    assert score(gold, shuffled, "strict").as_dict() == score(gold, pred, "strict").as_dict()


def test_scheme_parse():
    assert Scheme.parse("typematch") is Scheme.TYPE_MATCH
    assert Scheme.parse("strict") is Scheme.STRICT
    with pytest.raises(ValueError):
        Scheme.parse("partial")
