import pytest
from hypothesis import given, settings, strategies as st

from legalner.core import (DocType, EntityLabel, EntitySpan, JudgmentDoc, normalize_name,
                           validate_doc)


def rules(violations):
    return [v.rule for v in violations]


def test_label_set_is_exactly_fourteen():
    assert len(EntityLabel) == 14
    assert EntityLabel.parse("OTHER_PERSON") is EntityLabel.OTHER_PERSON
    with pytest.raises(ValueError):
        EntityLabel.parse("PERSON")


@pytest.mark.parametrize("label, regions", [
    ("LAWYER", {"preamble"}),
    ("COURT", {"preamble", "judgment"}),
    ("JUDGE", {"preamble", "judgment"}),
    ("PRECEDENT", {"judgment"}),
    ("OTHER_PERSON", {"judgment"}),
])
def test_validity_domains(label, regions):
    assert EntityLabel(label).regions == regions


def test_doc_types():
    assert {d.value for d in DocType} == {"PREAMBLE", "JUDGMENT_SENTENCE", "FULL_JUDGMENT"}


def test_inverted_span():
    doc = JudgmentDoc("d", "Amit Kumar filed it", spans=[EntitySpan(5, 3, "OTHER_PERSON", id="a")])
    assert "start ≥ end" in rules(validate_doc(doc))


def test_nested_span_flagged():
    doc = JudgmentDoc("d", "Bank of China", spans=[
        EntitySpan(0, 13, "ORG", id="a"), EntitySpan(8, 13, "GPE", id="b")])
    assert "nested span" in rules(validate_doc(doc))


def test_partial_overlap_flagged():
    doc = JudgmentDoc("d", "Bank of China Ltd", spans=[
        EntitySpan(0, 13, "ORG", id="a"), EntitySpan(8, 17, "ORG", id="b")])
    assert "overlapping span" in rules(validate_doc(doc))


def test_well_formed_single_span():
    doc = JudgmentDoc("d", "The loan from Bank of China.", spans=[EntitySpan(14, 27, "ORG", id="a")])
    assert validate_doc(doc) == []


def test_out_of_bounds_and_duplicates():
    doc = JudgmentDoc("d", "short", spans=[EntitySpan(0, 9, "ORG", id="a")])
    assert "out of bounds" in rules(validate_doc(doc))
    doc = JudgmentDoc("d", "Bank of China", spans=[
        EntitySpan(0, 13, "ORG", id="a"), EntitySpan(0, 13, "ORG", id="b")])
    assert "duplicate span" in rules(validate_doc(doc))


def test_span_crossing_sentences():
    text = "He met Amit. Kumar left."
    doc = JudgmentDoc("d", text, sentence_bounds=[(0, 12), (13, 24)],
                      spans=[EntitySpan(7, 18, "OTHER_PERSON", id="a")])
    assert "crosses unit boundary" in rules(validate_doc(doc))


def test_lawyer_in_judgment_is_warning():
    text = "HEADER\nMr. Rao argued the case."
    doc = JudgmentDoc("d", text, sentence_bounds=[(7, len(text))], preamble_end=7,
                      spans=[EntitySpan(11, 14, "LAWYER", id="a")])
    (v,) = validate_doc(doc)
    assert v.severity == "warning" and v.rule == "label outside validity domain"


def test_sentence_invariants():
    text = "One. Two. Three."
    doc = JudgmentDoc("d", text, sentence_bounds=[(0, 4), (3, 9)])
    assert "overlapping sentences" in rules(validate_doc(doc))
    doc = JudgmentDoc("d", text, sentence_bounds=[(5, 9)], preamble_end=2)
    assert "preamble boundary" in rules(validate_doc(doc))


def test_normalize_name():
    assert normalize_name("  Amit   KUMAR, ") == "amit kumar"
    assert normalize_name("'the Act'") == "the act"


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.integers(-3, 30), st.integers(-3, 30),
                          st.sampled_from([l.value for l in EntityLabel])), max_size=6))
def test_validate_is_pure(raw):
    doc = JudgmentDoc("d", "x" * 25, spans=[EntitySpan(s, e, l, id=str(i)) for i, (s, e, l) in enumerate(raw)])
    assert validate_doc(doc) == validate_doc(doc)
