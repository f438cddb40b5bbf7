import random

import pytest

from legalner.config import DEFAULT_SETTINGS
from legalner.core import EntityLabel
from legalner.coref import cluster_statutes
from legalner.pipeline import prepare_doc
from legalner.provisions import LinkMode, UNRESOLVED, link_provisions, provision_key, sentence_index

from builders import build_doc
from generators import random_judgment
from oracles import nearest_statute_sentence


def link(doc, **overrides):
    settings = DEFAULT_SETTINGS.updated(overrides) if overrides else DEFAULT_SETTINGS
    pairs = link_provisions(doc, cluster_statutes(doc, settings=settings), settings)
    return [(doc.span_text(doc.span_by_id(p.provision_span_id)), p.statute, p.mode) for p in pairs]


@pytest.mark.parametrize("text, key", [
    ("Section 420", "section 420"),
    ("section 420", "section 420"),
    ("Sec. 420", "section 420"),
    ("S. 420", "section 420"),
    ("Sections 420", "section 420"),
    ("Article 21", "article 21"),
    ("Art. 21", "article 21"),
    ("Section 13(1)(b)", "section 13(1)(b)"),
    ("Order 7 Rule 11", "order 7 rule 11"),
])
def test_provision_key(text, key):
    assert provision_key(text) == key


def test_explicit():
    doc = build_doc([(("Section 420"), "PROVISION"), " of ", ("Indian Penal Code", "STATUTE"), " says so."])
    assert link(doc) == [("Section 420", "Indian Penal Code", LinkMode.EXPLICIT)]


def test_implicit_unique():
    doc = build_doc([("Section 420", "PROVISION"), " of ", ("Indian Penal Code", "STATUTE"),
                     " says so. The ", ("section 420", "PROVISION"), " says more."])
    assert link(doc)[1] == ("section 420", "Indian Penal Code", LinkMode.IMPLICIT_UNIQUE)


def test_no_statute_unresolved():
    doc = build_doc(["The ", ("section 420", "PROVISION"), " says more."])
    assert link(doc) == [("section 420", UNRESOLVED, LinkMode.UNRESOLVED)]


def test_conflicting_explicit_falls_back_to_nearest():
    doc = build_doc([
        ("Section 420", "PROVISION"), " of ", ("IPC", "STATUTE"), " applies. ",
        ("Section 420", "PROVISION"), " of ", ("Companies Act", "STATUTE"), " also applies. ",
        "The ", ("Companies Act", "STATUTE"), " is old. ",
        "Nothing here. ",
        "Under ", ("Section 420", "PROVISION"), " he was charged.",
    ])
    pairs = link(doc)
    assert pairs[0] == ("Section 420", "Indian Penal Code", LinkMode.EXPLICIT)
    assert pairs[1] == ("Section 420", "Companies Act", LinkMode.EXPLICIT)
    assert pairs[2] == ("Section 420", "Companies Act", LinkMode.IMPLICIT_NEAREST)


def test_alias_reports_cluster_head():
    doc = build_doc(["Filed under the ", ("Companies Act, 1956", "STATUTE"), " (for brevity, 'the Act'). ",
                     ("Section 5", "PROVISION"), " of ", ("the Act", "STATUTE"), " defines it. ",
                     "Then ", ("Section 7", "PROVISION"), " applies."])
    assert link(doc) == [("Section 5", "Companies Act, 1956", LinkMode.EXPLICIT),
                         ("Section 7", "Companies Act, 1956", LinkMode.IMPLICIT_NEAREST)]


def test_conjunction_list():
    doc = build_doc(["Sections ", ("420", "PROVISION"), " and ", ("Section 468", "PROVISION"), " of ",
                     ("IPC", "STATUTE"), " apply."])
    assert [m for _, _, m in link(doc)] == [LinkMode.EXPLICIT, LinkMode.EXPLICIT]
    strict = link(doc, strict_explicit=True)
    assert [m for _, _, m in strict] == [LinkMode.UNRESOLVED, LinkMode.EXPLICIT]


def test_statute_before_provision_in_same_sentence_is_not_explicit():
    doc = build_doc(["Under the ", ("IPC", "STATUTE"), ", ", ("section 302", "PROVISION"), " applies."])
    assert link(doc)[0][2] is LinkMode.UNRESOLVED


def test_two_statutes_two_provisions_one_sentence():
    doc = build_doc([("Section 420", "PROVISION"), " of ", ("IPC", "STATUTE"), " and ",
                     ("Section 5", "PROVISION"), " of ", ("Companies Act", "STATUTE"), " apply."])
    assert link(doc) == [("Section 420", "Indian Penal Code", LinkMode.EXPLICIT),
                         ("Section 5", "Companies Act", LinkMode.EXPLICIT)]


def test_invariants_on_generated_judgments():
    for seed in range(300):
        rng = random.Random(seed)
        text, spans = random_judgment(rng)
        doc = prepare_doc(str(seed), text, spans)
        clusters = cluster_statutes(doc)
        pairs = link_provisions(doc, clusters)
        provisions = [s for s in doc.spans if s.label is EntityLabel.PROVISION]
        assert [p.provision_span_id for p in pairs] == [s.id for s in provisions]
        assert link_provisions(doc, clusters) == pairs
        units = doc.units()
        statute_sents = sorted({sentence_index(units, s) for s in doc.spans if s.label is EntityLabel.STATUTE})
        for p in pairs:
            prov = doc.span_by_id(p.provision_span_id)
            pidx = sentence_index(units, prov)
            if p.mode is LinkMode.EXPLICIT:
                ev = doc.span_by_id(p.evidence_span_id)
                assert sentence_index(units, ev) == pidx and ev.start > prov.start
            elif p.mode is LinkMode.IMPLICIT_NEAREST:
                ev = doc.span_by_id(p.evidence_span_id)
                assert sentence_index(units, ev) == nearest_statute_sentence(statute_sents, pidx)
            elif p.mode is LinkMode.UNRESOLVED:
                assert nearest_statute_sentence(statute_sents, pidx) is None
