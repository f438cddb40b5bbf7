"""Helpers to assemble judgment documents with known span offsets."""

from __future__ import annotations

from legalner.core import EntityLabel, EntitySpan, JudgmentDoc
from legalner.pipeline import prepare_doc


def build(parts, doc_id="doc"):
    """``parts`` mixes plain strings and ``(text, LABEL)`` tuples.

    Returns (text, spans) with span ids ``T1, T2 ...`` in order.
    """
    text = ""
    spans = []
    for part in parts:
        if isinstance(part, tuple):
            chunk, label = part
            spans.append(EntitySpan(len(text), len(text) + len(chunk), EntityLabel(label),
                                    id=f"T{len(spans) + 1}"))
            text += chunk
        else:
            text += part
    return text, spans


def build_doc(parts, doc_id="doc") -> JudgmentDoc:
    text, spans = build(parts)
    return prepare_doc(doc_id, text, spans)


def by_text(doc: JudgmentDoc, text: str):
    hits = [s for s in doc.spans if doc.span_text(s) == text]
    assert hits, f"no span with text {text!r}"
    return hits
