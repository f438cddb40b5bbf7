"""Document-level relabeling of OTHER_PERSON/ORG mentions that name a party."""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, replace

from .core import ROLE_LABELS, EntityLabel, JudgmentDoc, normalize_name

logger = logging.getLogger(__name__)

ELIGIBLE_LABELS = (EntityLabel.OTHER_PERSON, EntityLabel.ORG)


@dataclass(frozen=True)
class ReconciliationRecord:
    span_id: str
    old_label: EntityLabel
    new_label: EntityLabel
    matched_span_id: str


def _role_index(doc: JudgmentDoc) -> dict[str, dict[EntityLabel, str]]:
    """normalized text -> {role label: id of first span with that label}"""
    index: dict[str, dict[EntityLabel, str]] = defaultdict(dict)
    for span in doc.spans:
        if span.label in ROLE_LABELS:
            key = normalize_name(doc.span_text(span))
            if key:
                index[key].setdefault(span.label, span.id)
    return index


def reconcile(doc: JudgmentDoc) -> tuple[JudgmentDoc, list[ReconciliationRecord]]:
    """Relabel OTHER_PERSON/ORG spans whose text exactly names a role entity.

    Matching is on normalized text (case-folded, whitespace collapsed,
    surrounding punctuation stripped). A span whose text matches role
    entities of more than one label is left alone and logged as a conflict.
    """
    index = _role_index(doc)
    records = []
    spans = []
    for span in doc.spans:
        if span.label not in ELIGIBLE_LABELS:
            spans.append(span)
            continue
        matches = index.get(normalize_name(doc.span_text(span)))
        if not matches:
            spans.append(span)
            continue
        if len(matches) > 1:
            logger.warning("%s: span %s %r matches several roles (%s); not relabeled",
                           doc.doc_id, span.id, doc.span_text(span),
                           ", ".join(sorted(m.value for m in matches)))
            spans.append(span)
            continue
        (new_label, matched_id), = matches.items()
        records.append(ReconciliationRecord(span.id, span.label, new_label, matched_id))
        spans.append(replace(span, label=new_label))
    return doc.with_spans(spans), records


def reconcile_conflicts(doc: JudgmentDoc) -> list[tuple[str, tuple[EntityLabel, ...]]]:
    """Eligible spans left untouched because their text names several roles."""
    index = _role_index(doc)
    out = []
    for span in doc.spans:
        if span.label in ELIGIBLE_LABELS:
            matches = index.get(normalize_name(doc.span_text(span)), {})
            if len(matches) > 1:
                out.append((span.id, tuple(sorted(matches, key=lambda m: m.value))))
    return out
