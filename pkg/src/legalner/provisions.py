"""Assign a governing statute to every PROVISION mention."""

from __future__ import annotations

import bisect
import re
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

from .config import DEFAULT_SETTINGS, Settings
from .core import EntityLabel, EntitySpan, JudgmentDoc
from .coref import StatuteCluster

UNRESOLVED = "UNRESOLVED"


class LinkMode(str, Enum):
    EXPLICIT = "EXPLICIT"
    IMPLICIT_UNIQUE = "IMPLICIT_UNIQUE"
    IMPLICIT_NEAREST = "IMPLICIT_NEAREST"
    UNRESOLVED = "UNRESOLVED"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class ProvisionStatutePair:
    provision_span_id: str
    statute: str
    mode: LinkMode
    evidence_span_id: Optional[str] = None


_CANON = [
    (re.compile(r"\b(?:sections?|secs?\.?|ss?\.|u/s\.?)(?=\s|\d|$)"), "section"),
    (re.compile(r"\b(?:articles?|arts?\.)(?=\s|\d|$)"), "article"),
]


def provision_key(text: str) -> str:
    """Canonical form used to decide that two provision mentions are the same.

    >>> provision_key("Sec. 420 of the")
    'section 420'
    """
    key = text.lower()
    for pattern, repl in _CANON:
        key = pattern.sub(repl + " ", key)
    key = re.sub(r"[,;:]", " ", key)
    tokens = [t for t in key.split() if t not in ("of", "the")]
    return " ".join(tokens).strip(" .")


def sentence_index(units: Sequence[tuple[int, int]], span: EntitySpan) -> int:
    """Index of the unit containing ``span`` (by start offset)."""
    starts = [s for s, _ in units]
    return max(bisect.bisect_right(starts, span.start) - 1, 0)


def link_provisions(doc: JudgmentDoc, statute_clusters: Sequence[StatuteCluster],
                    settings: Settings = DEFAULT_SETTINGS) -> list[ProvisionStatutePair]:
    """Map each PROVISION span to the head of a statute cluster.

    In order of preference: a STATUTE later in the same sentence
    (EXPLICIT); the single statute that explicit mentions of the same
    provision resolve to (IMPLICIT_UNIQUE); the last statute of the closest
    preceding sentence that has one (IMPLICIT_NEAREST); else UNRESOLVED.
    Pairs come back in document order.
    """
    units = doc.units() or [(0, len(doc.text))]
    name_of: dict[str, str] = {}
    for cluster in statute_clusters:
        for sid in cluster.member_span_ids:
            name_of[sid] = cluster.name

    def statute_name(span: EntitySpan) -> str:
        return name_of.get(span.id) or doc.span_text(span).strip()

    by_sentence: dict[int, list[EntitySpan]] = defaultdict(list)
    for span in doc.spans:
        if span.label in (EntityLabel.PROVISION, EntityLabel.STATUTE):
            by_sentence[sentence_index(units, span)].append(span)

    explicit: dict[str, EntitySpan] = {}
    for spans in by_sentence.values():
        pending: list[EntitySpan] = []
        for span in spans:
            if span.label == EntityLabel.PROVISION:
                pending.append(span)
            elif pending:
                bound = pending[-1:] if settings.strict_explicit else pending
                for prov in bound:
                    explicit[prov.id] = span
                pending = []

    # provision key -> statute names / first evidence span, from explicit links
    explicit_names: dict[str, set[str]] = defaultdict(set)
    explicit_evidence: dict[str, EntitySpan] = {}
    for span in doc.spans:
        if span.id in explicit:
            key = provision_key(doc.span_text(span))
            explicit_names[key].add(statute_name(explicit[span.id]))
            explicit_evidence.setdefault(key, explicit[span.id])

    statute_sentences = sorted(i for i, spans in by_sentence.items()
                               if any(s.label == EntityLabel.STATUTE for s in spans))

    pairs = []
    for span in doc.spans:
        if span.label != EntityLabel.PROVISION:
            continue
        if span.id in explicit:
            ev = explicit[span.id]
            pairs.append(ProvisionStatutePair(span.id, statute_name(ev), LinkMode.EXPLICIT, ev.id))
            continue
        key = provision_key(doc.span_text(span))
        if len(explicit_names.get(key, ())) == 1:
            ev = explicit_evidence[key]
            pairs.append(ProvisionStatutePair(span.id, statute_name(ev), LinkMode.IMPLICIT_UNIQUE, ev.id))
            continue
        idx = sentence_index(units, span)
        pos = bisect.bisect_left(statute_sentences, idx) - 1
        if pos >= 0:
            prev = [s for s in by_sentence[statute_sentences[pos]] if s.label == EntityLabel.STATUTE]
            ev = prev[-1]
            pairs.append(ProvisionStatutePair(span.id, statute_name(ev), LinkMode.IMPLICIT_NEAREST, ev.id))
        else:
            pairs.append(ProvisionStatutePair(span.id, UNRESOLVED, LinkMode.UNRESOLVED))
    return pairs
