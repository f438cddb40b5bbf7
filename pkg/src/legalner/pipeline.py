"""Full-judgment post-processing: segment, reconcile, cluster, link."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional

from .config import DEFAULT_SETTINGS, Settings
from .coref import AcronymTable, PrecedentCluster, StatuteCluster, cluster_precedents, cluster_statutes
from .core import EntitySpan, JudgmentDoc, Violation, assign_span_ids, validate_doc
from .provisions import ProvisionStatutePair, link_provisions
from .reconciliation import ReconciliationRecord, reconcile, reconcile_conflicts
from .segmentation import segment_judgment


@dataclass(frozen=True)
class PostprocessResult:
    doc: JudgmentDoc
    reconciliation: tuple[ReconciliationRecord, ...]
    precedent_clusters: tuple[PrecedentCluster, ...]
    statute_clusters: tuple[StatuteCluster, ...]
    provision_statute_pairs: tuple[ProvisionStatutePair, ...]
    violations: tuple[Violation, ...]
    conflicts: tuple[tuple[str, tuple[str, ...]], ...] = ()

    def as_json(self) -> dict:
        doc = self.doc
        return {
            "doc_id": doc.doc_id,
            "preamble_end": doc.preamble_end,
            "sentences": [list(b) for b in doc.sentence_bounds],
            "spans": [
                {"id": s.id, "start": s.start, "end": s.end, "label": s.label.value,
                 "text": doc.span_text(s)}
                for s in doc.spans
            ],
            "reconciliation": [
                {"span_id": r.span_id, "old_label": r.old_label.value,
                 "new_label": r.new_label.value, "matched_span_id": r.matched_span_id}
                for r in self.reconciliation
            ],
            "reconciliation_conflicts": [
                {"span_id": sid, "labels": list(labels)} for sid, labels in self.conflicts
            ],
            "precedent_clusters": [
                {"head_span_id": c.head_span_id, "head": doc.span_text(doc.span_by_id(c.head_span_id)),
                 "member_span_ids": list(c.member_span_ids), "party_keys": list(c.party_keys),
                 "citation_keys": list(c.citation_keys)}
                for c in self.precedent_clusters
            ],
            "statute_clusters": [
                {"head_span_id": c.head_span_id, "head": c.name,
                 "member_span_ids": list(c.member_span_ids), "aliases": sorted(c.aliases)}
                for c in self.statute_clusters
            ],
            "provision_statute_pairs": [
                {"provision_span_id": p.provision_span_id, "statute": p.statute,
                 "mode": p.mode.value, "evidence_span_id": p.evidence_span_id}
                for p in self.provision_statute_pairs
            ],
            "violations": [
                {"rule": v.rule, "target": v.target, "message": v.message, "severity": v.severity}
                for v in self.violations
            ],
        }


def prepare_doc(doc_id: str, text: str, spans: Iterable[EntitySpan],
                settings: Settings = DEFAULT_SETTINGS) -> JudgmentDoc:
    """Segment ``text`` and attach ``spans`` (ids assigned where missing)."""
    spans = assign_span_ids(spans)
    preamble_end, bounds = segment_judgment(text, markers=settings.preamble_markers,
                                            abbreviations=settings.abbreviations, protected=spans)
    return JudgmentDoc(doc_id, text, tuple(bounds), preamble_end, tuple(spans))


def postprocess(doc: JudgmentDoc, settings: Settings = DEFAULT_SETTINGS,
                acronyms: Optional[AcronymTable] = None) -> PostprocessResult:
    violations = validate_doc(doc)
    conflicts = reconcile_conflicts(doc)
    doc, records = reconcile(doc)
    doc, precedents = cluster_precedents(doc, settings)
    statutes = cluster_statutes(doc, acronyms or AcronymTable(settings.acronyms), settings)
    pairs = link_provisions(doc, statutes, settings)
    return PostprocessResult(
        doc, tuple(records), tuple(precedents), tuple(statutes), tuple(pairs), tuple(violations),
        tuple((sid, tuple(l.value for l in labels)) for sid, labels in conflicts),
    )


def postprocess_many(docs: Iterable[JudgmentDoc], settings: Settings = DEFAULT_SETTINGS,
                     workers: int = 1) -> list[PostprocessResult]:
    """Process documents independently; output order follows input order."""
    docs = list(docs)
    acronyms = AcronymTable(settings.acronyms)
    if workers <= 1:
        return [postprocess(d, settings, acronyms) for d in docs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda d: postprocess(d, settings, acronyms), docs))
