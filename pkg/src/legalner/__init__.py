"""Post-processing, evaluation and corpus tooling for Indian legal NER."""

from .core import DocType, EntityLabel, EntitySpan, JudgmentDoc, Violation, validate_doc
from .coref import AcronymTable, PrecedentCluster, StatuteCluster, cluster_precedents, cluster_statutes
from .corpus import AnnotationRecord, CorpusStats, compute_stats, export_corpus, import_corpus
from .evaluation import EvalReport, Scheme, per_entity_table, score, score_units
from .pipeline import postprocess, prepare_doc
from .provisions import LinkMode, ProvisionStatutePair, link_provisions
from .reconciliation import ReconciliationRecord, reconcile
from .segmentation import segment_sentences, split_preamble
from .selection import classify_case_type, select_sentences

__version__ = "0.1.0"
