"""Annotation record I/O and corpus statistics.

The canonical on-disk format is JSON Lines, one record per line::

    {"id": "...", "text": "...", "spans": [[start, end, "LABEL"], ...],
     "meta": {"unit_type": "PREAMBLE", "split": "train", "source_url": "..."}}

Other layouts are read through a field mapping (dotted paths into each
record). ``FORMATS["legal_ner"]`` describes the JSON array files of the
published Indian legal NER corpus (``NER_TRAIN_JUDGEMENT.json`` ...).
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Iterable, Iterator, Mapping, Optional, Sequence

from .core import (DocType, EntityLabel, EntitySpan, JudgmentDoc, errors_only,
                   validate_doc)
from .segmentation import segment_judgment

SPLITS = ("train", "dev", "test")


class CorpusFormatError(ValueError):
    def __init__(self, message: str, index: Optional[int] = None, source: Optional[str] = None):
        where = []
        if source:
            where.append(str(source))
        if index is not None:
            where.append(f"record {index}")
        super().__init__(f"{': '.join(where)}: {message}" if where else message)
        self.index = index
        self.source = source


@dataclass(frozen=True)
class AnnotationRecord:
    doc_id: str
    unit_type: DocType
    text: str
    spans: tuple[EntitySpan, ...]
    split: Optional[str] = None
    source_url: Optional[str] = None
    warnings: tuple[str, ...] = field(default=(), compare=False)

    def to_doc(self) -> JudgmentDoc:
        if self.unit_type is DocType.PREAMBLE:
            return JudgmentDoc(self.doc_id, self.text, (), len(self.text), self.spans)
        if self.unit_type is DocType.JUDGMENT_SENTENCE:
            bounds = ((0, len(self.text)),) if self.text else ()
            return JudgmentDoc(self.doc_id, self.text, bounds, 0, self.spans)
        preamble_end, bounds = segment_judgment(self.text, protected=self.spans)
        return JudgmentDoc(self.doc_id, self.text, bounds, preamble_end, self.spans)

    def as_json(self) -> dict:
        meta: dict[str, Any] = {"unit_type": self.unit_type.value}
        if self.split is not None:
            meta["split"] = self.split
        if self.source_url is not None:
            meta["source_url"] = self.source_url
        return {
            "id": self.doc_id,
            "text": self.text,
            "spans": [[s.start, s.end, s.label.value] for s in self.spans],
            "meta": meta,
        }


# -- field mappings -------------------------------------------------------

CANONICAL = {
    "container": "jsonl",
    "id": "id",
    "text": "text",
    "spans": "spans",
    "span_start": "0",
    "span_end": "1",
    "span_label": "2",
    "span_id": None,
    "unit_type": "meta.unit_type",
    "split": "meta.split",
    "source_url": "meta.source_url",
}

LEGAL_NER = {
    "container": "json",
    "id": "id",
    "text": "data.text",
    "spans": "annotations.0.result",
    "span_start": "value.start",
    "span_end": "value.end",
    "span_label": "value.labels.0",
    "span_id": "id",
    "unit_type": None,
    "split": None,
    "source_url": "meta.source",
}

FORMATS = {"canonical": CANONICAL, "legal_ner": LEGAL_NER}

_MISSING = object()


def get_path(obj: Any, path: Optional[str], default: Any = _MISSING) -> Any:
    """Follow a dotted path (``"annotations.0.result"``) through dicts and lists."""
    if path is None:
        return default
    cur = obj
    for part in path.split(".") if path else []:
        try:
            if isinstance(cur, (list, tuple)):
                cur = cur[int(part)]
            else:
                cur = cur[part]
        except (KeyError, IndexError, ValueError, TypeError):
            return default
    return cur


def resolve_mapping(mapping: "str | Mapping[str, Any] | None") -> dict:
    if mapping is None:
        return dict(CANONICAL)
    if isinstance(mapping, str):
        try:
            return dict(FORMATS[mapping])
        except KeyError:
            raise ValueError(f"unknown format {mapping!r}; known: {', '.join(FORMATS)}") from None
    base = dict(FORMATS.get(mapping.get("preset", "canonical"), CANONICAL))
    base.update({k: v for k, v in mapping.items() if k != "preset"})
    return base


def infer_from_filename(path: "str | Path") -> tuple[Optional[DocType], Optional[str]]:
    name = Path(path).name.lower()
    unit = None
    if "preamble" in name:
        unit = DocType.PREAMBLE
    elif re.search(r"judge?ment|sentence", name):
        unit = DocType.JUDGMENT_SENTENCE
    split = next((s for s in SPLITS if re.search(rf"(?<![a-z]){s}(?![a-z])", name)), None)
    return unit, split


def _raw_records(path: Path, container: str) -> Iterator[Any]:
    text = path.read_text(encoding="utf-8")
    if container == "jsonl":
        for n, line in enumerate(text.splitlines()):
            if line.strip():
                try:
                    yield json.loads(line)
                except json.JSONDecodeError as exc:
                    raise CorpusFormatError(f"invalid JSON: {exc}", n, str(path)) from None
        return
    if not text.strip():
        return
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CorpusFormatError(f"invalid JSON: {exc}", None, str(path)) from None
    if isinstance(data, dict):
        data = [data]
    yield from data


def _build_spans(raw_spans: Sequence[Any], text: str, m: Mapping[str, Any],
                 index: int, source: str) -> tuple[list[EntitySpan], list[str]]:
    spans, warnings = [], []
    for k, raw in enumerate(raw_spans):
        start = get_path(raw, m["span_start"], None)
        end = get_path(raw, m["span_end"], None)
        label = get_path(raw, m["span_label"], None)
        if not isinstance(start, int) or not isinstance(end, int) or label is None:
            raise CorpusFormatError(f"span {k} lacks integer start/end or a label", index, source)
        try:
            label = EntityLabel.parse(label)
        except ValueError as exc:
            raise CorpusFormatError(f"span {k}: {exc}", index, source) from None
        if not 0 <= start < end <= len(text):
            raise CorpusFormatError(f"span {k} ({start}, {end}) out of bounds for text of "
                                    f"length {len(text)}", index, source)
        t_start, t_end = start, end
        while t_start < t_end and text[t_start].isspace():
            t_start += 1
        while t_end > t_start and text[t_end - 1].isspace():
            t_end -= 1
        if t_start == t_end:
            raise CorpusFormatError(f"span {k} ({start}, {end}) covers only whitespace", index, source)
        if (t_start, t_end) != (start, end):
            warnings.append(f"span {k} trimmed from ({start}, {end}) to ({t_start}, {t_end})")
        span_id = get_path(raw, m.get("span_id"), None)
        spans.append(EntitySpan(t_start, t_end, label, id=str(span_id) if span_id else "",
                                text=text[t_start:t_end]))
    spans.sort(key=lambda s: (s.start, s.end))
    ids = set()
    for n, s in enumerate(spans, 1):
        if not s.id or s.id in ids:
            spans[n - 1] = replace(s, id=f"T{n}")
        ids.add(spans[n - 1].id)
    return spans, warnings


def import_corpus(path: "str | Path", mapping: "str | Mapping[str, Any] | None" = None,
                  unit_type: "DocType | str | None" = None,
                  split: Optional[str] = None) -> list[AnnotationRecord]:
    """Read annotation records from ``path``.

    ``unit_type`` and ``split`` fill in values the records themselves do
    not carry; failing both, they are inferred from the file name. Every
    returned record passes :func:`validate_doc` without errors; trimming
    and validity-domain notes are kept on ``record.warnings``.
    """
    path = Path(path)
    source = str(path)
    m = resolve_mapping(mapping)
    file_unit, file_split = infer_from_filename(path)
    default_unit = DocType(str(unit_type)) if unit_type is not None else file_unit
    default_split = split or file_split
    records = []
    seen_ids = set()
    for index, raw in enumerate(_raw_records(path, m.get("container", "jsonl"))):
        if not isinstance(raw, Mapping):
            raise CorpusFormatError("record is not an object", index, source)
        text = get_path(raw, m["text"], None)
        if not isinstance(text, str):
            raise CorpusFormatError(f"missing text field {m['text']!r}", index, source)
        doc_id = get_path(raw, m["id"], None)
        doc_id = str(doc_id) if doc_id is not None else f"{path.stem}:{index}"
        if doc_id in seen_ids:
            raise CorpusFormatError(f"duplicate record id {doc_id!r}", index, source)
        seen_ids.add(doc_id)
        raw_spans = get_path(raw, m["spans"], [])
        if raw_spans is None:
            raw_spans = []
        if not isinstance(raw_spans, list):
            raise CorpusFormatError(f"span field {m['spans']!r} is not a list", index, source)
        spans, warnings = _build_spans(raw_spans, text, m, index, source)

        unit = get_path(raw, m.get("unit_type"), None) or default_unit
        if unit is None:
            raise CorpusFormatError("unit type not given and not inferable from file name", index, source)
        try:
            unit = DocType(str(unit).upper())
        except ValueError:
            raise CorpusFormatError(f"unknown unit type {unit!r}", index, source) from None
        rec_split = get_path(raw, m.get("split"), None) or default_split
        if rec_split is not None and rec_split not in SPLITS:
            raise CorpusFormatError(f"unknown split {rec_split!r}", index, source)
        url = get_path(raw, m.get("source_url"), None)
        record = AnnotationRecord(doc_id, unit, text, tuple(spans), rec_split,
                                  url if isinstance(url, str) else None)

        violations = validate_doc(record.to_doc())
        errors = errors_only(violations)
        if errors:
            raise CorpusFormatError("; ".join(str(v) for v in errors), index, source)
        warnings += [str(v) for v in violations]
        records.append(replace(record, warnings=tuple(warnings)))
    return records


def export_corpus(records: Iterable[AnnotationRecord], path: "str | Path") -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec.as_json(), ensure_ascii=False, sort_keys=True) + "\n")


# -- statistics -----------------------------------------------------------

# Counts published for the corpus: (preambles, judgment sentences, entities)
REFERENCE_TOTALS = {
    "train": (1560, 9435, 29964),
    "dev": (125, 949, 3216),
    "test": (441, 4060, 13365),
}

# Train split entity counts by (label, region); labels absent from a region are omitted.
REFERENCE_TRAIN_LABELS = {
    "judgment": {
        "COURT": 1293, "PETITIONER": 464, "RESPONDENT": 324, "JUDGE": 567,
        "DATE": 1885, "ORG": 1441, "GPE": 1398, "STATUTE": 1804, "PROVISION": 2384,
        "PRECEDENT": 1351, "CASE_NUMBER": 1040, "WITNESS": 881, "OTHER_PERSON": 2653,
    },
    "preamble": {
        "COURT": 1074, "PETITIONER": 2604, "RESPONDENT": 3538, "JUDGE": 1758, "LAWYER": 3505,
    },
}


@dataclass
class SplitStats:
    preamble_count: int = 0
    sentence_count: int = 0
    full_judgment_count: int = 0
    label_region: Counter = field(default_factory=Counter)

    @property
    def entity_count(self) -> int:
        return sum(self.label_region.values())

    def region_total(self, region: str) -> int:
        return sum(n for (_, r), n in self.label_region.items() if r == region)

    def as_dict(self) -> dict:
        by_region: dict[str, dict[str, int]] = {"preamble": {}, "judgment": {}}
        for (label, region), n in sorted(self.label_region.items()):
            by_region[region][label] = n
        return {
            "preamble_count": self.preamble_count,
            "sentence_count": self.sentence_count,
            "full_judgment_count": self.full_judgment_count,
            "entity_count": self.entity_count,
            "entities_by_region": by_region,
        }


@dataclass
class CorpusStats:
    splits: dict[str, SplitStats] = field(default_factory=dict)

    def split(self, name: str) -> SplitStats:
        return self.splits.get(name, SplitStats())

    def as_dict(self) -> dict:
        return {name: s.as_dict() for name, s in sorted(self.splits.items())}


def compute_stats(records: Iterable[AnnotationRecord]) -> CorpusStats:
    """Count units and entities per split, label and region.

    Records without a split are counted under ``"unsplit"``.
    """
    stats = CorpusStats()
    for rec in records:
        s = stats.splits.setdefault(rec.split or "unsplit", SplitStats())
        if rec.unit_type is DocType.PREAMBLE:
            s.preamble_count += 1
        elif rec.unit_type is DocType.JUDGMENT_SENTENCE:
            s.sentence_count += 1
        else:
            s.full_judgment_count += 1
        if rec.unit_type is DocType.FULL_JUDGMENT:
            pe = rec.to_doc().preamble_end
            for span in rec.spans:
                s.label_region[(span.label.value, "preamble" if span.end <= pe else "judgment")] += 1
        else:
            region = "preamble" if rec.unit_type is DocType.PREAMBLE else "judgment"
            for span in rec.spans:
                s.label_region[(span.label.value, region)] += 1
    return stats


@dataclass(frozen=True)
class StatDelta:
    split: str
    item: str
    expected: int
    actual: int

    @property
    def delta(self) -> int:
        return self.actual - self.expected

    def __str__(self) -> str:
        return f"{self.split} {self.item}: expected {self.expected}, got {self.actual} ({self.delta:+d})"


def reference_deltas(stats: CorpusStats, splits: Optional[Iterable[str]] = None) -> list[StatDelta]:
    """Differences from the published corpus counts, itemized.

    Only splits present in ``stats`` are compared unless ``splits`` is given.
    An empty list means an exact match.
    """
    names = list(splits) if splits is not None else [s for s in SPLITS if s in stats.splits]
    out = []
    for name in names:
        s = stats.split(name)
        pre, sent, ents = REFERENCE_TOTALS[name]
        for item, expected, actual in (("preambles", pre, s.preamble_count),
                                       ("judgment sentences", sent, s.sentence_count),
                                       ("entities", ents, s.entity_count)):
            if expected != actual:
                out.append(StatDelta(name, item, expected, actual))
        if name != "train":
            continue
        for region, table in REFERENCE_TRAIN_LABELS.items():
            for label in EntityLabel:
                expected = table.get(label.value, 0)
                actual = s.label_region.get((label.value, region), 0)
                if expected != actual:
                    out.append(StatDelta(name, f"{label.value} ({region})", expected, actual))
    return out
