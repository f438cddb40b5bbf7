"""Shared data types for judgment documents and their entity annotations."""

from __future__ import annotations

import string
import unicodedata
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Optional


class EntityLabel(str, Enum):
    COURT = "COURT"
    PETITIONER = "PETITIONER"
    RESPONDENT = "RESPONDENT"
    JUDGE = "JUDGE"
    LAWYER = "LAWYER"
    DATE = "DATE"
    ORG = "ORG"
    GPE = "GPE"
    STATUTE = "STATUTE"
    PROVISION = "PROVISION"
    PRECEDENT = "PRECEDENT"
    CASE_NUMBER = "CASE_NUMBER"
    WITNESS = "WITNESS"
    OTHER_PERSON = "OTHER_PERSON"

    @classmethod
    def parse(cls, value: "str | EntityLabel") -> "EntityLabel":
        if isinstance(value, EntityLabel):
            return value
        try:
            return cls(value)
        except ValueError:
            raise ValueError(f"unknown entity label {value!r}") from None

    @property
    def regions(self) -> frozenset[str]:
        """Regions ("preamble", "judgment") where this label is expected."""
        return _LABEL_REGIONS[self]

    def __str__(self) -> str:
        return self.value


_BOTH = frozenset({"preamble", "judgment"})
_LABEL_REGIONS = {
    EntityLabel.COURT: _BOTH,
    EntityLabel.PETITIONER: _BOTH,
    EntityLabel.RESPONDENT: _BOTH,
    EntityLabel.JUDGE: _BOTH,
    EntityLabel.LAWYER: frozenset({"preamble"}),
}
for _label in EntityLabel:
    _LABEL_REGIONS.setdefault(_label, frozenset({"judgment"}))

ROLE_LABELS = (
    EntityLabel.PETITIONER,
    EntityLabel.RESPONDENT,
    EntityLabel.JUDGE,
    EntityLabel.LAWYER,
    EntityLabel.WITNESS,
)


class DocType(str, Enum):
    PREAMBLE = "PREAMBLE"
    JUDGMENT_SENTENCE = "JUDGMENT_SENTENCE"
    FULL_JUDGMENT = "FULL_JUDGMENT"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class EntitySpan:
    start: int
    end: int
    label: EntityLabel
    id: str = ""
    source: str = "gold"
    text: str = ""

    def __post_init__(self):
        object.__setattr__(self, "label", EntityLabel.parse(self.label))
        if self.source not in ("gold", "predicted"):
            raise ValueError(f"span source must be 'gold' or 'predicted', got {self.source!r}")

    @property
    def key(self) -> tuple[int, int, EntityLabel]:
        return (self.start, self.end, self.label)

    def __len__(self) -> int:
        return self.end - self.start

    def overlaps(self, other: "EntitySpan") -> bool:
        return self.start < other.end and other.start < self.end


@dataclass(frozen=True)
class DocMeta:
    court: Optional[str] = None
    decision_date: Optional[str] = None
    case_type: Optional[str] = None


@dataclass(frozen=True)
class JudgmentDoc:
    """A judgment with its segmentation and entity spans.

    ``sentence_bounds`` covers the judgment region only; the preamble
    ``[0, preamble_end)`` is treated as a single unit. A document with no
    sentence bounds is unsegmented and its judgment region counts as one
    sentence.
    """

    doc_id: str
    text: str
    sentence_bounds: tuple[tuple[int, int], ...] = ()
    preamble_end: int = 0
    spans: tuple[EntitySpan, ...] = ()
    meta: DocMeta = field(default_factory=DocMeta)

    def __post_init__(self):
        object.__setattr__(self, "sentence_bounds", tuple(tuple(b) for b in self.sentence_bounds))
        object.__setattr__(self, "spans", tuple(sorted(self.spans, key=lambda s: (s.start, s.end))))

    def span_text(self, span: EntitySpan) -> str:
        return self.text[span.start:span.end]

    def span_by_id(self, span_id: str) -> EntitySpan:
        for span in self.spans:
            if span.id == span_id:
                return span
        raise KeyError(span_id)

    def units(self) -> list[tuple[int, int]]:
        """Annotation units in order: the preamble (if any), then sentences."""
        out = []
        if self.preamble_end > 0:
            out.append((0, self.preamble_end))
        if self.sentence_bounds:
            out.extend(self.sentence_bounds)
        elif self.preamble_end < len(self.text):
            out.append((self.preamble_end, len(self.text)))
        return out

    def with_spans(self, spans: Iterable[EntitySpan]) -> "JudgmentDoc":
        return replace(self, spans=tuple(spans))


def assign_span_ids(spans: Iterable[EntitySpan], prefix: str = "T") -> list[EntitySpan]:
    """Give every span without an id a positional one (``T1``, ``T2``...)."""
    ordered = sorted(spans, key=lambda s: (s.start, s.end))
    return [s if s.id else replace(s, id=f"{prefix}{i}") for i, s in enumerate(ordered, 1)]


_PUNCT = set(string.punctuation) | {"‘", "’", "“", "”", "–", "—"}


def _is_punct(ch: str) -> bool:
    return ch in _PUNCT or unicodedata.category(ch).startswith("P")


def normalize_name(text: str) -> str:
    """Case-fold, collapse whitespace and strip surrounding punctuation."""
    text = " ".join(text.casefold().split())
    start, end = 0, len(text)
    while start < end and (_is_punct(text[start]) or text[start].isspace()):
        start += 1
    while end > start and (_is_punct(text[end - 1]) or text[end - 1].isspace()):
        end -= 1
    return text[start:end]


# -- validation -----------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    rule: str
    target: str
    message: str
    severity: str = "error"

    def __str__(self) -> str:
        return f"{self.severity}: {self.rule} [{self.target}] {self.message}"


def _span_ref(span: EntitySpan) -> str:
    return span.id or f"{span.start}-{span.end}:{span.label}"


def _check_sentences(doc: JudgmentDoc) -> list[Violation]:
    out = []
    n = len(doc.text)
    prev_end = None
    for i, (start, end) in enumerate(doc.sentence_bounds):
        ref = f"sentence {i}"
        if start >= end:
            out.append(Violation("start ≥ end", ref, f"empty or inverted range ({start}, {end})"))
        if start < 0 or end > n:
            out.append(Violation("out of bounds", ref, f"range ({start}, {end}) outside text of length {n}"))
        if prev_end is not None and start < prev_end:
            out.append(Violation("overlapping sentences", ref, f"starts at {start} before previous end {prev_end}"))
        if start < doc.preamble_end:
            out.append(Violation("sentence in preamble", ref, f"starts at {start} before preamble end {doc.preamble_end}"))
        prev_end = end
    return out


def _check_preamble(doc: JudgmentDoc) -> list[Violation]:
    pe = doc.preamble_end
    if pe < 0 or pe > len(doc.text):
        return [Violation("out of bounds", "preamble", f"preamble_end {pe} outside text")]
    if pe == 0 or not doc.sentence_bounds:
        return []
    first = doc.sentence_bounds[0][0]
    if first >= pe and doc.text[pe:first].strip():
        return [Violation("preamble boundary", "preamble",
                          f"non-whitespace text between preamble_end {pe} and first sentence {first}")]
    return []


def _check_spans(doc: JudgmentDoc) -> list[Violation]:
    out = []
    n = len(doc.text)
    seen: dict[tuple, EntitySpan] = {}
    units = doc.units()
    valid = []
    for span in doc.spans:
        ref = _span_ref(span)
        if span.start >= span.end:
            out.append(Violation("start ≥ end", ref, f"start {span.start} ≥ end {span.end}"))
            continue
        if span.start < 0 or span.end > n:
            out.append(Violation("out of bounds", ref, f"({span.start}, {span.end}) outside text of length {n}"))
            continue
        if span.key in seen:
            out.append(Violation("duplicate span", ref, f"same (start, end, label) as {_span_ref(seen[span.key])}"))
            continue
        seen[span.key] = span
        valid.append(span)

        if not any(s <= span.start and span.end <= e for s, e in units):
            out.append(Violation("crosses unit boundary", ref,
                                 "span is not inside a single sentence or the preamble"))
        region = "preamble" if span.end <= doc.preamble_end else "judgment"
        if region not in span.label.regions:
            out.append(Violation("label outside validity domain", ref,
                                 f"{span.label} found in {region}", severity="warning"))

    # Spans are sorted by (start, end); compare each against the furthest-reaching earlier span.
    reach: Optional[EntitySpan] = None
    for span in valid:
        if reach is not None and span.start < reach.end:
            nested = (reach.start <= span.start and span.end <= reach.end) or (
                span.start <= reach.start and reach.end <= span.end)
            rule = "nested span" if nested else "overlapping span"
            out.append(Violation(rule, _span_ref(span), f"overlaps {_span_ref(reach)}"))
        if reach is None or span.end > reach.end:
            reach = span
    return out


def validate_doc(doc: JudgmentDoc) -> list[Violation]:
    """Check every structural invariant of ``doc``.

    Returns an empty list for a well-formed document. Validity-domain
    breaches (e.g. a LAWYER in the judgment body) are reported with
    ``severity="warning"``; everything else is an error.
    """
    return _check_sentences(doc) + _check_preamble(doc) + _check_spans(doc)


def errors_only(violations: Iterable[Violation]) -> list[Violation]:
    return [v for v in violations if v.severity == "error"]
