"""Strict and type-match scoring of predicted entity spans against gold."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Optional, Sequence

from .core import EntityLabel, EntitySpan


class Scheme(str, Enum):
    STRICT = "STRICT"
    TYPE_MATCH = "TYPE_MATCH"

    @classmethod
    def parse(cls, value: "str | Scheme") -> "Scheme":
        if isinstance(value, Scheme):
            return value
        v = value.strip().upper().replace("-", "_")
        if v in ("TYPEMATCH", "TYPE_MATCH", "TYPE"):
            return cls.TYPE_MATCH
        if v == "STRICT":
            return cls.STRICT
        raise ValueError(f"unknown scheme {value!r}")

    def __str__(self) -> str:
        return self.value


def prf(tp: int, fp: int, fn: int) -> tuple[float, float, float]:
    p = tp / (tp + fp) if tp + fp else 0.0
    r = tp / (tp + fn) if tp + fn else 0.0
    f = 2 * p * r / (p + r) if p + r else 0.0
    return p, r, f


@dataclass
class Counts:
    tp: int = 0
    fp: int = 0
    fn: int = 0
    gold_len_total: int = 0

    @property
    def support(self) -> int:
        return self.tp + self.fn

    @property
    def precision(self) -> float:
        return prf(self.tp, self.fp, self.fn)[0]

    @property
    def recall(self) -> float:
        return prf(self.tp, self.fp, self.fn)[1]

    @property
    def f1(self) -> float:
        return prf(self.tp, self.fp, self.fn)[2]

    @property
    def avg_gold_len(self) -> float:
        return self.gold_len_total / self.support if self.support else 0.0

    def __iadd__(self, other: "Counts") -> "Counts":
        self.tp += other.tp
        self.fp += other.fp
        self.fn += other.fn
        self.gold_len_total += other.gold_len_total
        return self

    def as_dict(self) -> dict:
        return {
            "tp": self.tp, "fp": self.fp, "fn": self.fn, "support": self.support,
            "precision": self.precision, "recall": self.recall, "f1": self.f1,
            "avg_gold_len": self.avg_gold_len,
        }


@dataclass
class EvalReport:
    scheme: Scheme
    per_label: dict[EntityLabel, Counts] = field(
        default_factory=lambda: {label: Counts() for label in EntityLabel})

    @property
    def overall(self) -> Counts:
        total = Counts()
        for counts in self.per_label.values():
            total += counts
        return total

    def merge(self, other: "EvalReport") -> "EvalReport":
        if other.scheme != self.scheme:
            raise ValueError("cannot merge reports of different schemes")
        for label, counts in other.per_label.items():
            self.per_label[label] += counts
        return self

    def as_dict(self) -> dict:
        return {
            "scheme": self.scheme.value,
            "per_label": {label.value: c.as_dict() for label, c in self.per_label.items()},
            "overall": self.overall.as_dict(),
        }


def check_flat(spans: Sequence[EntitySpan], what: str = "spans") -> list[EntitySpan]:
    ordered = sorted(spans, key=lambda s: (s.start, s.end))
    for a, b in zip(ordered, ordered[1:]):
        if b.start < a.end:
            raise ValueError(f"{what} overlap: ({a.start}, {a.end}, {a.label}) and "
                             f"({b.start}, {b.end}, {b.label})")
    return ordered


def match_spans(gold: Sequence[EntitySpan], pred: Sequence[EntitySpan],
                scheme: "Scheme | str") -> list[tuple[int, int]]:
    """Greedy one-to-one matching; returns (pred index, gold index) pairs.

    Predictions are taken in document order. Under STRICT a prediction
    matches an unmatched gold span with the same (start, end, label); under
    TYPE_MATCH it takes the earliest unmatched gold span of the same label
    that it overlaps.
    """
    scheme = Scheme.parse(scheme)
    used: set[int] = set()
    pairs = []
    pred_order = sorted(range(len(pred)), key=lambda i: (pred[i].start, pred[i].end))
    if scheme is Scheme.STRICT:
        index = {}
        for gi, g in enumerate(gold):
            index.setdefault(g.key, []).append(gi)
        for pi in pred_order:
            for gi in index.get(pred[pi].key, ()):
                if gi not in used:
                    used.add(gi)
                    pairs.append((pi, gi))
                    break
        return pairs
    gold_order = sorted(range(len(gold)), key=lambda i: (gold[i].start, gold[i].end))
    for pi in pred_order:
        p = pred[pi]
        for gi in gold_order:
            g = gold[gi]
            if g.start >= p.end:
                break
            if gi not in used and g.label == p.label and g.end > p.start:
                used.add(gi)
                pairs.append((pi, gi))
                break
    return pairs


def score(gold: Sequence[EntitySpan], pred: Sequence[EntitySpan],
          scheme: "Scheme | str" = Scheme.STRICT) -> EvalReport:
    """Score one annotation unit (a preamble or a sentence)."""
    scheme = Scheme.parse(scheme)
    gold = check_flat(gold, "gold spans")
    pred = check_flat(pred, "predicted spans")
    report = EvalReport(scheme)
    matched_gold = set()
    matched_pred = set()
    for pi, gi in match_spans(gold, pred, scheme):
        matched_pred.add(pi)
        matched_gold.add(gi)
        report.per_label[gold[gi].label].tp += 1
    for gi, g in enumerate(gold):
        report.per_label[g.label].gold_len_total += len(g)
        if gi not in matched_gold:
            report.per_label[g.label].fn += 1
    for pi, p in enumerate(pred):
        if pi not in matched_pred:
            report.per_label[p.label].fp += 1
    return report


def score_units(gold_units: Mapping[str, Sequence[EntitySpan]],
                pred_units: Mapping[str, Sequence[EntitySpan]],
                scheme: "Scheme | str" = Scheme.STRICT,
                unit_ids: Optional[Iterable[str]] = None) -> EvalReport:
    """Micro-aggregate :func:`score` over units paired by id.

    Units present on one side only count entirely as misses (gold) or
    false alarms (pred).
    """
    scheme = Scheme.parse(scheme)
    ids = list(unit_ids) if unit_ids is not None else sorted(set(gold_units) | set(pred_units))
    report = EvalReport(scheme)
    for uid in ids:
        report.merge(score(gold_units.get(uid, ()), pred_units.get(uid, ()), scheme))
    return report


def per_entity_table(strict: EvalReport, type_match: EvalReport) -> str:
    """Text table with Count, Avg. Len., F1 and Type match F1 per label.

    F1 values are percentages with one decimal; Count and Avg. Len. come
    from the gold side.
    """
    if strict.scheme is not Scheme.STRICT or type_match.scheme is not Scheme.TYPE_MATCH:
        raise ValueError("expected a STRICT report and a TYPE_MATCH report")
    rows = [("Entity", "Count", "Avg. Len.", "F1", "Type match F1")]
    for label in EntityLabel:
        rows.append(_row(label.value, strict.per_label[label], type_match.per_label[label]))
    rows.append(_row("Overall", strict.overall, type_match.overall))
    widths = [max(len(r[i]) for r in rows) for i in range(5)]
    lines = []
    for n, row in enumerate(rows):
        cells = [row[0].ljust(widths[0])] + [c.rjust(w) for c, w in zip(row[1:], widths[1:])]
        lines.append(" | ".join(cells))
        if n == 0:
            lines.append("-+-".join("-" * w for w in widths))
    return "\n".join(lines)


def _row(name: str, strict: Counts, type_match: Counts) -> tuple[str, ...]:
    return (name, str(strict.support), f"{strict.avg_gold_len:.0f}",
            f"{100 * strict.f1:.1f}", f"{100 * type_match.f1:.1f}")


def table_rows(strict: EvalReport, type_match: EvalReport) -> dict[str, dict]:
    """Machine-readable version of :func:`per_entity_table`."""
    out = {}
    for label in EntityLabel:
        s, t = strict.per_label[label], type_match.per_label[label]
        out[label.value] = {"count": s.support, "avg_len": s.avg_gold_len, "f1": s.f1, "type_match_f1": t.f1}
    s, t = strict.overall, type_match.overall
    out["Overall"] = {"count": s.support, "avg_len": s.avg_gold_len, "f1": s.f1, "type_match_f1": t.f1}
    return out
