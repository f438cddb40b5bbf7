"""Case-type tagging and entity-rich sentence selection for annotation."""

from __future__ import annotations

import heapq
import random
import re
import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Sequence

from .config import DEFAULT_SETTINGS, Settings
from .core import DocType, EntityLabel

UNCLASSIFIED = "Unclassified"


@dataclass(frozen=True)
class CaseTypeResult:
    case_type: str
    matched_keywords: dict[str, list[str]] = field(default_factory=dict)


@lru_cache(maxsize=256)
def _phrase_pattern(phrase: str) -> re.Pattern:
    words = [re.escape(w) for w in phrase.split()]
    return re.compile(r"(?<!\w)" + r"\s+".join(words) + r"(?!\w)", re.IGNORECASE)


def classify_case_type(text: str, settings: Settings = DEFAULT_SETTINGS) -> CaseTypeResult:
    """Tag a judgment with the first case type whose act keywords it mentions.

    Categories are tried in table order; all matches are returned in
    ``matched_keywords`` so a caller can apply a different tie-break.
    """
    matched: dict[str, list[str]] = {}
    for case_type, keywords in settings.case_type_keywords.items():
        hits = [kw for kw in keywords if _phrase_pattern(kw).search(text)]
        if hits:
            matched[case_type] = hits
    case_type = next(iter(matched), UNCLASSIFIED)
    return CaseTypeResult(case_type, matched)


# -- selection ------------------------------------------------------------


@dataclass(frozen=True)
class CandidateUnit:
    """A sentence or preamble with (noisy) predicted entity labels."""

    unit_id: str
    text: str
    labels: tuple[EntityLabel, ...] = ()
    unit_type: DocType = DocType.JUDGMENT_SENTENCE


_ALLOWED_NON_ASCII = set("‘’“”–—…§°½¼¾•·€£₹")


def is_too_short(text: str, min_tokens: int) -> bool:
    return len(text.split()) < min_tokens


def has_non_english(text: str) -> bool:
    """True when any letter falls outside Basic Latin (e.g. Devanagari)."""
    for ch in text:
        if ord(ch) < 128 or ch in _ALLOWED_NON_ASCII:
            continue
        if unicodedata.category(ch)[0] in "LM":
            return True
    return False


def has_side_by_side_parties(text: str, min_spaces: int) -> bool:
    """A line holding two name-like segments separated by a long run of spaces."""
    gap = re.compile(r"(?<=\S) {%d,}(?=\S)" % min_spaces)
    for line in text.splitlines():
        parts = gap.split(line.strip())
        if len(parts) >= 2 and sum(1 for p in parts if re.search(r"[A-Za-z]{2,}", p)) >= 2:
            return True
    return False


def exclusion_reason(unit: CandidateUnit, settings: Settings = DEFAULT_SETTINGS) -> Optional[str]:
    if is_too_short(unit.text, settings.short_sentence_tokens):
        return "too short"
    if has_non_english(unit.text):
        return "non-English characters"
    if unit.unit_type is DocType.PREAMBLE and has_side_by_side_parties(unit.text, settings.side_by_side_spaces):
        return "side-by-side party names"
    return None


def select_sentences(units: Sequence[CandidateUnit], quotas: Mapping[EntityLabel, int],
                     settings: Settings = DEFAULT_SETTINGS,
                     zero_entity_fraction: Optional[float] = None,
                     seed: Optional[int] = None) -> list[CandidateUnit]:
    """Pick entity-rich units that even out label counts, plus some empty ones.

    Units failing an exclusion filter are dropped and duplicates (same
    whitespace-normalized text) keep their first occurrence. Greedily, the
    unit with the largest summed inverse label frequency over labels whose
    quota (entity count) is still open is taken, until every quota is met
    or no unit helps. Then ``zero_entity_fraction`` times the number
    picked is added from units without predicted entities, sampled with
    ``seed``. The result keeps input order.
    """
    fraction = settings.zero_entity_fraction if zero_entity_fraction is None else zero_entity_fraction
    rng = random.Random(settings.seed if seed is None else seed)

    eligible: list[tuple[int, CandidateUnit]] = []
    seen = set()
    for i, unit in enumerate(units):
        key = " ".join(unit.text.split())
        if key in seen or exclusion_reason(unit, settings) is not None:
            continue
        seen.add(key)
        eligible.append((i, unit))

    freq = Counter(label for _, u in eligible for label in u.labels)
    remaining = {EntityLabel.parse(k): v for k, v in quotas.items() if v > 0}

    def gain(unit: CandidateUnit) -> float:
        return sum(1.0 / freq[label] for label in unit.labels if remaining.get(label, 0) > 0)

    # Gains only shrink as quotas fill, so a lazily re-scored max-heap is exact.
    heap = [(-gain(u), i, u) for i, u in eligible if u.labels]
    heapq.heapify(heap)
    chosen: dict[int, CandidateUnit] = {}
    while heap and any(v > 0 for v in remaining.values()):
        _, i, unit = heapq.heappop(heap)
        current = gain(unit)
        if current <= 0:
            continue
        if heap and (-current, i) > heap[0][:2]:
            heapq.heappush(heap, (-current, i, unit))
            continue
        chosen[i] = unit
        for label in unit.labels:
            if remaining.get(label, 0) > 0:
                remaining[label] -= 1

    empties = [(i, u) for i, u in eligible if not u.labels]
    n_empty = min(len(empties), round(fraction * len(chosen)))
    for i, unit in rng.sample(empties, n_empty):
        chosen[i] = unit
    return [chosen[i] for i in sorted(chosen)]


def label_share(units: Iterable[CandidateUnit], label: EntityLabel) -> float:
    """Fraction of units carrying at least one ``label`` prediction."""
    units = list(units)
    if not units:
        return 0.0
    return sum(1 for u in units if label in u.labels) / len(units)
