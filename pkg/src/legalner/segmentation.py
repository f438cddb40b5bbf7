"""Preamble/judgment split and sentence segmentation."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

from .config import ABBREVIATIONS, PREAMBLE_MARKERS

VerbAnalyzer = Callable[[str], bool]

AUXILIARIES = frozenset("""
is are was were be been being am has have had having do does did done
shall will would should may might can could must ought need needs
""".split())

LEGAL_VERBS = frozenset("""
accepted accepts acquit acquitted admit admitted admits affirm affirmed
allege alleged alleges allow allowed allows appealed appeared appears
argue argued argues arrested assail assailed awarded challenged claimed
commit committed conclude concluded confirm confirmed consider considered
considers contend contended contends convict convicted decide decided decides
declare declared deny denied denies deposited directed directs dismiss
dismissed dispose disposed filed found granted grants hear heard hears hold
holds held issued lodged makes made moved observe observed observes ordered
passed plead pleaded pray prayed prays preferred produced provides quashed
recorded refer referred refers reject rejected rely relied relies remand
remanded reverse reversed say says said seek seeks sought sentenced stated
submit submitted submits sustain sustained take takes taken took transferred
urge urged gets got gives gave given goes went comes came sees saw seen shows
showed shown knows knew known dealt deals lies laid meant means sat spoke told
""".split())

# Words that look inflected but are mostly nouns/adjectives in judgment headers.
SUFFIX_STOPLIST = frozenset("""
limited united learned dated advocates companies industries services properties
sciences sales estates judges parties cases courts notes respondents petitioners
appellants accused deceased aforesaid hundred thing things something nothing
morning evening during building proceedings hearing sitting housing
marriages premises offences charges fees taxes duties lines times reserved
pronounced delivered
places states names houses cities villages crores rupees issues articles
""".split())

_AMBIGUOUS_AUX = frozenset({"may", "will", "can", "must"})
_TOKEN = re.compile(r"[A-Za-z][A-Za-z'’]*")


def default_has_verb(sentence: str) -> bool:
    """Closed-list plus suffix verb test; no tagger required.

    Suffix hits (-ed/-ing/-es) count only on lowercase tokens so that
    capitalised header words ("LIMITED", "Advocates") do not fire.
    """
    for tok in _TOKEN.findall(sentence):
        low = tok.lower()
        if low in AUXILIARIES or low in LEGAL_VERBS:
            if low in _AMBIGUOUS_AUX and tok != low:
                continue
            return True
        if tok == low and len(low) >= 5 and low.endswith(("ed", "ing", "es")) and low not in SUFFIX_STOPLIST:
            return True
    return False


@dataclass(frozen=True)
class SentenceAnalysis:
    range: tuple[int, int]
    has_verb: bool


# -- sentences ------------------------------------------------------------

_TERMINATOR = re.compile(r"[.?!]+[\"'’”)\]]*(?=\s|$)")


def _guard_set(abbreviations: Iterable[str]) -> frozenset[str]:
    return frozenset(a.lower() for a in abbreviations)


def segment_sentences(text: str, region: Optional[tuple[int, int]] = None,
                      abbreviations: Sequence[str] = ABBREVIATIONS,
                      protected: Iterable = ()) -> list[tuple[int, int]]:
    """Split ``text[region]`` into sentence ranges.

    Boundaries fall after ``.``, ``?`` or ``!`` (plus closing quotes or
    brackets) followed by whitespace, unless the token ending there is a
    guarded abbreviation such as ``v.`` or ``No.``. Ranges are trimmed of
    surrounding whitespace. No boundary is placed strictly inside a
    ``protected`` span (anything with ``start``/``end``).
    """
    start, end = region if region is not None else (0, len(text))
    if not 0 <= start <= end <= len(text):
        raise ValueError(f"region {region} outside text of length {len(text)}")
    guards = _guard_set(abbreviations)
    inside = [(p.start, p.end) for p in protected]
    out = []
    seg_start = start
    for m in _TERMINATOR.finditer(text, start, end):
        if any(a < m.end() < b for a, b in inside):
            continue
        if m.group(0)[0] == ".":
            tok_start = m.start()
            while tok_start > seg_start and not text[tok_start - 1].isspace():
                tok_start -= 1
            token = text[tok_start:m.start() + 1].lstrip("([\"'‘“").lower()
            if token in guards:
                continue
        _emit(text, seg_start, m.end(), out)
        seg_start = m.end()
    _emit(text, seg_start, end, out)
    return out


def _emit(text: str, start: int, end: int, out: list) -> None:
    while start < end and text[start].isspace():
        start += 1
    while end > start and text[end - 1].isspace():
        end -= 1
    if start < end:
        out.append((start, end))


def _line_units(text: str, abbreviations: Sequence[str]) -> list[tuple[int, int]]:
    """Sentences within each line; header lines rarely carry terminators."""
    units = []
    pos = 0
    for line in text.splitlines(keepends=True):
        units.extend(segment_sentences(text, (pos, pos + len(line)), abbreviations))
        pos += len(line)
    return units


def analyze_sentences(text: str, ranges: Iterable[tuple[int, int]],
                      analyzer: VerbAnalyzer = default_has_verb) -> list[SentenceAnalysis]:
    return [SentenceAnalysis((s, e), bool(analyzer(text[s:e]))) for s, e in ranges]


# -- preamble -------------------------------------------------------------


def _marker_keys(markers: Iterable[str]) -> frozenset[str]:
    return frozenset(re.sub(r"[^a-z]", "", m.lower()) for m in markers)


def find_marker_line(text: str, markers: Sequence[str] = PREAMBLE_MARKERS) -> Optional[int]:
    """Offset just past the first line holding only a marker keyword."""
    keys = _marker_keys(markers)
    pos = 0
    for line in text.splitlines(keepends=True):
        pos += len(line)
        # ignores punctuation and inter-letter spacing ("J U D G M E N T:")
        if re.sub(r"[^a-z]", "", line.lower()) in keys and re.search(r"[A-Za-z]", line):
            return pos
    return None


def split_preamble(text: str, analyzer: VerbAnalyzer = default_has_verb,
                   markers: Sequence[str] = PREAMBLE_MARKERS,
                   abbreviations: Sequence[str] = ABBREVIATIONS) -> int:
    """Return the offset where the judgment region begins.

    A standalone marker line (JUDGMENT, ORDER ...) ends the preamble.
    Failing that, the judgment starts at the first of two consecutive
    verb-bearing sentences. If neither rule fires the result is 0.
    """
    if not text:
        raise ValueError("text must be non-empty")
    marker_end = find_marker_line(text, markers)
    if marker_end is not None:
        return marker_end
    units = analyze_sentences(text, _line_units(text, abbreviations), analyzer)
    for first, second in zip(units, units[1:]):
        if first.has_verb and second.has_verb:
            return first.range[0]
    return 0


def segment_judgment(text: str, analyzer: VerbAnalyzer = default_has_verb,
                     markers: Sequence[str] = PREAMBLE_MARKERS,
                     abbreviations: Sequence[str] = ABBREVIATIONS,
                     protected: Iterable = ()) -> tuple[int, list[tuple[int, int]]]:
    """Preamble end plus the sentence ranges of the judgment region.

    With ``protected`` spans, a split point that would cut one is moved
    to that span's start.
    """
    if not text:
        return 0, []
    protected = list(protected)
    preamble_end = split_preamble(text, analyzer, markers, abbreviations)
    for p in protected:
        if p.start < preamble_end < p.end:
            preamble_end = p.start
    return preamble_end, segment_sentences(text, (preamble_end, len(text)), abbreviations, protected)
