"""Within-document coreference for precedents and statutes."""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field, replace
from typing import Mapping, Optional

from .config import DEFAULT_SETTINGS, Settings
from .core import EntityLabel, EntitySpan, JudgmentDoc, normalize_name

logger = logging.getLogger(__name__)

# -- citation / party parsing ---------------------------------------------

PARTY_SEPARATOR = re.compile(r"\s+(?:vs\.?|v\.|versus)\s+", re.IGNORECASE)

CITATION_PATTERNS = (
    # (1980) 2 SCC 565
    re.compile(r"\(\s*(?P<year>\d{4})\s*\)\s*(?P<vol>\d+)\s+(?P<rep>[A-Za-z][A-Za-z.]*(?:\s+[A-Za-z][A-Za-z.]*)*?)\s+(?P<page>\d+)"),
    # 1980 (2) SCC 565
    re.compile(r"(?P<year>\d{4})\s*\(\s*(?P<vol>\d+)\s*\)\s*(?P<rep>[A-Za-z][A-Za-z.]*(?:\s+[A-Za-z][A-Za-z.]*)*?)\s+(?P<page>\d+)"),
    # AIR 1980 SC 1632
    re.compile(r"\bAIR\s+(?P<year>\d{4})\s+(?P<rep>[A-Za-z][A-Za-z.]*(?:\s+[A-Za-z][A-Za-z.]*)*?)\s+(?P<page>\d+)"),
)

PARTY_STOPWORDS = frozenset("""
and others ors anr another the of mr mrs ms m s smt sh shri dr etc
""".split())

_WORD = re.compile(r"[^\W_]+", re.UNICODE)


def citation_keys(text: str) -> list[str]:
    """Normalized reporter citations found in ``text``, in order of appearance."""
    found = []
    taken: list[tuple[int, int]] = []
    for pattern in CITATION_PATTERNS:
        for m in pattern.finditer(text):
            if any(m.start() < e and s < m.end() for s, e in taken):
                continue
            taken.append((m.start(), m.end()))
            rep = re.sub(r"[\s.]", "", m.group("rep")).upper()
            vol = m.groupdict().get("vol") or ""
            if pattern is CITATION_PATTERNS[2]:
                rep = "AIR " + rep
            found.append((m.start(), f"{m.group('year')}|{vol}|{rep}|{m.group('page')}"))
    return [key for _, key in sorted(found)]


def _strip_citations(text: str) -> str:
    for pattern in CITATION_PATTERNS:
        text = pattern.sub(" ", text)
    return text


def party_tokens(party: str) -> list[str]:
    return [t for t in _WORD.findall(party.casefold()) if t not in PARTY_STOPWORDS and not t.isdigit()]


def split_parties(text: str) -> list[str]:
    """Party-name strings of a precedent mention (one or two)."""
    body = _strip_citations(text)
    parts = PARTY_SEPARATOR.split(body, maxsplit=1)
    return [p.strip(" ,;:") for p in parts if p.strip(" ,;:")]


def _jaccard(a: set, b: set) -> float:
    if not a or not b:
        return 0.0
    return len(a & b) / len(a | b)


def _contains_run(haystack: list[str], needle: list[str]) -> bool:
    n = len(needle)
    return n > 0 and any(haystack[i:i + n] == needle for i in range(len(haystack) - n + 1))


# -- precedents -----------------------------------------------------------


@dataclass(frozen=True)
class PrecedentCluster:
    head_span_id: str
    member_span_ids: tuple[str, ...]
    party_keys: tuple[str, ...]
    citation_keys: tuple[str, ...]


@dataclass
class _Precedent:
    span: EntitySpan
    text: str
    parties: list[str]
    citations: set[str]

    @property
    def tokens(self) -> set[str]:
        return {t for p in self.parties for t in party_tokens(p)}

    @property
    def full_form(self) -> bool:
        return bool(self.citations) or len(self.parties) > 1


def _parse_precedent(doc: JudgmentDoc, span: EntitySpan) -> _Precedent:
    text = doc.span_text(span)
    return _Precedent(span, text, split_parties(text), set(citation_keys(text)))


def _followed_by_referent_keyword(doc: JudgmentDoc, span: EntitySpan, settings: Settings) -> bool:
    window = doc.text[span.end:span.end + settings.referent_window].casefold()
    inside = doc.span_text(span).casefold()
    return any(kw.casefold() in window or kw.casefold() in inside for kw in settings.referent_keywords)


def _referent_tokens(text: str, settings: Settings) -> list[str]:
    text = text.casefold()
    for kw in settings.referent_keywords:
        text = text.replace(kw.casefold(), " ")
    return party_tokens(re.sub(r"['’]s\b", " ", text))


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, j: int) -> None:
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[max(ri, rj)] = min(ri, rj)


def precedents_match(a: _Precedent, b: _Precedent, threshold: float) -> bool:
    if a.citations & b.citations:
        return True
    return _jaccard(a.tokens, b.tokens) >= threshold


def cluster_precedents(doc: JudgmentDoc, settings: Settings = DEFAULT_SETTINGS
                       ) -> tuple[JudgmentDoc, list[PrecedentCluster]]:
    """Group PRECEDENT mentions and absorb short referents ("Sibbia's case (supra)").

    Full-form precedents (party separator or reporter citation present)
    are clustered when a citation is shared or their party-token sets
    reach ``settings.party_jaccard``. ORG/OTHER_PERSON spans, and short
    PRECEDENT spans, followed by "supra" or "'s case" are then matched
    against the party names of earlier full-form precedents; the nearest
    preceding match wins and the referent is relabeled PRECEDENT. Each
    cluster's head is its longest member.

    Returns the relabeled document and the clusters in document order.
    """
    parsed = [_parse_precedent(doc, s) for s in doc.spans if s.label == EntityLabel.PRECEDENT]
    seeds = [p for p in parsed if p.full_form or not _followed_by_referent_keyword(doc, p.span, settings)]
    seed_ids = {p.span.id for p in seeds}
    short = [p for p in parsed if p.span.id not in seed_ids]

    uf = _UnionFind(len(seeds))
    for i in range(len(seeds)):
        for j in range(i + 1, len(seeds)):
            if precedents_match(seeds[i], seeds[j], settings.party_jaccard):
                uf.union(i, j)
    groups: dict[int, list[_Precedent]] = {}
    for i, p in enumerate(seeds):
        groups.setdefault(uf.find(i), []).append(p)
    cluster_of = {p.span.id: root for root, members in groups.items() for p in members}

    candidates = [s for s in doc.spans
                  if s.label in (EntityLabel.ORG, EntityLabel.OTHER_PERSON)
                  and _followed_by_referent_keyword(doc, s, settings)]
    candidates += [p.span for p in short]
    candidates.sort(key=lambda s: (s.start, s.end))

    full_seeds = [p for p in seeds if p.full_form]
    relabeled: dict[str, EntitySpan] = {}
    unmatched_short: list[_Precedent] = []
    for cand in candidates:
        tokens = _referent_tokens(doc.span_text(cand), settings)
        antecedent = None
        for p in full_seeds:
            if p.span.start >= cand.start:
                break
            if any(_contains_run(party_tokens(party), tokens) for party in p.parties):
                antecedent = p  # keep scanning: the nearest preceding match wins
        if antecedent is None:
            if cand.label == EntityLabel.PRECEDENT:
                unmatched_short.append(next(p for p in short if p.span.id == cand.id))
            continue
        root = cluster_of[antecedent.span.id]
        groups[root].append(_Precedent(cand, doc.span_text(cand), [], set()))
        if cand.label != EntityLabel.PRECEDENT:
            relabeled[cand.id] = replace(cand, label=EntityLabel.PRECEDENT)

    # Unresolved short forms still need a cluster; identical ones share one.
    by_key: dict[tuple, list[_Precedent]] = {}
    for p in unmatched_short:
        by_key.setdefault(tuple(_referent_tokens(p.text, settings)) or (normalize_name(p.text),), []).append(p)
    extra = list(by_key.values())

    clusters = []
    for members in list(groups.values()) + extra:
        members.sort(key=lambda p: (p.span.start, p.span.end))
        head = max(members, key=lambda p: (len(p.span), -p.span.start))
        party_keys = sorted({" ".join(party_tokens(x)) for p in members for x in p.parties} - {""})
        cites = sorted({c for p in members for c in p.citations})
        clusters.append(PrecedentCluster(head.span.id, tuple(p.span.id for p in members),
                                         tuple(party_keys), tuple(cites)))
    order = {s.id: i for i, s in enumerate(doc.spans)}
    clusters.sort(key=lambda c: order[c.member_span_ids[0]])

    new_doc = doc.with_spans(relabeled.get(s.id, s) for s in doc.spans) if relabeled else doc
    return new_doc, clusters


# -- statutes -------------------------------------------------------------


class AcronymTable:
    """Acronym -> full statute name. Keys match case-sensitively."""

    def __init__(self, mapping: Mapping[str, str]):
        self._map: dict[str, str] = {}
        for key, full in mapping.items():
            norm = " ".join(key.split())
            if norm in self._map:
                raise ValueError(f"duplicate acronym {key!r}")
            self._map[norm] = full

    def expand(self, text: str) -> Optional[str]:
        return self._map.get(" ".join(text.strip(" ,.;:()").split()))

    def __contains__(self, text: str) -> bool:
        return self.expand(text) is not None

    def __len__(self) -> int:
        return len(self._map)

    def items(self):
        return self._map.items()


@dataclass(frozen=True)
class StatuteCluster:
    head_span_id: str
    member_span_ids: tuple[str, ...]
    aliases: frozenset[str]
    name: str  # head text, or its acronym expansion


def statute_key(text: str) -> str:
    key = normalize_name(text)
    if key.startswith("the "):
        key = key[4:]
    return key


_QUOTED = re.compile(r"['‘’\"“”]\s*([^'‘’\"“”]+?)\s*['‘’\"“”]")


def brevity_alias(doc: JudgmentDoc, span: EntitySpan, settings: Settings) -> Optional[str]:
    """Short form declared in a parenthetical after ``span``, e.g. "(for brevity, 'the Act')"."""
    window = doc.text[span.end:span.end + settings.brevity_window]
    open_at = window.find("(")
    if open_at < 0:
        return None
    start = span.end + open_at + 1
    close = doc.text.find(")", start)
    if close < 0:
        return None
    inner = doc.text[start:close]
    low = inner.casefold()
    hits = [(low.find(kw.casefold()), kw) for kw in settings.brevity_keywords if kw.casefold() in low]
    if not hits:
        return None
    pos, kw = min(hits)
    rest = inner[pos + len(kw):]
    quoted = _QUOTED.search(rest) or _QUOTED.search(inner)
    if quoted:
        alias = quoted.group(1)
    else:
        alias = re.sub(r"^[\s,:;-]*(?:(?:referred\s+to|called|described)\s+)?(?:as\s+)?", "", rest,
                       flags=re.IGNORECASE)
    alias = statute_key(alias)
    return alias or None


@dataclass
class _StatuteGroup:
    members: list[EntitySpan] = field(default_factory=list)
    aliases: set[str] = field(default_factory=set)
    protected: set[str] = field(default_factory=set)


def cluster_statutes(doc: JudgmentDoc, acronyms: Optional[AcronymTable] = None,
                     settings: Settings = DEFAULT_SETTINGS) -> list[StatuteCluster]:
    """Cluster STATUTE mentions via declared short forms and known acronyms.

    Each STATUTE span joins the cluster owning its normalized text (or the
    acronym expansion of it); otherwise it starts a new one. A parenthetical
    with a brevity keyword after a span binds the declared short form to
    that span's cluster; rebinding an alias to a later cluster logs a warning.
    """
    if acronyms is None:
        acronyms = AcronymTable(settings.acronyms)
    groups: list[_StatuteGroup] = []
    owner: dict[str, int] = {}

    def bind(alias: str, idx: int, protected: bool = False) -> None:
        prev = owner.get(alias)
        if prev is not None and prev != idx:
            logger.warning("%s: alias %r rebound from statute cluster %d to %d",
                           doc.doc_id, alias, prev, idx)
            if alias not in groups[prev].protected:
                groups[prev].aliases.discard(alias)
        owner[alias] = idx
        groups[idx].aliases.add(alias)
        if protected:
            groups[idx].protected.add(alias)

    for span in doc.spans:
        if span.label != EntityLabel.STATUTE:
            continue
        text = doc.span_text(span)
        key = statute_key(text)
        full = acronyms.expand(text)
        full_key = statute_key(full) if full else None
        idx = owner.get(key)
        if idx is None and full_key is not None:
            idx = owner.get(full_key)
        if idx is None:
            groups.append(_StatuteGroup())
            idx = len(groups) - 1
            bind(key, idx, protected=True)
        groups[idx].members.append(span)
        if key not in owner:
            bind(key, idx)
        if full_key is not None and full_key not in owner:
            bind(full_key, idx)
        alias = brevity_alias(doc, span, settings)
        if alias is not None:
            bind(alias, idx)

    clusters = []
    for g in groups:
        head = max(g.members, key=lambda s: (len(s), -s.start))
        head_text = doc.span_text(head).strip()
        name = acronyms.expand(head_text) or head_text
        clusters.append(StatuteCluster(head.id, tuple(s.id for s in g.members), frozenset(g.aliases), name))
    return clusters
