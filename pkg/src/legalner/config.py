"""Tunable thresholds, keyword tables and the acronym table.

Every stage takes a :class:`Settings`; the CLI builds one from an optional
JSON file whose keys mirror the field names.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Mapping, Optional

PREAMBLE_MARKERS = ("JUDGMENT", "ORDER", "JUDGEMENT", "J U D G M E N T", "O R D E R")

ABBREVIATIONS = (
    "No.", "Nos.", "v.", "vs.", "Vs.", "Mr.", "Mrs.", "Ms.", "Dr.", "M/s.",
    "Smt.", "Sh.", "Hon'ble", "Sec.", "Art.", "Ors.", "Anr.",
)

ACRONYMS = {
    "IPC": "Indian Penal Code",
    "CrPC": "Code of Criminal Procedure",
    "CPC": "Code of Civil Procedure",
    "NI Act": "Negotiable Instruments Act",
    "MV Act": "Motor Vehicles Act",
}

# Row order is the priority order for documents matching several types.
CASE_TYPE_KEYWORDS = {
    "Tax": ("tax act", "excise act", "customs act", "goods and services act"),
    "Criminal": ("IPC", "penal code", "criminal procedure"),
    "Civil": ("civil procedure", "family courts", "marriage act", "wakf act"),
    "MotorVehicles": ("motor vehicles act", "mv act", "imv act"),
    "LandProperty": ("land acquisition act", "succession act", "rent control act"),
    "IndustrialLabour": ("companies act", "industrial disputes act", "compensation act"),
    "Constitution": ("constitution",),
    "Financial": ("negotiable instruments act", "sarfaesi act", "foreign exchange regulation act"),
}


@dataclass(frozen=True)
class Settings:
    # segmentation
    preamble_markers: tuple[str, ...] = PREAMBLE_MARKERS
    abbreviations: tuple[str, ...] = ABBREVIATIONS
    # precedent coreference
    referent_window: int = 12
    referent_keywords: tuple[str, ...] = ("supra", "'s case", "’s case")
    party_jaccard: float = 0.8
    # statute coreference
    brevity_window: int = 40
    brevity_keywords: tuple[str, ...] = ("for brevity", "for short", "in short", "hereinafter")
    acronyms: Mapping[str, str] = field(default_factory=lambda: dict(ACRONYMS))
    # provision linking
    strict_explicit: bool = False
    # corpus selection
    short_sentence_tokens: int = 5
    side_by_side_spaces: int = 6
    zero_entity_fraction: float = 0.10
    seed: int = 0
    case_type_keywords: Mapping[str, tuple[str, ...]] = field(
        default_factory=lambda: dict(CASE_TYPE_KEYWORDS))

    def updated(self, overrides: Mapping[str, Any]) -> "Settings":
        known = {f.name for f in fields(self)}
        unknown = set(overrides) - known
        if unknown:
            raise ValueError(f"unknown settings: {', '.join(sorted(unknown))}")
        values = {}
        for name, value in overrides.items():
            if name == "acronyms":
                # user entries extend the bundled table
                value = {**self.acronyms, **value}
            elif name == "case_type_keywords":
                value = {k: tuple(v) for k, v in value.items()}
            elif isinstance(value, list):
                value = tuple(value)
            values[name] = value
        return replace(self, **values)


DEFAULT_SETTINGS = Settings()


def load_settings(path: Optional[str | Path] = None) -> Settings:
    if path is None:
        return DEFAULT_SETTINGS
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError(f"{path}: settings file must hold a JSON object")
    return DEFAULT_SETTINGS.updated(data)
