"""Command-line entry point: ``legalner <command> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

from .config import load_settings
from .core import DocType, EntityLabel, EntitySpan
from .corpus import (CorpusFormatError, compute_stats, export_corpus, import_corpus,
                     reference_deltas, resolve_mapping)
from .evaluation import Scheme, per_entity_table, score_units, table_rows
from .pipeline import postprocess_many, prepare_doc
from .segmentation import segment_judgment
from .selection import CandidateUnit, classify_case_type, exclusion_reason, select_sentences

logger = logging.getLogger("legalner")


def _emit(data: Any, out: Optional[str], lines: bool = False) -> None:
    if lines:
        text = "".join(json.dumps(d, ensure_ascii=False, sort_keys=True) + "\n" for d in data)
    else:
        text = json.dumps(data, ensure_ascii=False, sort_keys=True, indent=2) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _mapping(args) -> Any:
    if getattr(args, "mapping", None):
        with open(args.mapping, encoding="utf-8") as fh:
            return resolve_mapping(json.load(fh))
    return args.format


def _read_records(paths: Sequence[str], args) -> list:
    records = []
    for p in paths:
        records.extend(import_corpus(p, _mapping(args), unit_type=args.unit_type, split=args.split))
    return records


def cmd_segment(args, settings) -> int:
    text = Path(args.input).read_text(encoding="utf-8")
    preamble_end, sentences = segment_judgment(text, markers=settings.preamble_markers,
                                               abbreviations=settings.abbreviations)
    _emit({"preamble_end": preamble_end, "sentences": [list(s) for s in sentences]}, args.out)
    return 0


def cmd_import(args, settings) -> int:
    records = _read_records(args.inputs, args)
    for rec in records:
        for w in rec.warnings:
            logger.warning("%s: %s", rec.doc_id, w)
    if args.out:
        export_corpus(records, args.out)
    else:
        _emit([rec.as_json() for rec in records], None, lines=True)
    return 0


def cmd_stats(args, settings) -> int:
    stats = compute_stats(_read_records(args.inputs, args))
    deltas = reference_deltas(stats)
    _emit({
        "stats": stats.as_dict(),
        "reference_deltas": [
            {"split": d.split, "item": d.item, "expected": d.expected, "actual": d.actual, "delta": d.delta}
            for d in deltas
        ],
        "matches_reference": not deltas,
    }, args.out)
    return 0


def cmd_classify(args, settings) -> int:
    out = []
    for p in args.inputs:
        result = classify_case_type(Path(p).read_text(encoding="utf-8"), settings)
        out.append({"file": p, "case_type": result.case_type, "matched_keywords": result.matched_keywords})
    _emit(out, args.out, lines=True)
    return 0


def _parse_quotas(args) -> dict[EntityLabel, int]:
    quotas = {label: args.quota for label in EntityLabel}
    for item in args.label_quota or ():
        label, _, n = item.partition("=")
        quotas[EntityLabel.parse(label.strip())] = int(n)
    return quotas


def cmd_select(args, settings) -> int:
    units = []
    for rec in _read_records(args.inputs, args):
        units.append(CandidateUnit(rec.doc_id, rec.text, tuple(s.label for s in rec.spans), rec.unit_type))
    chosen = select_sentences(units, _parse_quotas(args), settings,
                              zero_entity_fraction=args.zero_fraction, seed=args.seed)
    excluded = sum(1 for u in units if exclusion_reason(u, settings))
    logger.info("selected %d of %d units (%d excluded by filters)", len(chosen), len(units), excluded)
    _emit([{"id": u.unit_id, "text": u.text, "labels": [l.value for l in u.labels],
            "unit_type": u.unit_type.value} for u in chosen], args.out, lines=True)
    return 0


def _read_full_judgments(path: str, settings):
    docs = []
    with open(path, encoding="utf-8") as fh:
        for n, line in enumerate(fh):
            if not line.strip():
                continue
            raw = json.loads(line)
            text = raw["text"]
            spans = []
            for s in raw.get("spans", []):
                if isinstance(s, dict):
                    start, end, label, sid = s["start"], s["end"], s["label"], s.get("id", "")
                else:
                    (start, end, label), sid = s[:3], ""
                spans.append(EntitySpan(start, end, label, id=sid, source="predicted"))
            for s in spans:
                if not 0 <= s.start < s.end <= len(text):
                    raise CorpusFormatError(f"span ({s.start}, {s.end}) out of bounds", n, path)
            docs.append(prepare_doc(str(raw.get("id", n)), text, spans, settings))
    return docs


def cmd_postprocess(args, settings) -> int:
    docs = _read_full_judgments(args.input, settings)
    results = postprocess_many(docs, settings, workers=args.workers)
    _emit([r.as_json() for r in results], args.out, lines=True)
    return 0


def cmd_evaluate(args, settings) -> int:
    gold = _read_records([args.gold], args)
    pred = _read_records([args.pred], args)
    groups: dict[str, list] = {"combined": [r.doc_id for r in gold]}
    if args.separate:
        for unit in (DocType.PREAMBLE, DocType.JUDGMENT_SENTENCE):
            groups[unit.value] = [r.doc_id for r in gold if r.unit_type is unit]
    gold_units = {r.doc_id: r.spans for r in gold}
    pred_units = {r.doc_id: r.spans for r in pred}
    extra = sorted(set(pred_units) - set(gold_units))
    if extra:
        logger.warning("%d predicted units have no gold counterpart; counted as false positives", len(extra))
        groups["combined"] += extra
    schemes = [Scheme.STRICT, Scheme.TYPE_MATCH] if args.scheme == "both" else [Scheme.parse(args.scheme)]
    out: dict[str, Any] = {}
    tables = []
    for name, ids in groups.items():
        reports = {s: score_units(gold_units, pred_units, s, ids) for s in schemes}
        out[name] = {s.value: r.as_dict() for s, r in reports.items()}
        if len(reports) == 2:
            out[name]["table"] = table_rows(reports[Scheme.STRICT], reports[Scheme.TYPE_MATCH])
            tables.append(f"[{name}]\n" + per_entity_table(reports[Scheme.STRICT], reports[Scheme.TYPE_MATCH]))
    _emit(out, args.out)
    if tables:
        sys.stderr.write("\n\n".join(tables) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="legalner", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("--config", help="JSON settings file (thresholds, keyword and acronym tables)")
        p.add_argument("--out", help="write results here instead of stdout")
        p.set_defaults(func=func)
        return p

    def corpus_opts(p):
        p.add_argument("--format", default="canonical", help="canonical | legal_ner")
        p.add_argument("--mapping", help="JSON field-mapping file (overrides --format)")
        p.add_argument("--unit-type", choices=[d.value for d in DocType])
        p.add_argument("--split", choices=["train", "dev", "test"])

    p = add("segment", cmd_segment, "split a plain-text judgment into preamble and sentences")
    p.add_argument("input")

    p = add("import", cmd_import, "convert annotation files to canonical JSONL")
    p.add_argument("inputs", nargs="+")
    corpus_opts(p)

    p = add("stats", cmd_stats, "corpus counts and deltas against the published figures")
    p.add_argument("inputs", nargs="+")
    corpus_opts(p)

    p = add("classify", cmd_classify, "case type of plain-text judgments")
    p.add_argument("inputs", nargs="+")

    p = add("select", cmd_select, "pick entity-rich units for annotation")
    p.add_argument("inputs", nargs="+")
    corpus_opts(p)
    p.add_argument("--quota", type=int, default=100, help="entity quota for every label")
    p.add_argument("--label-quota", action="append", metavar="LABEL=N")
    p.add_argument("--zero-fraction", type=float)
    p.add_argument("--seed", type=int)

    p = add("postprocess", cmd_postprocess, "document-level post-processing of full judgments")
    p.add_argument("input", help="JSONL with id, text, spans per judgment")
    p.add_argument("--workers", type=int, default=1)

    p = add("evaluate", cmd_evaluate, "score predictions against gold")
    p.add_argument("--gold", required=True)
    p.add_argument("--pred", required=True)
    p.add_argument("--scheme", default="both", choices=["strict", "typematch", "both"])
    p.add_argument("--separate", action="store_true", help="also report preambles and sentences separately")
    corpus_opts(p)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        settings = load_settings(args.config)
        return args.func(args, settings)
    except (CorpusFormatError, ValueError, OSError) as exc:
        logger.error("%s", exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
