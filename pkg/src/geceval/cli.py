"""Command-line entry point.

Subcommands: score, agree, tree, correct, train-lm, serve, export.
All randomness flows from --seed; --jobs controls parallelism without
changing any result (metrics pool per-sentence statistics.)
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from geceval import corpus as corpus_io
from geceval.annotation.service import (
    DIMENSIONS,
    AnnotationService,
    build_pool,
    load_export,
)
from geceval.correction_tree import (
    VersionSet,
    build_tree,
    mds_embed,
    pairwise_nld_matrix,
)
from geceval.annotation.events import EventLog
from geceval.agreement import RatingMatrix, qwk
from geceval.baseline import BaselineConfig, Lexicon, correct_sentence
from geceval.distance import nld
from geceval.edit_fscore import FBetaConfig, fbeta_corpus
from geceval.edits import extract_edits
from geceval.errors import GecEvalError, InputError, UndefinedStatisticError
from geceval.gleu import GleuConfig, gleu_corpus, score_from_stats, sentence_stats
from geceval.lm_client import ExternalScorer
from geceval.ngram_lm import NgramModel, train_char_ngram
from geceval.reports import (
    MetricReport,
    ALL_LEVEL,
    postedit_report,
    render_distribution_json,
    render_distribution_text,
    render_report_json,
    render_report_text,
    score_distribution,
)
from geceval.scribendi import ScribendiConfig, scribendi_sentence
from geceval.textnorm import normalize, tokenize

METRICS = ("gleu", "scribendi", "fbeta", "nld", "postedit", "distribution")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="geceval",
        description="Evaluation and annotation toolkit for grammatical error correction.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("score", help="compute evaluation metrics")
    p.add_argument("--metric", required=True, choices=METRICS)
    p.add_argument("--src", help="source sentences, one per line")
    p.add_argument("--hyp", help="hypothesis sentences, one per line")
    p.add_argument("--ref", action="append", default=[],
                   help="reference sentences, one per line (repeatable)")
    p.add_argument("--corpus", help="JSONL corpus with ids, CEFR levels and references")
    p.add_argument("--outputs", help="JSONL system outputs {sentence_id, system, output}")
    p.add_argument("--annotations", help="annotation export file (for postedit/distribution)")
    p.add_argument("--dimension", default="meaning", choices=DIMENSIONS,
                   help="Likert dimension for --metric distribution")
    p.add_argument("--lm", help="n-gram model file (scribendi)")
    p.add_argument("--endpoint", help="external scorer endpoint (scribendi)")
    p.add_argument("--beta", type=float, default=0.5, help="F_beta bias (fbeta)")
    p.add_argument("--threshold", type=float, default=0.8,
                   help="similarity gate threshold (scribendi)")
    p.add_argument("--max-n", type=int, default=4, help="maximum n-gram order (gleu)")
    p.add_argument("--penalty-weight", type=float, default=1.0,
                   help="source n-gram penalty weight (gleu)")
    p.add_argument("--samples", type=int, default=500,
                   help="reference draws with multiple references (gleu)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("agree", help="inter-annotator agreement (QWK)")
    p.add_argument("--annotations", required=True, help="annotation export file")
    p.add_argument("--a", required=True, dest="annotator_a")
    p.add_argument("--b", required=True, dest="annotator_b")
    p.add_argument("--dimension", choices=DIMENSIONS)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_agree)

    p = sub.add_parser("tree", help="pairwise distances, 2-D embedding, provenance tree")
    p.add_argument("--versions", required=True,
                   help='JSONL: {"id": ..., "versions": {label: text}}')
    p.add_argument("--provenance", required=True,
                   help='JSON: {"parents": {child: parent}, "kinds": {label: kind}}')
    p.add_argument("--out", required=True, help="output prefix (.json/.dot/.svg)")
    p.add_argument("--iterations", type=int, default=300)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("correct", help="run the LM-guided correction baseline")
    p.add_argument("--model", required=True)
    p.add_argument("--lexicon", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--trace", help="write accepted edits as JSONL")
    p.add_argument("--delta", type=float, default=1.0,
                   help="required log-prob improvement per accepted edit")
    p.add_argument("--max-iterations", type=int, default=10)
    p.add_argument("--max-candidates", type=int, default=20)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_correct)

    p = sub.add_parser("train-lm", help="train the character n-gram model")
    p.add_argument("--corpus", required=True, help="training text, one sentence per line")
    p.add_argument("--order", type=int, default=5)
    p.add_argument("--k", type=float, default=0.1, help="add-k smoothing constant")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_train_lm)

    p = sub.add_parser("serve", help="start the annotation service")
    p.add_argument("--corpus", required=True)
    p.add_argument("--outputs", required=True)
    p.add_argument("--log", required=True, help="append-only event log file")
    p.add_argument("--round", default="all", help="round label for agreement reports")
    p.add_argument("--ui", help="directory with the built annotation frontend")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("export", help="export completed annotations")
    p.add_argument("--corpus", required=True)
    p.add_argument("--outputs", required=True)
    p.add_argument("--log", required=True)
    p.add_argument("--annotator")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_export)

    return parser


# -- score ----------------------------------------------------------------


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _map_jobs(fn, items, jobs: int):
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


def _require(args, names: list[str], context: str) -> None:
    missing = [n for n in names if not getattr(args, n.replace("-", "_"), None)]
    if missing:
        raise InputError(f"{context} requires --" + ", --".join(missing))


def _plain_number(args, value: float) -> None:
    if args.format == "json":
        _emit(args, json.dumps({"metric": args.metric, "value": value}) + "\n")
    else:
        _emit(args, f"{value:.4f}\n")


def _report_out(args, report: MetricReport) -> None:
    if args.format == "json":
        _emit(args, json.dumps(render_report_json(report), ensure_ascii=False,
                               indent=2) + "\n")
    else:
        _emit(args, render_report_text(report))


def _load_scorer(args):
    if args.endpoint:
        return ExternalScorer(args.endpoint)
    if args.lm:
        return NgramModel.load(args.lm)
    raise InputError("scribendi requires --lm MODEL or --endpoint URL")


def _gleu_over(records, hyps_by_id, cfg) -> float:
    sources, hyps, refs, ids = [], [], [], []
    for rec in records:
        sources.append(tokenize(rec.source))
        hyps.append(tokenize(hyps_by_id[rec.id]))
        refs.append([tokenize(r) for r in rec.references])
        ids.append(rec.id)
    return gleu_corpus(sources, hyps, refs, cfg, ids=ids)


def _corpus_report(args, metric: str) -> MetricReport:
    """Per-system, per-CEFR-level table over a JSONL corpus + outputs file."""
    records = corpus_io.load_corpus(args.corpus)
    outputs = corpus_io.load_system_outputs(args.outputs)
    by_id = {r.id: r for r in records}
    systems: list[str] = []
    per_system: dict[str, dict[str, str]] = {}
    for out in outputs:
        if out.sentence_id not in by_id:
            raise InputError(f"{args.outputs}: unknown sentence id {out.sentence_id!r}")
        per_system.setdefault(out.system, {})[out.sentence_id] = out.output
        if out.system not in systems:
            systems.append(out.system)

    levels_present = sorted({r.cefr for r in records},
                            key=lambda lv: corpus_io.CEFR_LEVELS.index(lv))
    report = MetricReport(metric=metric.upper(), systems=systems,
                          levels=[ALL_LEVEL] + levels_present)

    if metric == "scribendi":
        scorer = _load_scorer(args)
        cfg = ScribendiConfig(similarity_threshold=args.threshold)

        def one(rec_out):
            rec, out_text = rec_out
            return scribendi_sentence(rec.source, out_text, scorer, cfg,
                                      sentence_id=rec.id)

    for system in systems:
        hyps = per_system[system]
        covered = [r for r in records if r.id in hyps]
        if not covered:
            continue
        groups = {ALL_LEVEL: covered}
        for rec in covered:
            groups.setdefault(rec.cefr, []).append(rec)
        for level, recs in groups.items():
            if metric == "gleu":
                missing = [r.id for r in recs if not r.references]
                if missing:
                    raise InputError(f"sentences without references: {missing}")
                cfg = GleuConfig(max_n=args.max_n, penalty_weight=args.penalty_weight,
                                 num_reference_samples=args.samples, seed=args.seed)
                value = _gleu_over(recs, hyps, cfg)
            elif metric == "scribendi":
                scores = _map_jobs(one, [(r, hyps[r.id]) for r in recs], args.jobs)
                value = sum(scores) / len(scores)
            elif metric == "fbeta":
                pairs = []
                for r in recs:
                    if not r.references:
                        raise InputError(f"sentence {r.id!r} has no reference")
                    src = tokenize(r.source)
                    gold = extract_edits(src, tokenize(r.references[0]))
                    hyp = extract_edits(src, tokenize(hyps[r.id]))
                    pairs.append((gold, hyp))
                _, _, value = fbeta_corpus(pairs, FBetaConfig(beta=args.beta))
            else:
                raise InputError(f"metric {metric} does not support corpus mode")
            report.values[(system, level)] = value
            report.counts[(system, level)] = len(recs)
    return report


def cmd_score(args) -> int:
    metric = args.metric

    if metric == "postedit":
        _require(args, ["annotations"], "--metric postedit")
        rows = [
            (rec["system"], rec.get("cefr") or "unknown", rec["output"], rec["postedit"])
            for rec in load_export(args.annotations)
        ]
        _report_out(args, postedit_report(rows))
        return 0

    if metric == "distribution":
        _require(args, ["annotations"], "--metric distribution")
        ratings = [
            (rec["system"], rec["scores"][args.dimension])
            for rec in load_export(args.annotations)
        ]
        dist = score_distribution(ratings)
        if args.format == "json":
            _emit(args, json.dumps(render_distribution_json(dist), ensure_ascii=False,
                                   indent=2) + "\n")
        else:
            _emit(args, render_distribution_text(dist))
        return 0

    if args.corpus or args.outputs:
        _require(args, ["corpus", "outputs"], "corpus mode")
        _report_out(args, _corpus_report(args, metric))
        return 0

    # plain parallel-file mode: one pooled number
    if metric == "gleu":
        _require(args, ["src", "hyp", "ref"], "--metric gleu")
        records = corpus_io.corpus_from_parallel(args.src, args.ref)
        hyp_lines = corpus_io.load_text_lines(args.hyp)
        if len(hyp_lines) != len(records):
            raise InputError(
                f"{args.hyp}: {len(hyp_lines)} lines, expected {len(records)}"
            )
        cfg = GleuConfig(max_n=args.max_n, penalty_weight=args.penalty_weight,
                         num_reference_samples=args.samples, seed=args.seed)
        if args.jobs > 1 and all(len(r.references) == 1 for r in records):
            stats = _map_jobs(
                lambda t: sentence_stats(tokenize(t[0].source), tokenize(t[1]),
                                         tokenize(t[0].references[0]), cfg),
                list(zip(records, hyp_lines)), args.jobs)
            pooled = [sum(col) for col in zip(*stats)]
            value = score_from_stats(pooled, cfg.max_n)
        else:
            value = _gleu_over(records, dict(zip((r.id for r in records), hyp_lines)),
                               cfg)
        _plain_number(args, value)
        return 0

    if metric == "scribendi":
        _require(args, ["src", "hyp"], "--metric scribendi")
        sources = corpus_io.load_text_lines(args.src)
        hyps = corpus_io.load_text_lines(args.hyp)
        if len(sources) != len(hyps):
            raise InputError(f"{args.hyp}: {len(hyps)} lines, expected {len(sources)}")
        scorer = _load_scorer(args)
        cfg = ScribendiConfig(similarity_threshold=args.threshold)
        scores = _map_jobs(
            lambda pair: scribendi_sentence(pair[1][0], pair[1][1], scorer, cfg,
                                            sentence_id=f"line-{pair[0] + 1}"),
            list(enumerate(zip(sources, hyps))), args.jobs)
        _plain_number(args, sum(scores) / len(scores))
        return 0

    if metric == "fbeta":
        _require(args, ["src", "hyp", "ref"], "--metric fbeta")
        sources = corpus_io.load_text_lines(args.src)
        hyps = corpus_io.load_text_lines(args.hyp)
        refs = corpus_io.load_text_lines(args.ref[0])
        if not (len(sources) == len(hyps) == len(refs)):
            raise InputError("source, hypothesis and reference files differ in length")
        pairs = []
        for s, h, r in zip(sources, hyps, refs):
            src = tokenize(s)
            pairs.append((extract_edits(src, tokenize(r)),
                          extract_edits(src, tokenize(h))))
        precision, recall, f = fbeta_corpus(pairs, FBetaConfig(beta=args.beta))
        if args.format == "json":
            _emit(args, json.dumps({"metric": "fbeta", "precision": precision,
                                    "recall": recall, "f_beta": f}) + "\n")
        else:
            _emit(args, f"P {precision:.4f}  R {recall:.4f}  F{args.beta:g} {f:.4f}\n")
        return 0

    if metric == "nld":
        _require(args, ["src", "hyp"], "--metric nld")
        a_lines = corpus_io.load_text_lines(args.src)
        b_lines = corpus_io.load_text_lines(args.hyp)
        if len(a_lines) != len(b_lines):
            raise InputError(f"{args.hyp}: {len(b_lines)} lines, expected {len(a_lines)}")
        if not a_lines:
            raise InputError("empty input")
        values = _map_jobs(lambda p: nld(normalize(p[0]), normalize(p[1])),
                           list(zip(a_lines, b_lines)), args.jobs)
        _plain_number(args, sum(values) / len(values))
        return 0

    raise InputError(f"unsupported metric {metric!r}")


# -- agree ------------------------------------------------------------------


def agreement_from_export(records: list[dict], annotator_a: str, annotator_b: str,
                          dimension: str | None = None) -> dict:
    by_annotator: dict[str, dict[str, dict]] = {}
    for rec in records:
        by_annotator.setdefault(rec["annotator"], {})[rec["item_id"]] = rec
    for ann in (annotator_a, annotator_b):
        if ann not in by_annotator:
            raise InputError(f"annotator {ann!r} not present in export")
    a_items = by_annotator[annotator_a]
    b_items = by_annotator[annotator_b]
    shared = sorted(set(a_items) & set(b_items))
    if not shared:
        raise InputError(
            f"no shared completed items between {annotator_a!r} and {annotator_b!r}"
        )
    dims = (dimension,) if dimension else DIMENSIONS
    row: dict[str, float | None] = {}
    for dim in dims:
        pairs = [
            (a_items[i]["scores"][dim], b_items[i]["scores"][dim])
            for i in shared
            if a_items[i]["scores"][dim] != "other" and b_items[i]["scores"][dim] != "other"
        ]
        try:
            row[dim] = qwk(RatingMatrix(categories=4, pairs=tuple(pairs)))
        except (InputError, UndefinedStatisticError):
            row[dim] = None
    return {"all": row}


def cmd_agree(args) -> int:
    report = agreement_from_export(load_export(args.annotations),
                                   args.annotator_a, args.annotator_b,
                                   args.dimension)
    if args.format == "json":
        sys.stdout.write(json.dumps(report, indent=2) + "\n")
        return 0
    dims = (args.dimension,) if args.dimension else DIMENSIONS
    header = ["Round"] + [d.capitalize() for d in dims]
    lines = ["  ".join(header)]
    for rnd, row in report.items():
        cells = [rnd]
        for d in dims:
            v = row.get(d)
            cells.append("-" if v is None else f"{v:.3f}")
        lines.append("  ".join(cells))
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


# -- tree --------------------------------------------------------------------


def load_version_sets(versions_path: str, provenance_path: str) -> list[VersionSet]:
    try:
        with open(provenance_path, encoding="utf-8") as f:
            prov = json.load(f)
    except OSError as e:
        raise InputError(f"cannot read {provenance_path}: {e}") from e
    except json.JSONDecodeError as e:
        raise InputError(f"{provenance_path}: invalid JSON: {e}") from e
    parents = dict(prov.get("parents", {}))
    kinds = dict(prov.get("kinds", {}))

    sets = []
    try:
        with open(versions_path, encoding="utf-8") as f:
            for lineno, line in enumerate(f, start=1):
                if not line.strip():
                    continue
                try:
                    obj = json.loads(line)
                    sets.append(
                        VersionSet(sentence_id=str(obj["id"]),
                                   versions=dict(obj["versions"]),
                                   parents=parents, kinds=kinds)
                    )
                except (json.JSONDecodeError, KeyError, TypeError) as e:
                    raise InputError(f"{versions_path}:{lineno}: {e}") from e
    except OSError as e:
        raise InputError(f"cannot read {versions_path}: {e}") from e
    if not sets:
        raise InputError(f"{versions_path}: no version sets")
    return sets


def cmd_tree(args) -> int:
    sets = load_version_sets(args.versions, args.provenance)
    matrix = pairwise_nld_matrix(sets)
    embedding = mds_embed(matrix, iterations=args.iterations, seed=args.seed)
    tree = build_tree(sets[0], embedding)

    prefix = Path(args.out)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    Path(f"{prefix}.json").write_text(tree.to_json(), encoding="utf-8")
    Path(f"{prefix}.dot").write_text(tree.to_dot(), encoding="utf-8")
    Path(f"{prefix}.svg").write_text(tree.to_svg(), encoding="utf-8")
    sys.stdout.write(
        f"labels {len(matrix.labels)}  edges {len(tree.edges)}  "
        f"stress {embedding.stress:.6e}  iterations {len(embedding.stress_trace) - 1}\n"
    )
    return 0


# -- correct / train-lm --------------------------------------------------------


def cmd_correct(args) -> int:
    model = NgramModel.load(args.model)
    lexicon = Lexicon.load(args.lexicon)
    cfg = BaselineConfig(improvement_threshold=args.delta,
                         max_iterations=args.max_iterations,
                         max_candidates_per_token=args.max_candidates)
    lines = corpus_io.load_text_lines(args.input)
    results = _map_jobs(lambda s: correct_sentence(s, model, lexicon, cfg),
                        lines, args.jobs)
    with open(args.output, "w", encoding="utf-8") as f:
        for corrected, _ in results:
            f.write(corrected + "\n")
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as f:
            for i, (corrected, trace) in enumerate(results):
                obj = {
                    "line": i + 1,
                    "corrected": corrected,
                    "steps": [
                        {"before": s.before, "after": s.after,
                         "score_delta": s.score_delta}
                        for s in trace
                    ],
                }
                f.write(json.dumps(obj, ensure_ascii=False) + "\n")
    return 0


def cmd_train_lm(args) -> int:
    texts = [normalize(t) for t in corpus_io.load_text_lines(args.corpus)]
    texts = [t for t in texts if t]
    model = train_char_ngram(texts, order=args.order, k=args.k)
    model.save(args.out)
    sys.stdout.write(
        f"trained order-{args.order} model on {len(texts)} sentences "
        f"({len(model.vocabulary)} symbols) -> {args.out}\n"
    )
    return 0


# -- serve / export --------------------------------------------------------------


def _build_service(args) -> AnnotationService:
    sentences = corpus_io.load_corpus(args.corpus)
    outputs = corpus_io.load_system_outputs(args.outputs)
    pool = build_pool(sentences, outputs, round_label=getattr(args, "round", "all"))
    return AnnotationService(pool, EventLog(args.log))


def cmd_serve(args) -> int:
    import uvicorn

    from geceval.annotation.http import create_app

    service = _build_service(args)
    app = create_app(service, ui_dir=args.ui)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def cmd_export(args) -> int:
    service = _build_service(args)
    text = service.export(args.annotator)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GecEvalError as e:
        print(f"geceval: error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
