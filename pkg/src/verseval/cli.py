"""Pipeline driver: ingest -> stats -> gen-baseline -> score -> regress ->
pages -> serve -> report, plus small standalone entry points.

Every CSV starts with a provenance comment line (config hash + seed) followed
by a header row; reals are printed with six fractional digits and undefined
values as the literal ``undefined``.  Exit codes: 0 ok, 1 validation error,
2 missing input, 3 internal error; failures also print one machine-readable
JSON line to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from pathlib import Path

from . import annotation, evalmerge, generator, service, similarity
from . import corpus as corpus_mod
from .config import (ConfigError, MissingInputError, PipelineConfig,
                     apply_overrides, config_hash, load_config, require_dir)
from .corpus import ArtistCorpus, CleaningRules, Provenance, Verse
from .rhyme import (PronouncingDictionary, RhymeParams, default_dictionary,
                    detect_rhymes, weighted_rhyme_density)

log = logging.getLogger("verseval")

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_MISSING = 2
EXIT_INTERNAL = 3


# --- output helpers ---------------------------------------------------------

def _fmt(value) -> str:
    if value is None:
        return "undefined"
    if isinstance(value, float):
        if math.isnan(value):
            return "undefined"
        return f"{value:.6f}"
    return str(value)


def write_csv(path: Path, header: list[str], rows: list[list],
              cfg: PipelineConfig) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"# config_hash={config_hash(cfg)} seed={cfg.seed}",
             ",".join(header)]
    lines.extend(",".join(_fmt(cell) for cell in row) for row in rows)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _out(cfg: PipelineConfig) -> Path:
    return Path(cfg.output_dir)


def _safe_name(verse_id: str) -> str:
    return verse_id.replace(":", "_").replace("/", "_")


# --- shared loading ---------------------------------------------------------

def _artist_names(cfg: PipelineConfig) -> list[str]:
    root = require_dir(cfg.corpus_root, "corpus root")
    if cfg.artists:
        missing = [a for a in cfg.artists if not (root / a).is_dir()]
        if missing:
            raise MissingInputError(
                f"artist directories not found under {root}: {missing}")
        return list(cfg.artists)
    names = sorted(d.name for d in root.iterdir() if d.is_dir())
    if not names:
        raise MissingInputError(f"no artist directories under {root}")
    return names


def _load_corpora(cfg: PipelineConfig) -> dict[str, ArtistCorpus]:
    cdir = _out(cfg) / "corpus"
    if not cdir.is_dir():
        raise MissingInputError(
            f"ingested corpus not found: {cdir} (run `verseval ingest` first)")
    corpora: dict[str, ArtistCorpus] = {}
    for mf in sorted(cdir.glob("*.json")):
        c = corpus_mod.read_manifest(mf)
        corpora[c.artist_id] = c
    if cfg.artists:
        missing = [a for a in cfg.artists if a not in corpora]
        if missing:
            raise MissingInputError(
                f"artists not ingested under {cdir}: {missing}")
        corpora = {a: corpora[a] for a in cfg.artists}
    if not corpora:
        raise MissingInputError(f"no corpus manifests under {cdir}")
    return corpora


def _pron_dict(cfg: PipelineConfig) -> PronouncingDictionary:
    if cfg.dictionary:
        p = Path(cfg.dictionary)
        if not p.is_file():
            raise MissingInputError(f"pronouncing dictionary not found: {p}")
        return PronouncingDictionary.load(p)
    return default_dictionary()


def _avg_weighted_rd(corpus: ArtistCorpus, pron: PronouncingDictionary,
                     params: RhymeParams) -> float:
    vals = [weighted_rhyme_density(v, pron, params) for v in corpus.verses]
    return sum(vals) / len(vals)


def _read_points_csv(path: Path) -> list[generator.CheckpointPoint]:
    if not path.is_file():
        raise MissingInputError(f"points file not found: {path}")
    points = []
    for line in path.read_text(encoding="utf-8").splitlines():
        if line.startswith("#") or line.startswith("x,") or not line.strip():
            continue
        x, rd, sim = line.split(",")
        points.append(generator.CheckpointPoint(
            x=float(x), avg_rhyme_density=float(rd),
            avg_max_similarity=float(sim), verse_refs=[]))
    return points


# --- subcommands ------------------------------------------------------------

def cmd_ingest(cfg: PipelineConfig, args) -> None:
    root = require_dir(cfg.corpus_root, "corpus root")
    rules = CleaningRules(min_tokens=cfg.min_tokens)
    prov = {"config_hash": config_hash(cfg), "seed": cfg.seed}
    for artist in _artist_names(cfg):
        corpus = corpus_mod.load_artist_dir(root / artist, rules,
                                            artist_id=artist)
        if not corpus.verses:
            raise corpus_mod.EmptyCorpusError(
                f"artist {artist!r}: no verses with >= {cfg.min_tokens} tokens")
        corpus_mod.write_manifest(corpus, _out(cfg) / "corpus" / f"{artist}.json",
                                  provenance=prov)
        print(f"ingest {artist}: {len(corpus.verses)} verses, "
              f"{corpus.total_tokens} tokens")


STATS_HEADER = ["artist", "verses", "unique_vocab", "vocab_richness",
                "avg_len", "stdev_len", "max_len"]


def _stats_rows(corpora: dict[str, ArtistCorpus]) -> list[list]:
    rows = []
    for artist in sorted(corpora):
        s = corpus_mod.corpus_stats(corpora[artist])
        rows.append([artist, s.verse_count, s.unique_vocab, s.vocab_richness,
                     s.avg_len, s.stdev_len, s.max_len])
    return rows


def cmd_stats(cfg: PipelineConfig, args) -> None:
    corpora = _load_corpora(cfg)
    path = _out(cfg) / "stats.csv"
    write_csv(path, STATS_HEADER, _stats_rows(corpora), cfg)
    print(f"stats: {len(corpora)} artists -> {path}")


def cmd_gen_baseline(cfg: PipelineConfig, args) -> None:
    corpora = _load_corpora(cfg)
    pron = _pron_dict(cfg)
    params = cfg.rhyme_params()
    for artist in sorted(corpora):
        corpus = corpora[artist]
        index = similarity.build_index(corpus.verses)
        points, verses = generator.baseline_checkpoint_suite(
            corpus, index, pron, params, seed=cfg.seed,
            verses_per_n=cfg.baseline_verses, max_tokens=cfg.max_tokens)
        write_csv(_out(cfg) / "baseline" / f"{artist}_points.csv",
                  ["x", "avg_rhyme_density", "avg_max_similarity"],
                  [[p.x, p.avg_rhyme_density, p.avg_max_similarity]
                   for p in points], cfg)
        vdir = _out(cfg) / "baseline" / artist
        vdir.mkdir(parents=True, exist_ok=True)
        for v in verses:
            (vdir / f"{_safe_name(v.verse_id)}.txt").write_text(
                v.text() + "\n", encoding="utf-8")
        corpus_mod.write_manifest(
            ArtistCorpus(artist_id=artist, verses=verses),
            _out(cfg) / "baseline" / f"{artist}_verses.json",
            provenance={"config_hash": config_hash(cfg), "seed": cfg.seed})
        print(f"gen-baseline {artist}: {len(verses)} verses over "
              f"{len(points)} orders")


def cmd_score(cfg: PipelineConfig, args) -> None:
    ckroot = require_dir(cfg.checkpoint_root, "checkpoint root")
    corpora = _load_corpora(cfg)
    pron = _pron_dict(cfg)
    params = cfg.rhyme_params()
    for artist in sorted(corpora):
        adir = ckroot / artist
        if not adir.is_dir():
            raise MissingInputError(f"checkpoint directory not found: {adir}")
        index = similarity.build_index(corpora[artist].verses)
        points, _ = generator.external_checkpoint_suite(
            adir, index, pron, params, artist_id=artist)
        write_csv(_out(cfg) / "checkpoints" / f"{artist}_points.csv",
                  ["x", "avg_rhyme_density", "avg_max_similarity"],
                  [[p.x, p.avg_rhyme_density, p.avg_max_similarity]
                   for p in points], cfg)
        print(f"score {artist}: {len(points)} checkpoint points")


MERGE_HEADER = ["artist", "avg_rhyme_density", "baseline_similarity",
                "baseline_x", "lstm_similarity", "lstm_x"]


def _merge_rows(cfg: PipelineConfig, corpora: dict[str, ArtistCorpus],
                pron: PronouncingDictionary,
                params: RhymeParams) -> list[list]:
    rows = []
    for artist in sorted(corpora):
        target = _avg_weighted_rd(corpora[artist], pron, params)
        row: list = [artist, target]
        for kind in ("baseline", "checkpoints"):
            path = _out(cfg) / kind / f"{artist}_points.csv"
            if kind == "checkpoints" and not path.is_file():
                row += [None, None]  # no neural checkpoints supplied
                continue
            points = _read_points_csv(path)
            try:
                merged = evalmerge.merged_similarity(points, target)
                row += [merged.similarity_at_target, merged.intersection_x]
            except (evalmerge.DegenerateFitError,
                    evalmerge.NoIntersectionError,
                    evalmerge.UnderdeterminedError) as exc:
                log.warning("merge %s/%s: %s", artist, kind, exc)
                row += [None, None]
        rows.append(row)
    return rows


def cmd_regress(cfg: PipelineConfig, args) -> None:
    corpora = _load_corpora(cfg)
    rows = _merge_rows(cfg, corpora, _pron_dict(cfg), cfg.rhyme_params())
    path = _out(cfg) / "merge.csv"
    write_csv(path, MERGE_HEADER, rows, cfg)
    print(f"regress: {len(rows)} artists -> {path}")


def _eval_verses(cfg: PipelineConfig, corpora: dict[str, ArtistCorpus],
                 generated_root: str | None) -> list[Verse]:
    """Authentic eval picks (seeded) plus optional generated verses on disk."""
    import random
    evals: list[Verse] = []
    for artist in sorted(corpora):
        pool = [v for v in corpora[artist].verses
                if v.token_count >= cfg.pool_min_tokens]
        k = cfg.eval_verses_per_artist
        if len(pool) <= k:
            raise annotation.InsufficientPoolError(
                f"artist {artist!r}: need more than {k} verses with >= "
                f"{cfg.pool_min_tokens} tokens, have {len(pool)}")
        rng = random.Random(generator.derive_seed(cfg.seed, "eval", artist))
        evals.extend(rng.sample(pool, k))
    if generated_root:
        groot = require_dir(generated_root, "generated verse root")
        for adir in sorted(p for p in groot.iterdir() if p.is_dir()):
            if adir.name not in corpora:
                raise ConfigError(f"generated verses for unknown artist "
                                  f"{adir.name!r}")
            for f in sorted(adir.glob("*.txt")):
                lines = [ln.split() for ln in
                         f.read_text(encoding="utf-8").splitlines()
                         if ln.split()]
                if not lines:
                    continue
                evals.append(Verse(
                    artist_id=adir.name,
                    verse_id=f"{adir.name}:gen-{f.stem}",
                    lines=lines, provenance=Provenance.generated(0)))
    return evals


def cmd_pages(cfg: PipelineConfig, args) -> None:
    corpora = _load_corpora(cfg)
    evals = _eval_verses(cfg, corpora, args.generated_root)
    pools = {a: corpora[a].verses for a in corpora}
    pages = annotation.build_style_pages(
        evals, pools, seed=generator.derive_seed(cfg.seed, "pages"),
        min_tokens=cfg.pool_min_tokens)
    doc = {"provenance": {"config_hash": config_hash(cfg), "seed": cfg.seed},
           "pages": [annotation.page_to_dict(p) for p in pages]}
    path = _out(cfg) / "pages.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(doc, indent=1, sort_keys=True) + "\n",
                    encoding="utf-8")
    print(f"pages: {len(pages)} pages for {len(evals)} eval verses -> {path}")


def _load_pages(path: Path) -> list[annotation.StyleMatchPage]:
    if not path.is_file():
        raise MissingInputError(
            f"pages file not found: {path} (run `verseval pages` first)")
    doc = json.loads(path.read_text(encoding="utf-8"))
    return [annotation.page_from_dict(d) for d in doc["pages"]]


def _grading_verses(pages: list[annotation.StyleMatchPage],
                    include_authentic: bool = False) -> list[Verse]:
    """Verses to grade for fluency/coherence: the generated eval verses."""
    seen: dict[str, Verse] = {}
    for page in pages:
        if page.eval_provenance != "generated" and not include_authentic:
            continue
        if page.eval_verse_id in seen:
            continue
        prov = (Provenance.generated(0) if page.eval_provenance == "generated"
                else Provenance.authentic())
        seen[page.eval_verse_id] = Verse(
            artist_id=page.eval_artist_id, verse_id=page.eval_verse_id,
            lines=[ln.split() for ln in page.eval_lines], provenance=prov)
    return list(seen.values())


def cmd_serve(cfg: PipelineConfig, args) -> None:
    pages = _load_pages(Path(args.pages or (_out(cfg) / "pages.json")))
    grading = _grading_verses(pages, include_authentic=args.grade_all)
    store_path = Path(args.log or (_out(cfg) / "annotations.jsonl"))
    store_path.parent.mkdir(parents=True, exist_ok=True)
    app = service.create_app(pages, grading, cfg.roster, store_path,
                             cfg.admin_token)
    import uvicorn
    print(f"serve: {len(pages)} pages, {len(grading)} graded verses on "
          f"http://{args.host}:{cfg.service_port}")
    uvicorn.run(app, host=args.host, port=cfg.service_port, log_level="warning")


def _read_annotation_records(path: Path) -> list[dict]:
    """Accept either the service's submission log or an exported flat file."""
    records = []
    with open(path, encoding="utf-8") as f:
        for line in f:
            if line.strip():
                records.append(json.loads(line))
    if records and "body" in records[0]:
        records = service.export_records(records)
    return records


MATCH_HEADER = ["artist", "authentic_match_pct", "authentic_match_a_pct",
                "authentic_agreement_pct", "generated_match_pct",
                "generated_match_a_pct", "generated_agreement_pct"]


def _match_rows(pages, style_anns) -> list[list]:
    rows = []
    artists = sorted({p.eval_artist_id for p in pages})
    for artist in artists:
        row: list = [artist]
        for prov in ("authentic", "generated"):
            subset = [p for p in pages if p.eval_artist_id == artist
                      and p.eval_provenance == prov]
            if not subset:
                row += [None, None, None]
                continue
            try:
                tally = annotation.match_stats(subset, style_anns)
            except annotation.IncompleteAnnotationError:
                row += [None, None, None]
                continue
            row += [tally.match_pct, tally.match_a_pct, tally.agreement_pct]
        rows.append(row)
    return rows


def cmd_report(cfg: PipelineConfig, args) -> None:
    corpora = _load_corpora(cfg)
    pron = _pron_dict(cfg)
    params = cfg.rhyme_params()
    rdir = _out(cfg) / "report"

    write_csv(rdir / "corpus_stats.csv", STATS_HEADER, _stats_rows(corpora),
              cfg)

    try:
        merge_rows = _merge_rows(cfg, corpora, pron, params)
    except MissingInputError:
        merge_rows = []  # gen-baseline not run yet: header-only table
    write_csv(rdir / "merged_similarity.csv", MERGE_HEADER, merge_rows, cfg)

    corr_rows = []
    for row in merge_rows:
        artist, target = row[0], row[1]
        if row[2] is None:
            continue
        s = corpus_mod.corpus_stats(corpora[artist])
        corr_rows.append({"rhyme_density": target, "similarity": row[2],
                          "tokens": float(corpora[artist].total_tokens),
                          "vocab_richness": s.vocab_richness})
    columns = ["rhyme_density", "similarity", "tokens", "vocab_richness"]
    try:
        matrix = evalmerge.metric_correlations(corr_rows, columns)
        rows = [[c] + list(vals) for c, vals in zip(matrix.columns,
                                                    matrix.values)]
    except ValueError:
        rows = []
    write_csv(rdir / "metric_correlations.csv", ["metric"] + columns, rows,
              cfg)

    structure: dict[str, dict[int, Verse]] = {}
    totals: dict[str, int] = {}
    if cfg.checkpoint_root and Path(cfg.checkpoint_root).is_dir():
        for artist in sorted(corpora):
            adir = Path(cfg.checkpoint_root) / artist
            if adir.is_dir():
                structure[artist] = generator.load_checkpoint_verses(
                    adir, artist_id=artist)
                totals[artist] = cfg.total_iterations
    else:
        for artist in sorted(corpora):
            mf = _out(cfg) / "baseline" / f"{artist}_verses.json"
            if not mf.is_file():
                continue
            by_ckpt: dict[int, Verse] = {}
            for v in corpus_mod.read_manifest(mf).verses:
                k = v.provenance.checkpoint or 0
                if k not in by_ckpt or v.token_count > by_ckpt[k].token_count:
                    by_ckpt[k] = v
            structure[artist] = by_ckpt
            totals[artist] = generator.MAX_ORDER
    srows = [[r.artist_id, r.max_len, r.checkpoint, r.pct_training]
             for r in evalmerge.verse_structure_report(structure, totals)]
    write_csv(rdir / "verse_structure.csv",
              ["artist", "max_len", "checkpoint", "pct_training"], srows, cfg)

    ann_path = Path(args.annotations or (_out(cfg) / "annotations.jsonl"))
    pages_path = Path(args.pages or (_out(cfg) / "pages.json"))
    match_rows: list[list] = []
    confusion_rows: list[list] = []
    grading_rows: list[list] = []
    confusion_header = ["artist"]
    if ann_path.is_file() and pages_path.is_file():
        pages = _load_pages(pages_path)
        records = _read_annotation_records(ann_path)
        line_anns, style_anns = annotation.annotations_from_records(records)
        match_rows = _match_rows(pages, style_anns)
        authentic = [p for p in pages if p.eval_provenance == "authentic"]
        try:
            cm = annotation.confusion_matrix(authentic, style_anns)
            confusion_header += cm.artists
            confusion_rows = [[a] + [cm.value(a, b) for b in cm.artists]
                              for a in cm.artists]
        except annotation.IncompleteAnnotationError:
            pass
        for verse in sorted(_grading_verses(pages, include_authentic=True),
                            key=lambda v: v.verse_id):
            row: list = [verse.verse_id]
            for task, fn in (("fluency", annotation.fluency_score),
                             ("coherence", annotation.coherence_score)):
                try:
                    row.append(fn(line_anns, verse))
                except annotation.IncompleteAnnotationError:
                    row.append(None)
            if row[1] is not None or row[2] is not None:
                grading_rows.append(row)
    write_csv(rdir / "style_match.csv", MATCH_HEADER, match_rows, cfg)
    write_csv(rdir / "style_confusion.csv", confusion_header, confusion_rows,
              cfg)
    write_csv(rdir / "grading_scores.csv",
              ["verse_id", "fluency", "coherence"], grading_rows, cfg)
    print(f"report: wrote {rdir}/*.csv")


# --- argument parsing -------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="verseval",
        description="Evaluation pipeline for ghostwritten verse: corpus "
                    "statistics, rhyme density, tf-idf similarity, n-gram "
                    "baselines, regression merge, annotation service and "
                    "reports.")
    parser.add_argument("--config", help="JSON config file")
    parser.add_argument("--set", dest="overrides", action="append",
                        default=[], metavar="KEY=VALUE",
                        help="override a config field (repeatable)")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("ingest", help="parse raw lyrics into corpus manifests"
                   ).set_defaults(func=cmd_ingest)
    sub.add_parser("stats", help="per-artist corpus statistics CSV"
                   ).set_defaults(func=cmd_stats)
    sub.add_parser("gen-baseline", help="n-gram baseline verses and metric "
                   "points for n=1..9").set_defaults(func=cmd_gen_baseline)
    sub.add_parser("score", help="score external checkpoint verses "
                   "(iter_<k>.txt)").set_defaults(func=cmd_score)
    sub.add_parser("regress", help="regression-merged similarity at the "
                   "authentic rhyme density").set_defaults(func=cmd_regress)

    p = sub.add_parser("pages", help="build blind style-matching pages")
    p.add_argument("--generated-root",
                   help="directory of <artist>/*.txt generated eval verses")
    p.set_defaults(func=cmd_pages)

    p = sub.add_parser("serve", help="run the annotation HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--pages", help="pages.json path (default: output dir)")
    p.add_argument("--log", help="submission log path (default: output dir)")
    p.add_argument("--grade-all", action="store_true",
                   help="also grade authentic eval verses")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("report", help="emit all result CSVs")
    p.add_argument("--annotations", help="submission log or exported JSONL")
    p.add_argument("--pages", help="pages.json path (default: output dir)")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = apply_overrides(load_config(args.config), args.overrides)
        args.func(cfg, args)
        return EXIT_OK
    except (MissingInputError, FileNotFoundError,
            generator.MissingCheckpointError) as exc:
        return _fail(exc, EXIT_MISSING)
    except (ConfigError, ValueError, KeyError) as exc:
        return _fail(exc, EXIT_VALIDATION)
    except Exception as exc:  # noqa: BLE001 - last-resort boundary
        return _fail(exc, EXIT_INTERNAL)


def _fail(exc: Exception, code: int) -> int:
    print(json.dumps({"error": str(exc), "type": type(exc).__name__,
                      "exit_code": code}), file=sys.stderr)
    return code


# --- standalone tools -------------------------------------------------------

def _verse_from_file(path: Path, verse_id: str = "candidate") -> Verse:
    lines = [corpus_mod.tokenize(ln)
             for ln in path.read_text(encoding="utf-8").splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError(f"no tokens in {path}")
    return Verse(artist_id="candidate", verse_id=verse_id, lines=lines)


def _dir_corpus(path: str, min_tokens: int) -> ArtistCorpus:
    d = Path(path)
    if not d.is_dir():
        raise MissingInputError(f"corpus directory not found: {d}")
    rules = CleaningRules(min_tokens=min_tokens)
    corpus = corpus_mod.load_artist_dir(d, rules)
    if not corpus.verses:
        raise corpus_mod.EmptyCorpusError(f"no verses in {d}")
    return corpus


def score_similarity_main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="score-similarity",
        description="Maximum tf-idf cosine between a candidate verse and any "
                    "single training verse.")
    parser.add_argument("corpus_dir", help="directory of training *.txt files")
    parser.add_argument("candidate", help="candidate verse text file")
    parser.add_argument("--min-tokens", type=int, default=20)
    args = parser.parse_args(argv)
    try:
        corpus = _dir_corpus(args.corpus_dir, args.min_tokens)
        index = similarity.build_index(corpus.verses)
        result = similarity.max_similarity(index,
                                           _verse_from_file(Path(args.candidate)))
        print(json.dumps({"max_similarity": result.score,
                          "best_verse_id": result.best_verse_id,
                          "degenerate": result.degenerate}))
        return EXIT_OK
    except (MissingInputError, FileNotFoundError) as exc:
        return _fail(exc, EXIT_MISSING)
    except ValueError as exc:
        return _fail(exc, EXIT_VALIDATION)


def rhyme_density_main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="rhyme-density",
        description="Rhymed-syllable fraction of a verse, raw and "
                    "entropy-weighted.")
    parser.add_argument("verse", help="verse text file")
    parser.add_argument("--dictionary", help="pronouncing dictionary path")
    parser.add_argument("--literal-entropy", action="store_true",
                        help="divide entropy by token count instead of log2")
    parser.add_argument("--window-lines", type=int, default=2)
    parser.add_argument("--max-span", type=int, default=4)
    args = parser.parse_args(argv)
    try:
        pron = (PronouncingDictionary.load(args.dictionary)
                if args.dictionary else default_dictionary())
        params = RhymeParams(window_lines=args.window_lines,
                             max_span=args.max_span,
                             literal_entropy=args.literal_entropy)
        ana = detect_rhymes(_verse_from_file(Path(args.verse)), pron, params)
        print(json.dumps({
            "total_syllables": ana.total_syllables,
            "rhymed_syllables": ana.rhymed_syllables,
            "density": ana.density,
            "entropy_weight": ana.entropy_weight,
            "weighted_density": ana.weighted_density,
        }))
        return EXIT_OK
    except (MissingInputError, FileNotFoundError) as exc:
        return _fail(exc, EXIT_MISSING)
    except ValueError as exc:
        return _fail(exc, EXIT_VALIDATION)


def gen_baseline_main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="gen-baseline",
        description="Sample verses from an n-gram model with skip-gram "
                    "backoff trained on one artist directory.")
    parser.add_argument("corpus_dir")
    parser.add_argument("-n", "--order", type=int, default=2)
    parser.add_argument("--verses", type=int, default=1)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--max-tokens", type=int,
                        default=generator.DEFAULT_MAX_TOKENS)
    parser.add_argument("--greedy", action="store_true")
    parser.add_argument("--min-tokens", type=int, default=20)
    args = parser.parse_args(argv)
    try:
        corpus = _dir_corpus(args.corpus_dir, args.min_tokens)
        model = generator.train(corpus, args.order)
        for i in range(args.verses):
            verse = generator.generate_verse(
                model, generator.derive_seed(args.seed, corpus.artist_id,
                                             args.order, i),
                max_tokens=args.max_tokens, greedy=args.greedy,
                verse_id=f"{corpus.artist_id}:cli-n{args.order}-v{i}")
            if i:
                print()
            print(verse.text())
        return EXIT_OK
    except (MissingInputError, FileNotFoundError) as exc:
        return _fail(exc, EXIT_MISSING)
    except ValueError as exc:
        return _fail(exc, EXIT_VALIDATION)


if __name__ == "__main__":
    sys.exit(main())
