"""``depscore`` command line.

Exit codes: 0 success, 2 parse/input error, 3 sentiment engine failure,
4 no participant overlap between scores and reference.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import threading
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Sequence

from depscore import corpus, pipeline, report
from depscore.config import FORMATS, RunConfig, load_config
from depscore.errors import EngineError, NoOverlap, ParseError
from depscore.evaluation import compare, parse_scores
from depscore.remote import ENDPOINT_ENV, Mode, RemoteEngine, SentimentCache, missing_units, record_units

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_ENGINE = 3
EXIT_NO_OVERLAP = 4

log = logging.getLogger("depscore")


def _add_run_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key = value config file (flags override it)")
    p.add_argument("--engine", choices=("lexicon", "remote"))
    p.add_argument("--lexicon", help="lexicon TSV (default: bundled)")
    p.add_argument("--stopwords", help="stopword list (default: bundled)")
    p.add_argument("--fillers", help="filler list (default: bundled)")
    p.add_argument("--pronouns", help="first-person singular pronoun list (default: bundled)")
    p.add_argument("--bins", type=int, help="number of equal time intervals (default 10)")
    p.add_argument("--scale", type=float, help="lexicon score normalizer (default 4)")
    p.add_argument("--boost", type=float, help="multiplier for depression terms (default 2)")
    p.add_argument("--attention-threshold", type=float, help="share of negative intervals that raises attention (default 0.5)")
    p.add_argument("--consistency-tolerance", type=float, help="allowed percent gap between approaches (default 5)")
    p.add_argument("--agent-label", help="interviewer speaker label to drop (default Ellie)")
    p.add_argument("--delimiter", help="transcript column delimiter (default tab)")
    p.add_argument("--out", help="output directory (default ./out)")
    p.add_argument("--format", dest="formats", action="append", choices=FORMATS, help="artifact format; repeatable (default all)")
    p.add_argument("--mode", choices=[m.value for m in Mode], help="remote engine mode (default replay)")
    p.add_argument("--cache", help="remote sentiment cache file (JSON lines)")
    p.add_argument("--endpoint", help=f"remote sentiment URL (or ${ENDPOINT_ENV})")
    p.add_argument("--timeout", type=float, help="remote request timeout in seconds")
    p.add_argument("--workers", type=int, help="transcripts processed in parallel (default: CPU count)")


_RUN_KEYS = (
    "engine", "lexicon", "stopwords", "fillers", "pronouns", "bins", "scale", "boost",
    "attention_threshold", "consistency_tolerance", "agent_label", "delimiter", "out",
    "formats", "mode", "cache", "endpoint", "timeout", "workers",
)


def _run_config(args: argparse.Namespace, **forced) -> RunConfig:
    overrides = {k: getattr(args, k, None) for k in _RUN_KEYS}
    if overrides.get("formats"):
        overrides["formats"] = tuple(dict.fromkeys(overrides["formats"]))
    if overrides.get("delimiter") in ("\\t", "tab"):
        overrides["delimiter"] = "\t"
    overrides.update(forced)
    return load_config(args.config, overrides)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="depscore", description="Score depression level in interview transcripts.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="score transcripts and write per-participant reports")
    p.add_argument("transcripts", nargs="+")
    _add_run_flags(p)

    p = sub.add_parser("evaluate", help="compare algorithm scores with a PHQ8 reference file")
    p.add_argument("scores", help="participant_id,score CSV (e.g. scores.csv from analyze)")
    p.add_argument("reference", help="PHQ8 reference CSV (AVEC2017 split layout)")
    p.add_argument("--out", default=None, help="directory for comparison.json / comparison.txt")

    p = sub.add_parser("cache", help="manage the remote sentiment cache")
    csub = p.add_subparsers(dest="cache_command", required=True)
    for name, text in (("record", "fetch and store sentiments for every unit"),
                       ("verify", "check every unit has a cached sentiment")):
        cp = csub.add_parser(name, help=text)
        cp.add_argument("transcripts", nargs="+")
        _add_run_flags(cp)
    return parser


def _prepare_all(paths: Sequence[str], cfg: RunConfig, res: pipeline.Resources):
    units, failed = [], False
    for path in paths:
        try:
            t = pipeline.read_transcript(path, cfg)
        except (OSError, ParseError) as exc:
            print(f"error: {path}: {exc}", file=sys.stderr)
            failed = True
            continue
        units.extend(pipeline.prepare_transcript(t, res.stopwords, res.fillers, cfg.agent_label))
    return units, failed


def cmd_analyze(args: argparse.Namespace) -> int:
    try:
        cfg = _run_config(args)
        res = pipeline.load_resources(cfg)
    except (OSError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        engine = pipeline.build_engine(cfg, res)
    except EngineError as exc:
        print(f"engine error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ENGINE

    out_dir = Path(cfg.out)
    lock = threading.Lock()

    def job(path: str):
        try:
            t = pipeline.read_transcript(path, cfg)
            return path, pipeline.analyze_transcript(t, cfg, res, engine, lock), None
        except (OSError, ParseError) as exc:
            return path, None, (EXIT_PARSE, exc)
        except EngineError as exc:
            return path, None, (EXIT_ENGINE, exc)

    workers = cfg.workers or os.cpu_count() or 1
    with ThreadPoolExecutor(max_workers=max(1, min(workers, len(args.transcripts)))) as pool:
        outcomes = list(pool.map(job, args.transcripts))

    results, codes = [], set()
    for path, result, err in outcomes:
        if err is not None:
            code, exc = err
            codes.add(code)
            print(f"error: {path}: {type(exc).__name__}: {exc}", file=sys.stderr)
            continue
        results.append(result)
        report.write_participant(result, cfg, engine.identifier, out_dir)
        log.info("%s: S=%.4f %s", path, result.components.s, result.level.label)

    if results:
        out_dir.mkdir(parents=True, exist_ok=True)
        report.write_text(out_dir / "scores.csv", report.scores_csv(results))
    if isinstance(engine, RemoteEngine) and engine.cfg.mode is Mode.RECORD:
        engine.cache.save(cfg.cache)
    if EXIT_ENGINE in codes:
        return EXIT_ENGINE
    if EXIT_PARSE in codes:
        return EXIT_PARSE
    return EXIT_OK


def cmd_evaluate(args: argparse.Namespace) -> int:
    try:
        scores = parse_scores(corpus.read_path(args.scores))
        refs = corpus.parse_reference(corpus.read_path(args.reference))
        rep = compare(scores, refs)
    except NoOverlap as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_OVERLAP
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    text = rep.to_text()
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        report.write_text(out / "comparison.json", rep.to_json())
        report.write_text(out / "comparison.txt", text)
    sys.stdout.write(text)
    return EXIT_OK


def cmd_cache(args: argparse.Namespace) -> int:
    try:
        cfg = _run_config(args, engine="remote", mode="record" if args.cache_command == "record" else "replay")
        res = pipeline.load_resources(cfg)
    except (OSError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    units, failed = _prepare_all(args.transcripts, cfg, res)
    try:
        if args.cache_command == "record":
            cache = pipeline.open_cache(cfg, res, Mode.RECORD)
            fetched = record_units(units, pipeline.remote_config(cfg, Mode.RECORD), cache)
            cache.save(cfg.cache)
            print(f"recorded {fetched} new sentiment(s); cache holds {len(cache)}")
        else:
            cache = SentimentCache.load(cfg.cache, expected_fingerprint=pipeline.fingerprint(cfg, res))
            missing = missing_units(units, cache)
            for u in missing:
                print(f"missing: {u.start}-{u.stop} {u.text[:60]!r}", file=sys.stderr)
            if missing:
                print(f"{len(missing)} unit(s) not cached", file=sys.stderr)
                return EXIT_ENGINE
            print(f"cache complete for {len(units)} unit(s)")
    except EngineError as exc:
        print(f"engine error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ENGINE
    return EXIT_PARSE if failed else EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if args.command == "analyze":
        return cmd_analyze(args)
    if args.command == "evaluate":
        return cmd_evaluate(args)
    return cmd_cache(args)


if __name__ == "__main__":
    sys.exit(main())
