"""Command-line pipeline: preprocess, score, filter, sample, split, bleu,
correlate, report.

Every subcommand accepts --config PATH (a flat key=value file supplying
defaults that explicit flags override), --output-dir, --threads, and
--strict/--permissive. All randomness comes from explicit seeds; reruns with
the same inputs produce byte-identical outputs. Exit codes: 0 success,
2 usage/config error, 3 data error (stderr carries one `CODE: message` line).
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import corpus as corpus_mod
from . import metrics, selection
from .embeddings import load_embedding_file, load_word_table
from .errors import BitextError, ConfigError, EmptyCorpus, MissingEmbeddings

logger = logging.getLogger(__name__)

_LIST_SEP = ","


def load_config(path: str | Path) -> dict[str, str]:
    """Parse a flat key=value config file ('#' comments, blank lines ok)."""
    cfg: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            if not sep or not key.strip():
                raise ConfigError(f"{path}: line {lineno}: expected key=value, got {line!r}")
            cfg[key.strip()] = value.strip()
    return cfg


class Settings:
    """Flag values with config-file fallback; flags always win."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.cfg = load_config(args.config) if getattr(args, "config", None) else {}

    def get(self, name, cast=str, default=None, required=False, config_key=None):
        value = getattr(self.args, name.replace("-", "_"), None)
        if value is None or value == []:
            raw = self.cfg.get(config_key or name)
            if raw is not None:
                value = _cast(raw, cast, config_key or name)
        if value is None or value == []:
            if required:
                raise ConfigError(f"missing required setting '{name}'")
            return default
        return value


def _cast(raw: str, cast, name: str):
    try:
        if cast is bool:
            lowered = raw.lower()
            if lowered in ("1", "true", "yes", "on"):
                return True
            if lowered in ("0", "false", "no", "off"):
                return False
            raise ValueError(f"not a boolean: {raw!r}")
        if isinstance(cast, tuple) and cast[0] is list:
            item_cast = cast[1]
            return [item_cast(part.strip()) for part in raw.split(_LIST_SEP) if part.strip()]
        return cast(raw)
    except ValueError as exc:
        raise ConfigError(f"config value for '{name}': {exc}") from exc


def _check_fraction(value: float, name: str, allow_one: bool = True) -> float:
    upper_ok = value <= 1.0 if allow_one else value < 1.0
    if not (0.0 < value and upper_ok):
        bound = "(0, 1]" if allow_one else "(0, 1)"
        raise ConfigError(f"{name} must be in {bound}, got {value}")
    return value


def _check_seed(value: int) -> int:
    if not 0 <= value < 2**64:
        raise ConfigError(f"seed must be an unsigned 64-bit integer, got {value}")
    return value


def _out_dir(settings: Settings) -> Path:
    out = Path(settings.get("output-dir", cast=str, default=".", config_key="output_dir"))
    out.mkdir(parents=True, exist_ok=True)
    return out


def _load_corpus(settings: Settings) -> corpus_mod.Corpus:
    path = settings.get("input", required=True)
    return corpus_mod.read_tsv(path)


def _read_segments(path: str | Path) -> list[str]:
    """One segment per line; interior empty lines are kept as empty segments."""
    text = Path(path).read_text(encoding="utf-8")
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return lines


def cmd_preprocess(args: argparse.Namespace) -> int:
    settings = Settings(args)
    input_tsv = settings.get("input")
    sources = settings.get("source", cast=(list, str), config_key="sources")
    targets = settings.get("target", cast=(list, str), config_key="targets")
    origins = settings.get("origin", cast=(list, str), config_key="origins") or []
    min_chars = settings.get("min-chars", cast=int, default=corpus_mod.MIN_CHARS_DEFAULT,
                             config_key="min_chars")
    max_chars = settings.get("max-chars", cast=int, default=corpus_mod.MAX_CHARS_DEFAULT,
                             config_key="max_chars")

    if input_tsv:
        full = corpus_mod.read_tsv(input_tsv)
    elif sources or targets:
        if not sources or not targets or len(sources) != len(targets):
            raise ConfigError("aligned ingestion needs matching --source/--target lists")
        parts = []
        next_id = 0
        for i, (src, tgt) in enumerate(zip(sources, targets)):
            origin = origins[i] if i < len(origins) else corpus_mod.ORIGIN_OTHER
            part = corpus_mod.ingest_parallel(src, tgt, origin=origin, start_id=next_id)
            next_id += len(part)
            parts.append(part)
        full = corpus_mod.merge(parts)
    else:
        raise ConfigError("preprocess needs --input TSV or --source/--target file pairs")

    if len(full) == 0:
        raise EmptyCorpus("no sentence pairs in the input")

    cleaned, stats = corpus_mod.preprocess(full, min_chars=min_chars, max_chars=max_chars)
    out = _out_dir(settings)
    corpus_path = out / "preprocessed.tsv"
    stats_path = out / "stats.txt"
    corpus_mod.write_tsv(cleaned, corpus_path)
    corpus_mod.write_stats_report(stats, stats_path)
    removed = ", ".join(f"{k}={v}" for k, v in stats.removed_by_rule.items())
    print(f"wrote {corpus_path} ({len(cleaned)} of {len(full)} pairs; removed: {removed})")
    print(f"wrote {stats_path}")
    return 0


def cmd_score(args: argparse.Namespace) -> int:
    settings = Settings(args)
    corp = _load_corpus(settings)
    method = settings.get("method", required=True)
    threads = settings.get("threads", cast=int, default=1)
    strict = settings.get("strict", cast=bool, default=True)
    method_tag = settings.get("method-tag", default=None, config_key="method_tag")

    if method == "muse":
        src_table = load_word_table(
            settings.get("source-vectors", required=True, config_key="source_vectors")
        )
        tgt_table = load_word_table(
            settings.get("target-vectors", required=True, config_key="target_vectors")
        )
        scored = selection.score_pairs_muse(corp, src_table, tgt_table, threads=threads)
        if method_tag and method_tag != selection.METHOD_MUSE:
            scored = selection.ScoredCorpus(corp, method_tag, scored.scores, scored.uncovered)
    elif method == "precomputed":
        src_path = settings.get("source-embeddings", required=True, config_key="source_embeddings")
        tgt_path = settings.get("target-embeddings", required=True, config_key="target_embeddings")
        for p in (src_path, tgt_path):
            if not Path(p).exists():
                raise MissingEmbeddings(f"embedding file not found: {p}")
        scored = selection.score_pairs_precomputed(
            corp,
            load_embedding_file(src_path),
            load_embedding_file(tgt_path),
            method=method_tag or selection.METHOD_OTHER,
            strict=strict,
        )
    else:
        raise ConfigError(f"method must be muse or precomputed, got {method!r}")

    out = _out_dir(settings)
    scores_path = out / "scores.tsv"
    uncovered_path = out / "uncovered.txt"
    selection.write_score_file(scored, scores_path)
    selection.write_uncovered_file(scored, uncovered_path)
    print(
        f"wrote {scores_path} ({len(scored.scores)} scored, "
        f"{len(scored.uncovered)} uncovered; method {scored.method})"
    )
    return 0


def _fractions(settings: Settings) -> list[float]:
    fractions = settings.get("fraction", cast=(list, float), required=True, config_key="fractions")
    return [_check_fraction(f, "fraction") for f in fractions]


def cmd_filter(args: argparse.Namespace) -> int:
    settings = Settings(args)
    corp = _load_corpus(settings)
    method_tag = settings.get("method-tag", default=selection.METHOD_OTHER, config_key="method_tag")
    scores = selection.read_score_file(settings.get("scores", required=True))
    scored = selection.scored_from_file(corp, method_tag, scores)
    out = _out_dir(settings)
    for fraction in _fractions(settings):
        retained = selection.retain_top_fraction(scored, selection.RetentionSpec(fraction))
        path = out / f"retained_{fraction:g}.tsv"
        corpus_mod.write_tsv(retained, path)
        print(f"wrote {path} ({len(retained)} of {len(corp)} pairs)")
    return 0


def cmd_sample(args: argparse.Namespace) -> int:
    settings = Settings(args)
    corp = _load_corpus(settings)
    fraction = _check_fraction(settings.get("fraction", cast=float, required=True), "fraction")
    seeds = [
        _check_seed(s)
        for s in settings.get("seed", cast=(list, int), required=True, config_key="seeds")
    ]
    out = _out_dir(settings)
    for seed in seeds:
        subset = selection.random_subset(corp, fraction, seed)
        path = out / f"sample_seed{seed}.tsv"
        corpus_mod.write_tsv(subset, path)
        print(f"wrote {path} ({len(subset)} of {len(corp)} pairs, seed {seed})")
    return 0


def cmd_split(args: argparse.Namespace) -> int:
    settings = Settings(args)
    corp = _load_corpus(settings)
    train_fraction = _check_fraction(
        settings.get("train-fraction", cast=float, default=0.8, config_key="train_fraction"),
        "train-fraction",
        allow_one=False,
    )
    seed = _check_seed(settings.get("seed", cast=int, required=True))
    train, valid = selection.stratified_split(
        corp, selection.SplitSpec(train_fraction=train_fraction, seed=seed)
    )
    out = _out_dir(settings)
    train_path, valid_path = out / "train.tsv", out / "valid.tsv"
    corpus_mod.write_tsv(train, train_path)
    corpus_mod.write_tsv(valid, valid_path)
    print(f"wrote {train_path} ({len(train)} pairs) and {valid_path} ({len(valid)} pairs)")
    return 0


def cmd_bleu(args: argparse.Namespace) -> int:
    settings = Settings(args)
    hyps = _read_segments(settings.get("hypotheses", required=True))
    refs = _read_segments(settings.get("references", required=True))
    result = metrics.corpus_bleu(hyps, refs)
    print(result.format())
    return 0


def cmd_correlate(args: argparse.Namespace) -> int:
    settings = Settings(args)
    scores_a = selection.read_score_file(settings.get("scores-a", required=True, config_key="scores_a"))
    scores_b = selection.read_score_file(settings.get("scores-b", required=True, config_key="scores_b"))
    method_a = settings.get("method-a", default="A", config_key="method_a")
    method_b = settings.get("method-b", default="B", config_key="method_b")
    shared = sorted(scores_a.keys() & scores_b.keys())
    report = metrics.pearson(
        [scores_a[i] for i in shared],
        [scores_b[i] for i in shared],
        method_a=method_a,
        method_b=method_b,
    )
    print(f"pearson_r = {report.r:.6f} (n = {report.n}, {report.method_a} vs {report.method_b})")
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    settings = Settings(args)
    inputs = settings.get("input", cast=(list, str), required=True, config_key="inputs")
    lines = []
    for path in inputs:
        corp = corpus_mod.read_tsv(path)
        stem = Path(path).stem
        lines.append(f"dataset.{stem}.pairs: {len(corp)}")
        for origin in sorted({p.origin for p in corp.pairs}):
            count = sum(1 for p in corp.pairs if p.origin == origin)
            lines.append(f"dataset.{stem}.origin.{origin}: {count}")
    report_text = "\n".join(lines) + "\n"
    print(report_text, end="")
    out = _out_dir(settings)
    report_path = out / "report.txt"
    report_path.write_text(report_text, encoding="utf-8")
    print(f"wrote {report_path}")
    return 0


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", help="flat key=value config file; flags override it")
    sub.add_argument("--output-dir", help="directory for output files (default .)")
    sub.add_argument("--threads", type=int, help="worker bound; never affects outputs")
    strictness = sub.add_mutually_exclusive_group()
    strictness.add_argument("--strict", dest="strict", action="store_true", default=None,
                            help="missing precomputed embeddings are an error (default)")
    strictness.add_argument("--permissive", dest="strict", action="store_false",
                            help="route pairs with missing embeddings to the uncovered list")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bitextkit",
        description="Parallel-corpus filtering pipeline: clean, score, retain, sample, split, evaluate.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("preprocess", help="run the cleaning cascade, write corpus TSV + stats")
    p.add_argument("--input", help="3-column TSV (source<TAB>target<TAB>origin)")
    p.add_argument("--source", action="append", help="aligned source-language file (repeatable)")
    p.add_argument("--target", action="append", help="aligned target-language file (repeatable)")
    p.add_argument("--origin", action="append", help="origin tag for the matching file pair")
    p.add_argument("--min-chars", type=int, help="minimum characters per side (default 15)")
    p.add_argument("--max-chars", type=int, help="maximum characters per side (default 200)")
    _add_common(p)
    p.set_defaults(func=cmd_preprocess)

    p = sub.add_parser("score", help="score pairs by cross-lingual cosine similarity")
    p.add_argument("--input", help="corpus TSV")
    p.add_argument("--method", choices=["muse", "precomputed"])
    p.add_argument("--source-vectors", help="word-vector text file for the source language")
    p.add_argument("--target-vectors", help="word-vector text file for the target language")
    p.add_argument("--source-embeddings", help="EMBF file for the source side")
    p.add_argument("--target-embeddings", help="EMBF file for the target side")
    p.add_argument("--method-tag", choices=sorted(selection.VALID_METHODS),
                   help="method label recorded with the scores")
    _add_common(p)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("filter", help="retain the top-scoring fraction(s) of a corpus")
    p.add_argument("--input", help="corpus TSV")
    p.add_argument("--scores", help="score TSV from the score step")
    p.add_argument("--fraction", action="append", type=float,
                   help="retention fraction in (0, 1]; repeatable")
    p.add_argument("--method-tag", choices=sorted(selection.VALID_METHODS))
    _add_common(p)
    p.set_defaults(func=cmd_filter)

    p = sub.add_parser("sample", help="seeded random baseline subsets")
    p.add_argument("--input", help="corpus TSV")
    p.add_argument("--fraction", type=float, help="subset fraction in (0, 1]")
    p.add_argument("--seed", action="append", type=int, help="subset seed; repeatable")
    _add_common(p)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("split", help="stratified train/validation split")
    p.add_argument("--input", help="corpus TSV")
    p.add_argument("--train-fraction", type=float, help="train share in (0, 1), default 0.8")
    p.add_argument("--seed", type=int, help="split seed")
    _add_common(p)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("bleu", help="corpus BLEU of hypotheses against references")
    p.add_argument("--hypotheses", help="hypothesis file, one segment per line")
    p.add_argument("--references", help="reference file, one segment per line")
    _add_common(p)
    p.set_defaults(func=cmd_bleu)

    p = sub.add_parser("correlate", help="Pearson correlation between two score files")
    p.add_argument("--scores-a", help="first score TSV")
    p.add_argument("--scores-b", help="second score TSV")
    p.add_argument("--method-a", help="label for the first method")
    p.add_argument("--method-b", help="label for the second method")
    _add_common(p)
    p.set_defaults(func=cmd_correlate)

    p = sub.add_parser("report", help="dataset-size accounting across pipeline outputs")
    p.add_argument("--input", action="append", help="corpus TSV to count; repeatable")
    _add_common(p)
    p.set_defaults(func=cmd_report)

    return parser


def run(argv: list[str] | None = None) -> int:
    """Parse argv and execute; returns the process exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"{exc.code}: {exc}", file=sys.stderr)
        return 2
    except BitextError as exc:
        print(f"{exc.code}: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"IO_ERROR: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    sys.exit(run())


if __name__ == "__main__":
    main()
