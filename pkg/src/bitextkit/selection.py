"""Pair scoring, top-fraction retention, seeded random baselines, and
stratified train/validation splits.

All randomness flows through SplitMix64 feeding a Fisher-Yates shuffle, so a
given (input, seed) reproduces byte-identical outputs on any platform and for
any worker count. Retention and subset sizes use round-half-up of
fraction * N.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .corpus import Corpus
from .embeddings import WordEmbeddingTable, cosine_similarity, embed_sentence_mean, tokenize
from .errors import DimensionMismatch, MalformedTsv, MissingEmbeddings

METHOD_MUSE = "MUSE"
METHOD_LASER = "LASER"
METHOD_LABSE = "LABSE"
METHOD_OTHER = "OTHER"
VALID_METHODS = frozenset({METHOD_MUSE, METHOD_LASER, METHOD_LABSE, METHOD_OTHER})

_MASK64 = (1 << 64) - 1
_SCORE_CHUNK = 4096


class SplitMix64:
    """The splitmix64 generator: 64-bit state, one output per step."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def next_below(self, bound: int) -> int:
        """Draw from [0, bound) as next_u64() mod bound."""
        return self.next_u64() % bound


def fisher_yates_shuffle(items: list, rng: SplitMix64) -> None:
    """In-place Fisher-Yates, iterating i from len-1 down to 1 with
    j = rng.next_below(i + 1)."""
    for i in range(len(items) - 1, 0, -1):
        j = rng.next_below(i + 1)
        items[i], items[j] = items[j], items[i]


def fnv1a64(text: str) -> int:
    """FNV-1a 64-bit hash of the UTF-8 bytes; used for stratum subseeds."""
    h = 0xCBF29CE484222325
    for byte in text.encode("utf-8"):
        h = ((h ^ byte) * 0x100000001B3) & _MASK64
    return h


def round_half_up(x: float) -> int:
    return math.floor(x + 0.5)


@dataclass(frozen=True)
class PairScore:
    pair_id: int
    method: str
    score: float

    def __post_init__(self):
        if self.method not in VALID_METHODS:
            raise ValueError(f"unknown method tag {self.method!r}")
        if not -1.0 <= self.score <= 1.0:
            raise ValueError(f"score {self.score} outside [-1, 1]")


@dataclass(frozen=True)
class RetentionSpec:
    """Fraction of the highest-scoring pairs to keep, in (0, 1]."""

    fraction: float

    def __post_init__(self):
        if not 0.0 < self.fraction <= 1.0:
            raise ValueError(f"retention fraction {self.fraction} outside (0, 1]")


@dataclass(frozen=True)
class SplitSpec:
    """Train fraction in (0, 1) plus the seed driving the per-stratum shuffle."""

    train_fraction: float
    seed: int

    def __post_init__(self):
        if not 0.0 < self.train_fraction < 1.0:
            raise ValueError(f"train_fraction {self.train_fraction} outside (0, 1)")
        if self.seed < 0:
            raise ValueError("seed must be an unsigned 64-bit integer")


@dataclass(frozen=True)
class ScoredCorpus:
    """A corpus with one similarity score per pair from a single method.

    `scores` and `uncovered` partition the corpus pair_ids: every pair is
    either scored or flagged NO_COVERAGE, never both.
    """

    corpus: Corpus
    method: str
    scores: dict[int, float]
    uncovered: frozenset[int]

    def __post_init__(self):
        if self.method not in VALID_METHODS:
            raise ValueError(f"unknown method tag {self.method!r}")
        ids = self.corpus.pair_ids()
        if self.scores.keys() & self.uncovered:
            raise ValueError("a pair_id appears both scored and uncovered")
        if self.scores.keys() | self.uncovered != ids:
            raise ValueError("scores + uncovered do not cover the corpus exactly")
        for score in self.scores.values():
            if not -1.0 <= score <= 1.0:
                raise ValueError(f"score {score} outside [-1, 1]")

    def iter_scores(self):
        for pair_id, score in self.scores.items():
            yield PairScore(pair_id, self.method, score)


def _score_muse_chunk(
    pairs, source_table: WordEmbeddingTable, target_table: WordEmbeddingTable
) -> list[tuple[int, float | None]]:
    out = []
    for p in pairs:
        svec = embed_sentence_mean(tokenize(p.source_text), source_table)
        tvec = embed_sentence_mean(tokenize(p.target_text), target_table)
        if svec is None or tvec is None:
            out.append((p.pair_id, None))
        else:
            out.append((p.pair_id, cosine_similarity(svec, tvec)))
    return out


def score_pairs_muse(
    corpus: Corpus,
    source_table: WordEmbeddingTable,
    target_table: WordEmbeddingTable,
    threads: int = 1,
) -> ScoredCorpus:
    """Score every pair as the cosine of the two mean-pooled sentence vectors.

    Pairs with no vocabulary coverage on either side land in `uncovered`.
    Scoring is a pure map over pairs: the result is identical for any
    `threads` value.
    """
    if source_table.dim != target_table.dim:
        raise DimensionMismatch(
            f"source table dim {source_table.dim} != target table dim {target_table.dim}"
        )
    chunks = [
        corpus.pairs[i : i + _SCORE_CHUNK] for i in range(0, len(corpus.pairs), _SCORE_CHUNK)
    ]
    if threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(
                pool.map(lambda c: _score_muse_chunk(c, source_table, target_table), chunks)
            )
    else:
        results = [_score_muse_chunk(c, source_table, target_table) for c in chunks]

    scores: dict[int, float] = {}
    uncovered = set()
    for chunk in results:
        for pair_id, score in chunk:
            if score is None:
                uncovered.add(pair_id)
            else:
                scores[pair_id] = score
    return ScoredCorpus(corpus, METHOD_MUSE, scores, frozenset(uncovered))


def score_pairs_precomputed(
    corpus: Corpus,
    source_embeddings: dict[int, np.ndarray],
    target_embeddings: dict[int, np.ndarray],
    method: str = METHOD_OTHER,
    strict: bool = True,
) -> ScoredCorpus:
    """Score pairs as the cosine of precomputed sentence vectors.

    In strict mode (default), pairs absent from either map raise
    MissingEmbeddings listing the absent ids; in permissive mode they are
    routed to `uncovered` instead.
    """
    source_dim = _map_dim(source_embeddings)
    target_dim = _map_dim(target_embeddings)
    if source_dim and target_dim and source_dim != target_dim:
        raise DimensionMismatch(
            f"source embeddings dim {source_dim} != target embeddings dim {target_dim}"
        )
    missing = sorted(
        p.pair_id
        for p in corpus.pairs
        if p.pair_id not in source_embeddings or p.pair_id not in target_embeddings
    )
    if missing and strict:
        shown = ", ".join(str(i) for i in missing[:20])
        suffix = "" if len(missing) <= 20 else f", ... ({len(missing)} total)"
        raise MissingEmbeddings(f"no embedding for pair_ids: {shown}{suffix}")

    scores: dict[int, float] = {}
    uncovered = set(missing)
    for p in corpus.pairs:
        if p.pair_id in uncovered:
            continue
        scores[p.pair_id] = cosine_similarity(
            source_embeddings[p.pair_id], target_embeddings[p.pair_id]
        )
    return ScoredCorpus(corpus, method, scores, frozenset(uncovered))


def _map_dim(embeddings: dict[int, np.ndarray]) -> int | None:
    for vec in embeddings.values():
        return int(np.asarray(vec).shape[0])
    return None


def retain_top_fraction(scored: ScoredCorpus, spec: RetentionSpec) -> Corpus:
    """Keep the round_half_up(fraction * N) best-scoring pairs.

    Ranking order: score descending, ties broken by ascending pair_id;
    uncovered pairs rank below every scored pair. The output preserves the
    original corpus order, not score order.
    """
    pairs = scored.corpus.pairs
    n = len(pairs)
    if n == 0:
        return Corpus((), scored.corpus.provenance)
    k = min(round_half_up(spec.fraction * n), n)
    ids = np.fromiter((p.pair_id for p in pairs), dtype=np.uint64, count=n)
    values = np.fromiter(
        (scored.scores.get(p.pair_id, -np.inf) for p in pairs), dtype=np.float64, count=n
    )
    ranking = np.lexsort((ids, -values))  # primary key: score desc; tie: id asc
    keep = np.sort(ranking[:k])
    return Corpus(tuple(pairs[int(i)] for i in keep), scored.corpus.provenance)


def random_subset(corpus: Corpus, fraction: float, seed: int) -> Corpus:
    """Seeded baseline: round_half_up(fraction * N) pairs drawn by shuffling
    positions with SplitMix64(seed); output keeps original corpus order."""
    RetentionSpec(fraction)  # same (0, 1] validation
    n = len(corpus.pairs)
    if n == 0:
        return Corpus((), corpus.provenance)
    k = min(round_half_up(fraction * n), n)
    positions = list(range(n))
    fisher_yates_shuffle(positions, SplitMix64(seed))
    chosen = sorted(positions[:k])
    return Corpus(tuple(corpus.pairs[i] for i in chosen), corpus.provenance)


def stratified_split(corpus: Corpus, spec: SplitSpec) -> tuple[Corpus, Corpus]:
    """Split into (train, valid) preserving per-origin proportions.

    Within each origin stratum, positions are shuffled with the stratum
    subseed `seed XOR fnv1a64(origin)` and the first
    round_half_up(train_fraction * stratum_size) go to train. Both outputs
    preserve original corpus order; together they partition the corpus.
    """
    strata: dict[str, list[int]] = {}
    for i, p in enumerate(corpus.pairs):
        strata.setdefault(p.origin, []).append(i)

    train_positions: list[int] = []
    valid_positions: list[int] = []
    for origin, positions in strata.items():
        shuffled = positions[:]
        fisher_yates_shuffle(shuffled, SplitMix64(spec.seed ^ fnv1a64(origin)))
        take = round_half_up(spec.train_fraction * len(positions))
        train_positions.extend(shuffled[:take])
        valid_positions.extend(shuffled[take:])

    train = Corpus(tuple(corpus.pairs[i] for i in sorted(train_positions)), corpus.provenance)
    valid = Corpus(tuple(corpus.pairs[i] for i in sorted(valid_positions)), corpus.provenance)
    return train, valid


def write_score_file(scored: ScoredCorpus, path: str | Path) -> None:
    """Write pair_id<TAB>score rows (6 decimal places), in corpus order."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for p in scored.corpus.pairs:
            if p.pair_id in scored.scores:
                fh.write(f"{p.pair_id}\t{scored.scores[p.pair_id]:.6f}\n")


def write_uncovered_file(scored: ScoredCorpus, path: str | Path) -> None:
    """Write the NO_COVERAGE pair_ids, one per line, ascending."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for pair_id in sorted(scored.uncovered):
            fh.write(f"{pair_id}\n")


def read_score_file(path: str | Path) -> dict[int, float]:
    """Read a pair_id<TAB>score file back into a map."""
    scores: dict[int, float] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\r\n")
            if not line:
                continue
            cols = line.split("\t")
            if len(cols) != 2:
                raise MalformedTsv(f"{path}: line {lineno}: expected 2 columns, found {len(cols)}")
            try:
                pair_id, score = int(cols[0]), float(cols[1])
            except ValueError as exc:
                raise MalformedTsv(f"{path}: line {lineno}: {exc}") from exc
            if pair_id in scores:
                raise MalformedTsv(f"{path}: line {lineno}: duplicate pair_id {pair_id}")
            scores[pair_id] = score
    return scores


def scored_from_file(corpus: Corpus, method: str, scores: dict[int, float]) -> ScoredCorpus:
    """Rebuild a ScoredCorpus from a score map; corpus pairs absent from the
    map count as uncovered (they were NO_COVERAGE when the file was written)."""
    ids = corpus.pair_ids()
    extra = scores.keys() - ids
    if extra:
        raise MalformedTsv(f"score file mentions {len(extra)} pair_ids absent from the corpus")
    uncovered = frozenset(ids - scores.keys())
    return ScoredCorpus(corpus, method, dict(scores), uncovered)
