"""Bilingual corpus ingestion, the cleaning cascade, and corpus statistics.

The cascade removes, in order: exact duplicates, untranslated pairs, pairs
outside character-length bounds, and pairs containing letters from non-Latin
scripts. Filters are pure functions over an immutable Corpus: they only ever
drop pairs, never touch a survivor's text or pair_id, and keep relative order.
"""

from __future__ import annotations

import logging
import re
import unicodedata
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from .errors import InvalidEncoding, LineCountMismatch, MalformedTsv

logger = logging.getLogger(__name__)

# Origin tags for the usual medical-bitext sources; origins are open-ended
# strings, these are just the conventional values.
ORIGIN_ECDC = "ECDC"
ORIGIN_EMEA = "EMEA"
ORIGIN_SUBTITLES = "SUBTITLES"
ORIGIN_OTHER = "OTHER"

MIN_CHARS_DEFAULT = 15
MAX_CHARS_DEFAULT = 200

# Rule names used in CorpusStats.removed_by_rule, in cascade order.
RULE_DEDUP = "dedup"
RULE_UNTRANSLATED = "untranslated"
RULE_LENGTH = "length"
RULE_CHARSET = "charset"

_WS_RUN_RE = re.compile(r"\s+")

# Letters whose Unicode names do not start with LATIN but whose script is
# Common (or Latin): they must never count as foreign. ª µ º.
_NEUTRAL_LETTERS = frozenset("ªµº")


@dataclass(frozen=True, slots=True)
class SentencePair:
    """One aligned sentence pair. pair_id is stable through all filtering."""

    pair_id: int
    source_text: str
    target_text: str
    origin: str = ORIGIN_OTHER


@dataclass(frozen=True)
class Corpus:
    """An ordered, immutable sequence of sentence pairs with unique ids."""

    pairs: tuple[SentencePair, ...]
    provenance: str = ""

    def __post_init__(self):
        ids = {p.pair_id for p in self.pairs}
        if len(ids) != len(self.pairs):
            raise ValueError("corpus contains duplicate pair_ids")

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def pair_ids(self) -> set[int]:
        return {p.pair_id for p in self.pairs}


@dataclass(frozen=True)
class SideLengths:
    """Character-length summary (Unicode scalar values) for one side."""

    min: int = 0
    mean: float = 0.0
    max: int = 0


@dataclass(frozen=True)
class CorpusStats:
    total_pairs: int
    per_origin_counts: dict[str, int]
    removed_by_rule: dict[str, int] = field(default_factory=dict)
    source_lengths: SideLengths = SideLengths()
    target_lengths: SideLengths = SideLengths()


def _decode_lines(path: str | Path) -> list[str]:
    """Read a text file as a list of lines, reporting the line number of any
    byte sequence that is not valid UTF-8. Line terminators are not included;
    CRLF is tolerated. A leading BOM is dropped."""
    lines = []
    with open(path, "rb") as fh:
        for lineno, raw in enumerate(fh, start=1):
            try:
                text = raw.decode("utf-8")
            except UnicodeDecodeError as exc:
                raise InvalidEncoding(
                    f"{path}: line {lineno}: invalid UTF-8 ({exc.reason})"
                ) from exc
            lines.append(text.rstrip("\r\n"))
    if lines and lines[0].startswith("﻿"):
        lines[0] = lines[0][1:]
    return lines


def _clean_field(text: str) -> str:
    # Embedded tabs would corrupt the TSV interchange format.
    return text.replace("\t", " ").strip()


def ingest_parallel(
    source_path: str | Path,
    target_path: str | Path,
    origin: str = ORIGIN_OTHER,
    start_id: int = 0,
) -> Corpus:
    """Ingest a pair of aligned one-sentence-per-line files.

    Returns a Corpus with one pair per aligned line, pair_ids assigned
    sequentially from `start_id`. Fields are whitespace-trimmed; lines that
    are empty on either side after trimming are dropped (ids stay gapless).

    Raises LineCountMismatch if the files disagree in line count and
    InvalidEncoding (with a line number) on bytes that are not valid UTF-8.
    """
    src_lines = _decode_lines(source_path)
    tgt_lines = _decode_lines(target_path)
    if len(src_lines) != len(tgt_lines):
        raise LineCountMismatch(
            f"{source_path} has {len(src_lines)} lines but "
            f"{target_path} has {len(tgt_lines)}: misaligned bitext"
        )
    pairs = []
    next_id = start_id
    for src, tgt in zip(src_lines, tgt_lines):
        src = _clean_field(src)
        tgt = _clean_field(tgt)
        if not src or not tgt:
            continue
        pairs.append(SentencePair(next_id, src, tgt, origin))
        next_id += 1
    return Corpus(tuple(pairs), provenance=f"{source_path} || {target_path} [{origin}]")


def merge(corpora: list[Corpus]) -> Corpus:
    """Concatenate corpora, keeping the pairs' existing ids (must be unique)."""
    pairs: list[SentencePair] = []
    for c in corpora:
        pairs.extend(c.pairs)
    provenance = " + ".join(c.provenance for c in corpora if c.provenance)
    return Corpus(tuple(pairs), provenance=provenance)


def read_tsv(path: str | Path) -> Corpus:
    """Read a 3-column source<TAB>target<TAB>origin file.

    pair_ids are the 0-based row indexes of the kept rows. Fully empty lines
    are skipped; rows with a column count other than 3 raise MalformedTsv.
    Rows empty on either text side after trimming are dropped, matching
    ingest_parallel.
    """
    pairs = []
    next_id = 0
    for lineno, line in enumerate(_decode_lines(path), start=1):
        if not line.strip():
            continue
        cols = line.split("\t")
        if len(cols) != 3:
            raise MalformedTsv(f"{path}: line {lineno}: expected 3 columns, found {len(cols)}")
        src, tgt, origin = (c.strip() for c in cols)
        if not src or not tgt:
            continue
        pairs.append(SentencePair(next_id, src, tgt, origin or ORIGIN_OTHER))
        next_id += 1
    return Corpus(tuple(pairs), provenance=str(path))


def write_tsv(corpus: Corpus, path: str | Path) -> None:
    """Write the corpus in the 3-column TSV interchange format (LF, UTF-8)."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for p in corpus.pairs:
            fh.write(
                f"{_clean_field(p.source_text)}\t{_clean_field(p.target_text)}\t{p.origin}\n"
            )


def _nfc(text: str) -> str:
    return unicodedata.normalize("NFC", text)


def dedup_exact(corpus: Corpus) -> Corpus:
    """Drop exact duplicates of the (source, target) tuple.

    Texts are compared after NFC normalization, case-sensitively. The
    representative with the minimal pair_id survives; order is preserved.
    """
    keys = [(_nfc(p.source_text), _nfc(p.target_text)) for p in corpus.pairs]
    best: dict[tuple[str, str], int] = {}
    for p, key in zip(corpus.pairs, keys):
        prev = best.get(key)
        if prev is None or p.pair_id < prev:
            best[key] = p.pair_id
    kept = tuple(p for p, key in zip(corpus.pairs, keys) if best[key] == p.pair_id)
    return Corpus(kept, corpus.provenance)


def _equality_normalize(text: str) -> str:
    # NFC + case fold + collapse whitespace runs + trim; used only for the
    # untranslated check, never to rewrite a survivor.
    return _WS_RUN_RE.sub(" ", _nfc(text).casefold()).strip()


def filter_untranslated(corpus: Corpus) -> Corpus:
    """Drop pairs whose two sides are equal after normalization
    (NFC, case fold, whitespace-run collapse, trim)."""
    kept = tuple(
        p
        for p in corpus.pairs
        if _equality_normalize(p.source_text) != _equality_normalize(p.target_text)
    )
    return Corpus(kept, corpus.provenance)


def filter_by_length(
    corpus: Corpus,
    min_chars: int = MIN_CHARS_DEFAULT,
    max_chars: int = MAX_CHARS_DEFAULT,
) -> Corpus:
    """Keep pairs where BOTH sides have min_chars <= length <= max_chars.

    Lengths count Unicode scalar values, not bytes; bounds are inclusive.
    """
    if min_chars > max_chars:
        raise ValueError(f"min_chars {min_chars} exceeds max_chars {max_chars}")
    kept = tuple(
        p
        for p in corpus.pairs
        if min_chars <= len(p.source_text) <= max_chars
        and min_chars <= len(p.target_text) <= max_chars
    )
    return Corpus(kept, corpus.provenance)


@lru_cache(maxsize=None)
def _is_foreign_letter(ch: str) -> bool:
    """True for letters (category L*) outside the Latin script.

    Script-neutral letters (ª µ º and the Spacing Modifier Letters block)
    never count as foreign; non-letters never count at all.
    """
    if not unicodedata.category(ch).startswith("L"):
        return False
    if ch in _NEUTRAL_LETTERS or 0x02B0 <= ord(ch) <= 0x02FF:
        return False
    return not unicodedata.name(ch, "").startswith("LATIN")


def _has_foreign_letter(text: str) -> bool:
    return any(_is_foreign_letter(ch) for ch in text)


def filter_charset(corpus: Corpus) -> Corpus:
    """Drop pairs where either side contains a non-Latin-script letter.

    Digits, punctuation, symbols and whitespace never trigger removal.
    """
    kept = tuple(
        p
        for p in corpus.pairs
        if not (_has_foreign_letter(p.source_text) or _has_foreign_letter(p.target_text))
    )
    return Corpus(kept, corpus.provenance)


def preprocess(
    corpus: Corpus,
    min_chars: int = MIN_CHARS_DEFAULT,
    max_chars: int = MAX_CHARS_DEFAULT,
) -> tuple[Corpus, CorpusStats]:
    """Run the full cleaning cascade: dedup -> untranslated -> length -> charset.

    Returns the surviving corpus and its stats, with removed_by_rule holding
    the per-stage removal counts.
    """
    removed: dict[str, int] = {}
    stage = corpus
    for rule, fn in (
        (RULE_DEDUP, dedup_exact),
        (RULE_UNTRANSLATED, filter_untranslated),
        (RULE_LENGTH, lambda c: filter_by_length(c, min_chars, max_chars)),
        (RULE_CHARSET, filter_charset),
    ):
        before = len(stage)
        stage = fn(stage)
        removed[rule] = before - len(stage)
        logger.info("preprocess: rule %-12s removed %d, %d remain", rule, removed[rule], len(stage))
    return stage, corpus_stats(stage, removed_by_rule=removed)


def _side_lengths(lengths: list[int]) -> SideLengths:
    if not lengths:
        return SideLengths()
    return SideLengths(min=min(lengths), mean=sum(lengths) / len(lengths), max=max(lengths))


def corpus_stats(corpus: Corpus, removed_by_rule: dict[str, int] | None = None) -> CorpusStats:
    """Counts per origin plus character-length summaries for both sides."""
    per_origin: dict[str, int] = {}
    for p in corpus.pairs:
        per_origin[p.origin] = per_origin.get(p.origin, 0) + 1
    return CorpusStats(
        total_pairs=len(corpus),
        per_origin_counts=per_origin,
        removed_by_rule=dict(removed_by_rule or {}),
        source_lengths=_side_lengths([len(p.source_text) for p in corpus.pairs]),
        target_lengths=_side_lengths([len(p.target_text) for p in corpus.pairs]),
    )


def write_stats_report(stats: CorpusStats, path: str | Path) -> None:
    """Write stats as a flat key: value text report."""
    lines = [f"total_pairs: {stats.total_pairs}"]
    for origin in sorted(stats.per_origin_counts):
        lines.append(f"origin.{origin}: {stats.per_origin_counts[origin]}")
    for rule in (RULE_DEDUP, RULE_UNTRANSLATED, RULE_LENGTH, RULE_CHARSET):
        if rule in stats.removed_by_rule:
            lines.append(f"removed.{rule}: {stats.removed_by_rule[rule]}")
    for rule in sorted(set(stats.removed_by_rule) - {RULE_DEDUP, RULE_UNTRANSLATED, RULE_LENGTH, RULE_CHARSET}):
        lines.append(f"removed.{rule}: {stats.removed_by_rule[rule]}")
    for side, summary in (("source", stats.source_lengths), ("target", stats.target_lengths)):
        lines.append(f"length.{side}.min: {summary.min}")
        lines.append(f"length.{side}.mean: {summary.mean:.3f}")
        lines.append(f"length.{side}.max: {summary.max}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
