"""Translation-quality and score-comparison metrics.

corpus_bleu reproduces the reference BLEU tool's defaults exactly: 13a
tokenization, case-sensitive BLEU-4 with clipped modified n-gram precisions,
exponential smoothing of zero match counts, and the exponential brevity
penalty. Scores are on the 0..100 scale. pearson and score_histogram compare
score series across filtering methods.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConstantSeries, EmptyCorpus, LengthMismatch
from .selection import ScoredCorpus

MAX_NGRAM_ORDER = 4

# 13a rules: pad the ASCII punctuation ranges, then period/comma unless
# attached to a digit, then a dash preceded by a digit.
_PUNCT_RE = re.compile(r"([\{-\~\[-\` -\&\(-\+\:-\@\/])")
_NONDIGIT_PERIOD_COMMA_RE = re.compile(r"([^0-9])([\.,])")
_PERIOD_COMMA_NONDIGIT_RE = re.compile(r"([\.,])([^0-9])")
_DIGIT_DASH_RE = re.compile(r"([0-9])(-)")


def tokenize_13a(line: str) -> list[str]:
    """Tokenize one segment with the reference tool's default 13a scheme."""
    norm = line
    norm = norm.replace("<skipped>", "")
    norm = norm.replace("-\n", "")
    norm = norm.replace("\n", " ")
    if "&" in norm:
        norm = norm.replace("&quot;", '"')
        norm = norm.replace("&amp;", "&")
        norm = norm.replace("&lt;", "<")
        norm = norm.replace("&gt;", ">")
    norm = f" {norm} "
    norm = _PUNCT_RE.sub(r" \1 ", norm)
    norm = _NONDIGIT_PERIOD_COMMA_RE.sub(r"\1 \2 ", norm)
    norm = _PERIOD_COMMA_NONDIGIT_RE.sub(r" \1 \2", norm)
    norm = _DIGIT_DASH_RE.sub(r"\1 \2 ", norm)
    return norm.split()


@dataclass(frozen=True)
class BleuResult:
    """Corpus BLEU with its sufficient statistics.

    `precisions` are the four smoothed modified n-gram precision ratios in
    [0, 1]; `score` is on the 0..100 scale.
    """

    score: float
    precisions: tuple[float, float, float, float]
    brevity_penalty: float
    hyp_len: int
    ref_len: int

    def format(self) -> str:
        shown = "/".join(f"{100.0 * p:.1f}" for p in self.precisions)
        return (
            f"BLEU = {self.score:.3f} {shown} "
            f"(BP = {self.brevity_penalty:.3f}, "
            f"hyp_len = {self.hyp_len}, ref_len = {self.ref_len})"
        )


def _ngram_counts(tokens: list[str]) -> dict[tuple[str, ...], int]:
    counts: dict[tuple[str, ...], int] = {}
    for n in range(1, MAX_NGRAM_ORDER + 1):
        for i in range(len(tokens) - n + 1):
            gram = tuple(tokens[i : i + n])
            counts[gram] = counts.get(gram, 0) + 1
    return counts


def segment_stats(hypothesis: str, reference: str) -> tuple[list[int], list[int], int, int]:
    """Clipped/total n-gram counts plus token lengths for one segment pair."""
    hyp_tokens = tokenize_13a(hypothesis.rstrip())
    ref_tokens = tokenize_13a(reference.rstrip())
    hyp_grams = _ngram_counts(hyp_tokens)
    ref_grams = _ngram_counts(ref_tokens)
    correct = [0] * MAX_NGRAM_ORDER
    total = [0] * MAX_NGRAM_ORDER
    for gram, count in hyp_grams.items():
        n = len(gram)
        total[n - 1] += count
        correct[n - 1] += min(count, ref_grams.get(gram, 0))
    return correct, total, len(hyp_tokens), len(ref_tokens)


def bleu_from_stats(
    correct: Sequence[int], total: Sequence[int], hyp_len: int, ref_len: int
) -> BleuResult:
    """Score from summed statistics; corpus_bleu is exactly this over the
    per-segment sums, so parallel accumulation cannot change the result.

    Zero match counts at order n are smoothed exponentially to
    1 / (2^k * total_n) with k counting the zero orders so far. The
    geometric mean is computed as a product under a fourth root, which is
    exact (100.0) for a perfect corpus.
    """
    precisions = [0.0] * MAX_NGRAM_ORDER
    smooth = 1.0
    for n in range(1, MAX_NGRAM_ORDER + 1):
        if total[n - 1] == 0:
            break
        if correct[n - 1] == 0:
            smooth *= 2.0
            precisions[n - 1] = 1.0 / (smooth * total[n - 1])
        else:
            precisions[n - 1] = correct[n - 1] / total[n - 1]

    if hyp_len < ref_len:
        brevity_penalty = math.exp(1.0 - ref_len / hyp_len) if hyp_len > 0 else 0.0
    else:
        brevity_penalty = 1.0

    geo_mean = (precisions[0] * precisions[1] * precisions[2] * precisions[3]) ** (
        1.0 / MAX_NGRAM_ORDER
    )
    score = 100.0 * brevity_penalty * geo_mean
    return BleuResult(
        score=score,
        precisions=(precisions[0], precisions[1], precisions[2], precisions[3]),
        brevity_penalty=brevity_penalty,
        hyp_len=hyp_len,
        ref_len=ref_len,
    )


def corpus_bleu(hypotheses: Sequence[str], references: Sequence[str]) -> BleuResult:
    """Corpus-level BLEU-4 over 13a tokens, single reference per segment.

    Raises LengthMismatch for unequal sequence lengths and EmptyCorpus for
    zero segments.
    """
    if len(hypotheses) != len(references):
        raise LengthMismatch(
            f"{len(hypotheses)} hypotheses vs {len(references)} references"
        )
    if not hypotheses:
        raise EmptyCorpus("corpus BLEU needs at least one segment")
    correct = [0] * MAX_NGRAM_ORDER
    total = [0] * MAX_NGRAM_ORDER
    hyp_len = 0
    ref_len = 0
    for hyp, ref in zip(hypotheses, references):
        seg_correct, seg_total, seg_hyp_len, seg_ref_len = segment_stats(hyp, ref)
        for i in range(MAX_NGRAM_ORDER):
            correct[i] += seg_correct[i]
            total[i] += seg_total[i]
        hyp_len += seg_hyp_len
        ref_len += seg_ref_len
    return bleu_from_stats(correct, total, hyp_len, ref_len)


@dataclass(frozen=True)
class CorrelationReport:
    r: float
    n: int
    method_a: str = ""
    method_b: str = ""


def pearson(
    xs: Sequence[float], ys: Sequence[float], method_a: str = "", method_b: str = ""
) -> CorrelationReport:
    """Sample Pearson correlation coefficient, mean-centered in float64.

    Raises LengthMismatch for unequal or too-short (< 2) series and
    ConstantSeries when either side has zero variance.
    """
    n = len(xs)
    if len(ys) != n:
        raise LengthMismatch(f"series lengths differ: {n} vs {len(ys)}")
    if n < 2:
        raise LengthMismatch(f"need at least 2 samples, got {n}")
    mean_x = math.fsum(xs) / n
    mean_y = math.fsum(ys) / n
    sxy = math.fsum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    sxx = math.fsum((x - mean_x) ** 2 for x in xs)
    syy = math.fsum((y - mean_y) ** 2 for y in ys)
    if sxx == 0.0 or syy == 0.0:
        raise ConstantSeries("correlation is undefined for a constant series")
    r = sxy / (math.sqrt(sxx) * math.sqrt(syy))
    r = min(1.0, max(-1.0, r))
    return CorrelationReport(r=r, n=n, method_a=method_a, method_b=method_b)


def score_histogram(scored: ScoredCorpus, bins: int) -> tuple[np.ndarray, np.ndarray]:
    """Equal-width histogram of the scores over [-1, 1].

    Returns (edges, counts) with len(edges) == bins + 1; counts sum to the
    number of scored (covered) pairs.
    """
    if bins < 1:
        raise ValueError(f"bins must be >= 1, got {bins}")
    values = np.fromiter(scored.scores.values(), dtype=np.float64, count=len(scored.scores))
    counts, edges = np.histogram(values, bins=bins, range=(-1.0, 1.0))
    return edges, counts
