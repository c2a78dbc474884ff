"""
Judging translations: corpus BLEU and score correlation
=======================================================

BLEU compares machine translations against references with clipped n-gram
precisions (orders 1-4) and a brevity penalty, on a 0-100 scale. The report
line format matches the standard reference tool, so numbers are comparable
across papers. Pearson correlation then quantifies how similarly two scoring
methods rank the same pairs.
"""

from bitextkit import corpus_bleu, pearson
from bitextkit.metrics import tokenize_13a

# ---------------------------------------------------------------------------
# Tokenization first: BLEU is only comparable when everyone splits text the
# same way. The 13a scheme separates punctuation but keeps decimal commas.
# ---------------------------------------------------------------------------
for line in ("Hello, world!", "Take 2,5 mg twice daily.", "A well-known test-case."):
    print(f"{line!r:38s} -> {tokenize_13a(line)}")

# ---------------------------------------------------------------------------
# A tiny system output against references, from perfect to rough.
# ---------------------------------------------------------------------------
hypotheses = [
    "the committee approved the proposal after a long debate",
    "heavy rain fell across the northern region yesterday",
    "prices rose sharply in the last quarter",
]
references = [
    "the committee approved the proposal after a long debate",
    "heavy rainfall hit the northern region yesterday",
    "prices increased sharply in the final quarter of the year",
]
result = corpus_bleu(hypotheses, references)
print("\n" + result.format())
print(f"  4-gram precision alone: {100 * result.precisions[3]:.1f}")

# Shorten the hypotheses and the brevity penalty bites: every n-gram still
# matches (all precisions 100), yet the score drops to the penalty itself.
short = corpus_bleu(
    ["the committee approved the proposal"],
    ["the committee approved the proposal after a long debate"],
)
print("\ntruncated hypothesis:")
print(short.format())

# ---------------------------------------------------------------------------
# Two scoring methods over the same pairs: if a cheap method correlates
# strongly with an expensive one, the cheap one can drive the filtering.
# ---------------------------------------------------------------------------
cheap = [0.91, 0.83, 0.42, 0.77, 0.15, 0.66, 0.95, 0.30]
pricey = [0.88, 0.80, 0.51, 0.70, 0.22, 0.61, 0.97, 0.28]
report = pearson(cheap, pricey, method_a="MUSE", method_b="LASER")
print(f"\npearson_r = {report.r:.4f} over n = {report.n} shared pairs "
      f"({report.method_a} vs {report.method_b})")
