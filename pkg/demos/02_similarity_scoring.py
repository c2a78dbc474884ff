"""
Scoring sentence pairs with cross-lingual word vectors
======================================================

Each sentence becomes the mean of its word vectors; a pair's quality score is
the cosine similarity between its two sentence vectors. With word tables
aligned across languages (translations share a vector), good translations
score near 1 and mismatched pairs fall away.
"""

import numpy as np

from bitextkit import retain_top_fraction, score_pairs_muse
from bitextkit.corpus import Corpus, SentencePair
from bitextkit.embeddings import WordEmbeddingTable
from bitextkit.metrics import score_histogram
from bitextkit.selection import RetentionSpec

# ---------------------------------------------------------------------------
# Build aligned toy tables. Real runs load fastText-style text files with
# load_word_table(); here we construct the tables directly so the demo is
# self-contained. Every Spanish word shares its English gloss's vector, plus
# a couple of decoys that share nothing.
# ---------------------------------------------------------------------------
gloss = {
    "el": "the", "gato": "cat", "duerme": "sleeps", "en": "on",
    "la": "rug", "alfombra": "carpet", "perro": "dog", "corre": "runs",
    "niño": "child", "come": "eats", "manzana": "apple", "roja": "red",
}
rng = np.random.default_rng(7)
dim = 16
es_words, en_words, vectors = [], [], []
for es_word, en_word in gloss.items():
    es_words.append(es_word)
    en_words.append(en_word)
    vectors.append(rng.normal(size=dim))
vectors = np.asarray(vectors, dtype=np.float32)

es_table = WordEmbeddingTable("es", dim, vectors,
                              {w: i for i, w in enumerate(es_words)}, 0)
en_table = WordEmbeddingTable("en", dim, vectors,
                              {w: i for i, w in enumerate(en_words)}, 0)

# ---------------------------------------------------------------------------
# A corpus that mixes faithful translations, a half-right pair, a scrambled
# pair, and one sentence the tables cannot cover at all.
# ---------------------------------------------------------------------------
rows = [
    ("el gato duerme en la alfombra", "the cat sleeps on rug carpet"),   # faithful
    ("el perro corre", "the dog runs"),                                  # faithful
    ("el niño come la manzana roja", "the child eats rug apple"),        # partly wrong
    ("el gato duerme", "red apple runs"),                                # scrambled
    ("palabras desconocidas aquí", "completely unknown words here"),     # no coverage
]
corpus = Corpus(
    tuple(SentencePair(i, s, t, "OTHER") for i, (s, t) in enumerate(rows)),
    provenance="scoring-demo",
)

scored = score_pairs_muse(corpus, es_table, en_table)
print("pair scores (method {}):".format(scored.method))
for entry in scored.iter_scores():
    src = corpus.pairs[entry.pair_id].source_text
    print(f"  {entry.pair_id}: {entry.score:+.4f}  {src!r}")
print(f"uncovered (no vector on one side): {sorted(scored.uncovered)}")

# ---------------------------------------------------------------------------
# Keep the best 60%, then the best 20%. The smaller retention is always a
# subset of the larger one: both are prefixes of the same ranking.
# ---------------------------------------------------------------------------
for fraction in (0.6, 0.2):
    kept = retain_top_fraction(scored, RetentionSpec(fraction))
    ids = [p.pair_id for p in kept.pairs]
    print(f"retain {int(fraction * 100):>2d}% -> pairs {ids}")

# A coarse histogram of where the covered pairs landed on the [-1, 1] scale.
edges, counts = score_histogram(scored, bins=4)
print("\nscore histogram:")
for i, count in enumerate(counts):
    closer = "]" if i == len(counts) - 1 else ")"  # last bin includes +1.0
    print(f"  [{edges[i]:+.1f}, {edges[i + 1]:+.1f}{closer} {'#' * int(count)}{count}")
