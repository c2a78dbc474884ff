"""Parallel-corpus filtering toolkit.

Clean bilingual corpora, score sentence pairs with cross-lingual embedding
cosine similarity, keep the best-scoring fraction, draw seeded random
baselines and stratified splits, and evaluate with corpus BLEU and Pearson
correlation.
"""

from .corpus import (
    Corpus,
    CorpusStats,
    SentencePair,
    dedup_exact,
    filter_by_length,
    filter_charset,
    filter_untranslated,
    ingest_parallel,
    merge,
    preprocess,
    read_tsv,
    write_stats_report,
    write_tsv,
)
from .embeddings import (
    WordEmbeddingTable,
    cosine_similarity,
    embed_sentence_mean,
    load_embedding_file,
    load_word_table,
    tokenize,
    write_embedding_file,
)
from .errors import BitextError, ConfigError
from .metrics import (
    BleuResult,
    CorrelationReport,
    corpus_bleu,
    pearson,
    score_histogram,
    tokenize_13a,
)
from .selection import (
    PairScore,
    RetentionSpec,
    ScoredCorpus,
    SplitMix64,
    SplitSpec,
    random_subset,
    retain_top_fraction,
    score_pairs_muse,
    score_pairs_precomputed,
    stratified_split,
)

__version__ = "0.1.0"

__all__ = [
    "BitextError",
    "BleuResult",
    "ConfigError",
    "CorrelationReport",
    "Corpus",
    "CorpusStats",
    "PairScore",
    "RetentionSpec",
    "ScoredCorpus",
    "SentencePair",
    "SplitMix64",
    "SplitSpec",
    "WordEmbeddingTable",
    "corpus_bleu",
    "cosine_similarity",
    "dedup_exact",
    "embed_sentence_mean",
    "filter_by_length",
    "filter_charset",
    "filter_untranslated",
    "ingest_parallel",
    "load_embedding_file",
    "load_word_table",
    "merge",
    "pearson",
    "preprocess",
    "random_subset",
    "read_tsv",
    "retain_top_fraction",
    "score_histogram",
    "score_pairs_muse",
    "score_pairs_precomputed",
    "stratified_split",
    "tokenize",
    "tokenize_13a",
    "write_embedding_file",
    "write_stats_report",
    "write_tsv",
    "__version__",
]
