"""
Cleaning a noisy bilingual corpus
=================================

A walk through the preprocessing cascade: exact deduplication, untranslated
detection, length bounds, and the Latin-script charset rule. Run it directly;
it builds its corpus inline and prints what each stage removes.
"""

import tempfile
from pathlib import Path

from bitextkit import preprocess, write_stats_report, write_tsv
from bitextkit.corpus import Corpus, SentencePair

# A small Spanish-English corpus with one problem of each kind planted in it.
# Origins mimic a mixed-source collection (medical agency text, subtitles...).
rows = [
    ("El paciente debe tomar la dosis completa.",
     "The patient must take the full dose.", "EMEA"),
    ("Los resultados estarán disponibles mañana.",
     "The results will be available tomorrow.", "ECDC"),
    # exact duplicate of the first pair -- only the first copy survives
    ("El paciente debe tomar la dosis completa.",
     "The patient must take the full dose.", "EMEA"),
    # "translation" that is just the source copied over
    ("Consulte a su médico antes de continuar.",
     "Consulte a su médico antes de continuar.", "EMEA"),
    # too short on the source side
    ("Sí.", "Yes, that is completely correct.", "SUBTITLES"),
    # Cyrillic text in a supposedly Spanish sentence
    ("El tren sale de Москва a las ocho.",
     "The train leaves Moscow at eight.", "SUBTITLES"),
    ("La reunión empieza a las nueve en punto.",
     "The meeting starts at nine o'clock sharp.", "ECDC"),
    # micro sign is fine: it appears constantly in dosage text
    ("Administrar 50 µg por kilogramo de peso.",
     "Administer 50 µg per kilogram of weight.", "EMEA"),
]
corpus = Corpus(
    tuple(SentencePair(i, s, t, o) for i, (s, t, o) in enumerate(rows)),
    provenance="demo-inline",
)
print(f"raw corpus: {len(corpus)} pairs")

# Run the cascade. Rules apply in a fixed order, so a pair that is both a
# duplicate and untranslated is charged to dedup, the earlier stage.
cleaned, stats = preprocess(corpus, min_chars=15, max_chars=200)

print(f"\nsurvivors: {len(cleaned)} pairs")
for rule, count in stats.removed_by_rule.items():
    print(f"  removed by {rule:<12s} {count}")

print("\nwhat survived:")
for pair in cleaned.pairs:
    print(f"  [{pair.origin}] {pair.source_text}  ->  {pair.target_text}")

# The stats report and the cleaned corpus both write as plain text, so the
# next pipeline stage (scoring) can pick the TSV up unchanged.
out_dir = Path(tempfile.mkdtemp(prefix="cleaning_demo_"))
write_tsv(cleaned, out_dir / "preprocessed.tsv")
write_stats_report(stats, out_dir / "stats.txt")
print(f"\nwrote {out_dir / 'preprocessed.tsv'}")
print(f"wrote {out_dir / 'stats.txt'}:")
print((out_dir / "stats.txt").read_text(encoding="utf-8"))
