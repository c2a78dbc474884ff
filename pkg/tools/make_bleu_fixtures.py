#!/usr/bin/env python3
"""Generate frozen BLEU/tokenizer fixtures from a reference scorer module.

Runs a battery of tokenization strings and small corpora through an
independent scorer implementation (loaded from --module) and freezes its
outputs into a JSON file that the test suite replays. The reference module
expects `portalocker` and `MeCab` to be importable, so minimal stand-ins are
installed before loading; neither is exercised by the 13a code paths we
record.

Usage:
    python tools/make_bleu_fixtures.py --module PATH [--out tests/data/bleu_fixtures.json]
"""

from __future__ import annotations

import argparse
import importlib.util
import json
import sys
import types
from pathlib import Path

TOKENIZE_CASES = [
    "Hello, world!",
    "",
    "   leading and trailing   ",
    "2,5 mg twice daily, or 0.5 mg.",
    "It's a test-case: 3.14, v2.0-beta!",
    "&quot;Quoted&quot; &amp; escaped &lt;entities&gt;",
    "A line with <skipped> inside",
    "tabs\tand  double  spaces",
    "(parens) [brackets] {braces} / slash @ at ~ tilde",
    "digit ranges 10-20 and 7-8, codes A-B",
    "ends with period.",
    "...leading dots and trailing...",
    "Zażółć gęślą jaźń! Ça va? Übergrößen",
    "El médico recetó 5 µg de insulina.",
    "numbers 1.234,56 then 1,234.56",
    "semi;colon and question? and exclaim!",
    "a-b-c--d",
    "don't can't won't",
]

CORPUS_CASES = [
    {
        "name": "perfect_match",
        "hypotheses": [
            "The cat sat quietly on the old mat.",
            "Doctors recommend taking 2,5 mg twice daily.",
            "A long sentence gives every n-gram order something to match.",
        ],
        "references": [
            "The cat sat quietly on the old mat.",
            "Doctors recommend taking 2,5 mg twice daily.",
            "A long sentence gives every n-gram order something to match.",
        ],
    },
    {
        "name": "total_mismatch",
        "hypotheses": ["aaa bbb ccc ddd eee", "fff ggg hhh iii"],
        "references": ["vvv www xxx yyy zzz", "ppp qqq rrr sss"],
    },
    {
        "name": "no_fourgram_overlap",
        "hypotheses": ["the quick brown dog jumps over a lazy fox today"],
        "references": ["the quick brown fox jumps over a lazy dog today"],
    },
    {
        "name": "brevity_penalty_active",
        "hypotheses": ["the cat sat on the mat", "short answer"],
        "references": [
            "the cat sat on the mat near the door of the barn",
            "this is a much longer reference with a short answer inside",
        ],
    },
    {
        "name": "hypothesis_longer_than_reference",
        "hypotheses": ["the small black cat sat down on the very old woven mat"],
        "references": ["the black cat sat on the old mat"],
    },
    {
        "name": "diacritics_and_punctuation",
        "hypotheses": [
            "Zażółć gęślą jaźń, proszę!",
            "El niño comió la manzana ayer por la tarde.",
        ],
        "references": [
            "Zażółć gęślą jaźń, proszę bardzo!",
            "El niño se comió la manzana ayer por la tarde.",
        ],
    },
    {
        "name": "empty_hypothesis_segment",
        "hypotheses": ["", "the cat sat on the mat"],
        "references": ["some reference text here", "the cat sat on the mat"],
    },
    {
        "name": "degenerate_two_tokens",
        "hypotheses": ["the cat"],
        "references": ["the cat"],
    },
    {
        "name": "mixed_quality",
        "hypotheses": [
            "the committee approved the proposal after a long debate .",
            "rainfall was heavy across the northern region yesterday",
            "prices rose sharply in the last quarter of the year",
            "she wrote letters to her friends every single week",
        ],
        "references": [
            "the committee approved the proposal after a lengthy debate .",
            "heavy rainfall hit the northern region yesterday",
            "prices increased sharply in the final quarter of the year",
            "she wrote a letter to her friend every week",
        ],
    },
]


def install_stubs() -> None:
    portalocker = types.ModuleType("portalocker")
    portalocker.Lock = object  # only referenced by download paths we never run
    sys.modules.setdefault("portalocker", portalocker)

    mecab = types.ModuleType("MeCab")

    class Tagger:
        def __init__(self, *args):
            pass

        def parse(self, line):
            return line

        def dictionary_info(self):
            return types.SimpleNamespace(size=392126, next=None)

    mecab.Tagger = Tagger
    sys.modules.setdefault("MeCab", mecab)


def load_reference(path: Path):
    spec = importlib.util.spec_from_file_location("reference_scorer", path)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--module", required=True, help="path to the reference scorer source")
    parser.add_argument(
        "--out",
        default="tests/data/bleu_fixtures.json",
        help="fixture file to write",
    )
    args = parser.parse_args()

    install_stubs()
    ref = load_reference(Path(args.module))

    tokenize = ref.TOKENIZERS["13a"]
    tokenize_fixtures = [
        {"input": text, "tokens": tokenize(text).split()} for text in TOKENIZE_CASES
    ]

    corpus_fixtures = []
    for case in CORPUS_CASES:
        result = ref.corpus_bleu(case["hypotheses"], [case["references"]])
        corpus_fixtures.append(
            {
                "name": case["name"],
                "hypotheses": case["hypotheses"],
                "references": case["references"],
                "score": result.score,
                "counts": list(result.counts),
                "totals": list(result.totals),
                "precisions": list(result.precisions),
                "bp": result.bp,
                "sys_len": result.sys_len,
                "ref_len": result.ref_len,
            }
        )

    payload = {
        "tool": Path(args.module).name,
        "version": getattr(ref, "VERSION", "unknown"),
        "tokenize_13a": tokenize_fixtures,
        "corpus_bleu": corpus_fixtures,
    }
    out_path = Path(args.out)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    out_path.write_text(json.dumps(payload, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {out_path}: {len(tokenize_fixtures)} tokenize cases, "
          f"{len(corpus_fixtures)} corpus cases (reference version {payload['version']})")


if __name__ == "__main__":
    main()
