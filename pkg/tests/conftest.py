"""Shared fixtures and the acceptance-summary hook.

Tests in test_acceptance.py get one PASS/FAIL/SKIP line each in the terminal
summary so the gate can be read at a glance.
"""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from bitextkit import Corpus, SentencePair

DATA_DIR = Path(__file__).parent / "data"

_acceptance_results: list[tuple[str, str]] = []


def make_corpus(rows, provenance="test", start_id=0):
    """Build a Corpus from (source, target, origin) rows with sequential ids."""
    pairs = tuple(
        SentencePair(start_id + i, src, tgt, origin)
        for i, (src, tgt, origin) in enumerate(rows)
    )
    return Corpus(pairs, provenance=provenance)


@pytest.fixture(scope="session")
def bleu_fixtures():
    """Frozen tokenizer/BLEU outputs recorded from an independent scorer."""
    with open(DATA_DIR / "bleu_fixtures.json", encoding="utf-8") as fh:
        return json.load(fh)


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        _acceptance_results.append((name, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance_results:
        label = {"passed": "PASS", "skipped": "SKIP"}.get(outcome, "FAIL")
        terminalreporter.write_line(f"{label}  {name}")
