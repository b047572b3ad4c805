#!/usr/bin/env python3
"""Run the bundled birth-certificate case study end to end.

Extracts candidate terms from the corpus, derives and transforms the
lexicon, writes all artifacts to out/case_study/, and prints a summary.
"""

from __future__ import annotations

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from elel import derivation, dsl, extraction, uml  # noqa: E402
from elel.cli import main as cli_main  # noqa: E402


def run() -> int:
    corpus_path = ROOT / "fixtures" / "example1.uofd.txt"
    lexicon_path = ROOT / "fixtures" / "birth_certificate.elel"
    out_dir = ROOT / "out" / "case_study"

    corpus = dsl.parse_corpus(corpus_path.read_text(encoding="utf-8"), label=corpus_path.name)
    print(f"corpus: {len(corpus.sentences)} sentences")
    candidates = extraction.extract_candidates([corpus])
    print("top candidate terms:")
    for candidate in candidates[:8]:
        suggested = extraction.suggest_type(candidate, [corpus])
        label = suggested.value if suggested else "?"
        print(f"  {candidate.score:>3}  {candidate.phrase}  [{label}]")

    lexicon, diagnostics = dsl.parse_lexicon(lexicon_path.read_text(encoding="utf-8"))
    if diagnostics:
        for d in diagnostics:
            print(f"  {lexicon_path.name}:{d.line}: {d.severity.value}: {d.message}")
        return 2
    derived, traces = derivation.derive_lexicon(lexicon)
    model = uml.transform(derived)
    print(f"lexicon: {len(lexicon.symbols)} symbols, {len(traces)} derivation traces")
    print(f"model: {len(model.classes)} classes, {len(model.associations)} associations")

    code = cli_main(["pipeline", str(lexicon_path), "--out", str(out_dir)])
    if code == 0:
        print(f"artifacts in {out_dir}")
    return code


if __name__ == "__main__":
    sys.exit(run())
