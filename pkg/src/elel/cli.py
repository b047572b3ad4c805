"""Command-line front door for the staged lexicon pipeline.

Subcommands mirror the construction stages: ``extract`` proposes candidate
terms from a corpus, the human authors the lexicon file, ``lint`` checks
it, ``derive`` mechanizes the derivable steps, ``link`` shows the
circularity relation, ``transform``/``render`` produce the class model,
and ``pipeline`` runs everything end to end into an output directory.

Exit codes: 0 on success, 1 when validation errors block the requested
work, 2 on usage or I/O problems.  Machine artifacts go to stdout (or
``--out`` files); diagnostics go to stderr and never contaminate artifact
streams.  No command mutates its input file unless given ``derive
--write``.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace
from fractions import Fraction
from pathlib import Path

from . import derivation, dsl, emitters, extraction, uml, validation, wordlists
from .lexicon import Lexicon, Severity

_QUESTIONS = {
    "subject": (
        "An active entity with relevant roles: a person, a software component,"
        " or another system it interacts with.",
        "notion: Who is the subject? What are its characteristics?"
        " Which objects does it manipulate?",
        "behavior: What are the functions the subject performs?",
    ),
    "object": (
        "A passive entity manipulated by a subject.",
        "notion: What is the object? What are its characteristics?"
        " Which other objects is it related to?",
        "behavior: Which actions are applied to the object?",
    ),
    "verb": (
        "A functionality performed by subjects, with its impact on the environment.",
        "notion: Who intervenes when it happens? Which object is manipulated?"
        " What purpose is achieved?",
        "behavior: What is the environmental impact, the resulting state,"
        " and the conditions of satisfaction?",
    ),
    "state": (
        "A configuration of attribute values at some point of the system's life.",
        "notion: What does it represent? Which actions lead to it?",
        "behavior: Which other states can be reached from it?",
    ),
}


class _CliError(Exception):
    def __init__(self, message: str, code: int = 2) -> None:
        super().__init__(message)
        self.code = code


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _CliError(f"cannot read {path}: {exc}") from exc


def _report_diagnostics(diags: list[dsl.ParseDiagnostic], path: str) -> bool:
    """Print diagnostics to stderr; True when any is an error."""
    failed = False
    for d in diags:
        print(f"{path}:{d.line}: {d.severity.value}: {d.message}", file=sys.stderr)
        failed = failed or d.severity is Severity.ERROR
    return failed


def _load_lexicon(path: str) -> Lexicon:
    lexicon, diags = dsl.parse_lexicon(_read_text(path))
    if _report_diagnostics(diags, path):
        raise _CliError(f"{path}: parse errors", code=2)
    return lexicon


def _stopwords(args) -> frozenset[str]:
    path = getattr(args, "stopwords", None) or os.environ.get("ELEL_STOPWORDS")
    if path:
        try:
            return wordlists.load_wordlist(path)
        except OSError as exc:
            raise _CliError(f"cannot read stopword file {path}: {exc}") from exc
    return wordlists.stopwords()


def _atomic_write(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


def cmd_extract(args) -> int:
    try:
        config = extraction.ExtractionConfig(
            min_frequency=args.min_freq,
            max_ngram=args.max_ngram,
            stopwords=_stopwords(args),
        )
    except ValueError as exc:
        raise _CliError(str(exc)) from exc
    docs = [dsl.parse_corpus(_read_text(p), label=p) for p in args.corpus]
    candidates = extraction.extract_candidates(docs, config)
    if args.suggest_types:
        candidates = [
            replace(c, suggested_type=extraction.suggest_type(c, docs))
            for c in candidates
        ]
    print("phrase\tfrequency\tscore\tsuggested_type")
    for c in candidates:
        suggested = c.suggested_type.value if c.suggested_type else ""
        print(f"{c.phrase}\t{c.frequency}\t{c.score}\t{suggested}")
    return 0


def cmd_lint(args) -> int:
    lexicon = _load_lexicon(args.lexicon)
    threshold = Fraction(str(args.closure_threshold))
    closure, findings = validation.lint(lexicon, closure_threshold=threshold)
    if args.format == "json":
        sys.stdout.write(validation.report_as_json(closure, findings))
    else:
        sys.stdout.write(validation.report_as_table(closure, findings))
    return 1 if validation.has_errors(findings) else 0


def cmd_derive(args) -> int:
    lexicon = _load_lexicon(args.lexicon)
    derived, traces = derivation.derive_lexicon(lexicon)
    text = dsl.serialize_lexicon(derived)
    if args.trace:
        _atomic_write(Path(args.trace), derivation.render_trace_file(traces))
    if args.write:
        _atomic_write(Path(args.lexicon), text)
    elif args.out:
        _atomic_write(Path(args.out), text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_link(args) -> int:
    lexicon = _load_lexicon(args.lexicon)
    derived, _ = derivation.derive_lexicon(lexicon)
    for link in derived.links:
        print(
            f'link "{link.name}": '
            f'source="{link.source}"[{link.elements[0].occurrence.render()}] '
            f'target="{link.target}"[{link.elements[1].occurrence.render()}]'
        )
    return 0


def _build_model(path: str):
    lexicon = _load_lexicon(path)
    derived, traces = derivation.derive_lexicon(lexicon)
    try:
        model = uml.transform(derived)
    except uml.LintGateError as exc:
        for finding in exc.findings:
            if finding.severity is Severity.ERROR:
                print(
                    f"{finding.rule_id} {finding.symbol}: {finding.message}",
                    file=sys.stderr,
                )
        raise _CliError("lint errors block the transformation", code=1) from exc
    return derived, traces, model


def cmd_transform(args) -> int:
    _, _, model = _build_model(args.lexicon)
    text = emitters.emit_model_json(model)
    if args.out:
        _atomic_write(Path(args.out), text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_render(args) -> int:
    derived, _, model = _build_model(args.lexicon)
    options = emitters.EmitOptions(
        include_accessors=not args.no_accessors, sort_members=args.sort_members
    )
    if args.format == "json":
        sys.stdout.write(emitters.emit_model_json(model))
    elif args.format == "dot":
        sys.stdout.write(emitters.emit_circularity_dot(derived))
    else:
        sys.stdout.write(emitters.emit_plantuml(model, options))
    return 0


def cmd_pipeline(args) -> int:
    derived, traces, model = _build_model(args.lexicon)
    out_dir = Path(args.out)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise _CliError(f"cannot create {out_dir}: {exc}") from exc

    artifacts = {
        "model.json": emitters.emit_model_json(model),
        "model.puml": emitters.emit_plantuml(model),
        "circularity.dot": emitters.emit_circularity_dot(derived),
        "trace.txt": derivation.render_trace_file(traces),
    }
    written: list[Path] = []
    try:
        for name, text in artifacts.items():
            path = out_dir / name
            _atomic_write(path, text)
            written.append(path)
    except OSError as exc:
        for path in written:
            path.unlink(missing_ok=True)
        raise _CliError(f"cannot write outputs: {exc}") from exc
    for path in written:
        print(f"wrote {path}", file=sys.stderr)
    return 0


def cmd_questions(args) -> int:
    description, notion, behavior = _QUESTIONS[args.type]
    print(f"{args.type}: {description}")
    print(f"  {notion}")
    print(f"  {behavior}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="elel",
        description="Lexicon pipeline: extract, lint, derive, link, transform, render.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="propose candidate terms from corpus files")
    p.add_argument("corpus", nargs="+", help="one or more .uofd.txt corpus files")
    p.add_argument("--min-freq", type=int, default=2)
    p.add_argument("--max-ngram", type=int, default=3)
    p.add_argument("--stopwords", help="stopword file (default: built-in list)")
    p.add_argument("--suggest-types", action="store_true")
    p.set_defaults(handler=cmd_extract)

    p = sub.add_parser("lint", help="check a lexicon file")
    p.add_argument("lexicon")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--closure-threshold", type=float, default=0.15)
    p.set_defaults(handler=cmd_lint)

    p = sub.add_parser("derive", help="mechanize the derivable construction steps")
    p.add_argument("lexicon")
    destination = p.add_mutually_exclusive_group()
    destination.add_argument("--out", help="write the enriched lexicon here instead of stdout")
    destination.add_argument("--write", action="store_true", help="overwrite the input file")
    p.add_argument("--trace", help="write the derivation trace to this file")
    p.set_defaults(handler=cmd_derive)

    p = sub.add_parser("link", help="print the circularity links")
    p.add_argument("lexicon")
    p.set_defaults(handler=cmd_link)

    p = sub.add_parser("transform", help="emit the class model as canonical JSON")
    p.add_argument("lexicon")
    p.add_argument("--out")
    p.set_defaults(handler=cmd_transform)

    p = sub.add_parser("render", help="render the model or graph in a chosen notation")
    p.add_argument("lexicon")
    p.add_argument("--format", choices=("puml", "dot", "json"), default="puml")
    p.add_argument("--no-accessors", action="store_true")
    p.add_argument("--sort-members", action="store_true")
    p.set_defaults(handler=cmd_render)

    p = sub.add_parser("pipeline", help="derive, link, transform and write all artifacts")
    p.add_argument("lexicon")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(handler=cmd_pipeline)

    p = sub.add_parser("questions", help="print the authoring questions for a type")
    p.add_argument("type", choices=sorted(_QUESTIONS))
    p.set_defaults(handler=cmd_questions)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except _CliError as exc:
        print(f"elel: {exc}", file=sys.stderr)
        return exc.code
    except extraction.EmptyCorpusError as exc:
        print(f"elel: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
