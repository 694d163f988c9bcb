"""Command-line interface.

Each pipeline stage is also a standalone subcommand that reads the prior
stage's JSON, so any step can be rerun or inspected in isolation.  Exit
codes: 0 ok, 1 usage or configuration error, 2 stage failure, 3
consistency violations.  ``ONTOTERM_NO_COLOR`` disables ANSI colors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace
from pathlib import Path

from . import __version__
from .align import (
    DEFAULT_STOPWORDS,
    alignment_artifact,
    compare_structures,
    load_stopwords,
    ontology_alignments,
    taxonomy_alignments,
)
from .corpus import (
    DEFAULT_PATTERNS,
    Lexicon,
    annotate,
    candidates_from_json,
    candidates_to_json,
    extract_candidates,
    load_corpus,
    load_lexicon,
    load_patterns,
)
from .errors import ConfigError, InconsistentOntologyError, OntoTermError
from .export import DEFAULT_IRI, to_kif, to_owl
from .fixtures import data_path
from .lexnet import (
    apply_validation,
    build_network,
    copula_relations,
    lexnet_from_json,
    lexnet_to_json,
    load_decisions,
    same_head_hyponyms,
    terms_from_candidates,
)
from .okmodel import check_consistency, load_dsl
from .pipeline import (
    load_config,
    load_synonym_declarations,
    run_pipeline,
)
from .projection import project, taxonomy_from_json, taxonomy_to_dot, taxonomy_to_json
from .retrieval import (
    compare_recall,
    comparison_to_json,
    index_corpus,
    index_from_json_obj,
    index_to_json_obj,
    query,
    resolve_label,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_STAGE = 2
EXIT_INCONSISTENT = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _color_enabled() -> bool:
    return sys.stdout.isatty() and not os.environ.get("ONTOTERM_NO_COLOR")


def _paint(text: str, good: bool) -> str:
    if not _color_enabled():
        return text
    return f"\033[32m{text}\033[0m" if good else f"\033[31m{text}\033[0m"


def _render_table(headers: list[str], rows: list[list[str]]) -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = [
        "  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)).rstrip(),
        "  ".join("-" * w for w in widths),
    ]
    for row in rows:
        lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
    return "\n".join(lines)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _json_line(payload) -> str:
    return json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True) + "\n"


def _load_stopwords(path: str | None) -> frozenset[str]:
    return load_stopwords(path) if path else DEFAULT_STOPWORDS


# ---------------------------------------------------------------------------
# subcommands


def cmd_extract(args) -> int:
    corpus = load_corpus(args.corpus)
    lexicon = load_lexicon(args.lexicon) if args.lexicon else Lexicon()
    patterns = load_patterns(args.patterns) if args.patterns else list(DEFAULT_PATTERNS)
    tokens = [t for doc in corpus for t in annotate(doc, lexicon)]
    _emit(candidates_to_json(extract_candidates(tokens, patterns)), args.out)
    return EXIT_OK


def cmd_net(args) -> int:
    candidates = candidates_from_json(Path(args.candidates).read_text(encoding="utf-8"))
    corpus = load_corpus(args.corpus)
    lexicon = load_lexicon(args.lexicon) if args.lexicon else Lexicon()
    tokens = [t for doc in corpus for t in annotate(doc, lexicon)]
    relations = same_head_hyponyms(candidates)
    relations += copula_relations(tokens, [c.label for c in candidates])
    synonyms = load_synonym_declarations(args.synonyms) if args.synonyms else ()
    net = build_network(terms_from_candidates(candidates), relations, synonyms)
    _emit(lexnet_to_json(net), args.out)
    return EXIT_OK


def cmd_validate(args) -> int:
    net = lexnet_from_json(Path(args.lexnet).read_text(encoding="utf-8"))
    updated = apply_validation(net, load_decisions(args.decisions))
    Path(args.out).write_text(lexnet_to_json(updated), encoding="utf-8")
    contradictions = updated.contradictions()
    statuses = {}
    for term in updated.terms.values():
        statuses[term.status.value] = statuses.get(term.status.value, 0) + 1
    report = {"term_statuses": statuses, "contradictions": [list(p) for p in contradictions]}
    if args.format == "json":
        sys.stdout.write(_json_line(report))
    else:
        rows = [[a, b] for a, b in contradictions]
        print(f"terms: {statuses}")
        if rows:
            print("mutual hyponymy left to the expert:")
            print(_render_table(["term a", "term b"], rows))
    return EXIT_OK


def cmd_project(args) -> int:
    net = lexnet_from_json(Path(args.lexnet).read_text(encoding="utf-8"))
    taxonomy = project(net)
    _emit(taxonomy_to_json(taxonomy), args.out)
    if args.dot:
        Path(args.dot).write_text(taxonomy_to_dot(taxonomy), encoding="utf-8")
    return EXIT_OK


def cmd_ok_check(args) -> int:
    ontology = load_dsl(args.dsl)
    violations = check_consistency(ontology)
    if args.format == "json":
        payload = {
            "ontology": ontology.name,
            "consistent": not violations,
            "violations": [{"rule": v.rule, "message": v.message} for v in violations],
        }
        sys.stdout.write(_json_line(payload))
    else:
        if violations:
            print(_render_table(["rule", "violation"], [[v.rule, v.message] for v in violations]))
        print(_paint("consistent" if not violations else f"{len(violations)} violations", not violations))
    return EXIT_OK if not violations else EXIT_INCONSISTENT


def cmd_align(args) -> int:
    taxonomy = taxonomy_from_json(Path(args.taxonomy).read_text(encoding="utf-8"))
    ontology = load_dsl(args.dsl)
    stopwords = _load_stopwords(args.stopwords)
    terms = sorted({t for c in taxonomy.concepts.values() for t in c.denoting_terms})
    alignments = ontology_alignments(terms, ontology, stopwords)
    report = compare_structures(taxonomy, ontology, alignments)
    if args.out or args.format == "json":
        _emit(alignment_artifact(alignments, report), args.out)
    if args.format == "table":
        rows = [
            [r.term, r.kind.value, r.concept or ", ".join(r.candidates) or "-"]
            for r in alignments.values()
        ]
        print(_render_table(["term", "kind", "concept"], sorted(rows)))
        verdict_rows = [
            [e.term, e.projected_parent or "-", " -> ".join(e.ok_parent_chain) or "-", e.verdict.value]
            for e in sorted(report.entries, key=lambda e: e.term)
        ]
        print()
        print(_render_table(["term", "projected parent", "expert genus chain", "verdict"], verdict_rows))
    return EXIT_OK


def cmd_index(args) -> int:
    corpus = load_corpus(args.corpus)
    candidates = candidates_from_json(Path(args.candidates).read_text(encoding="utf-8"))
    taxonomy = taxonomy_from_json(Path(args.taxonomy).read_text(encoding="utf-8"))
    ontology = load_dsl(args.dsl)
    stopwords = _load_stopwords(args.stopwords)
    labels = [c.label for c in candidates]
    projected = index_corpus(corpus, candidates, taxonomy, taxonomy_alignments(taxonomy))
    ok_index = index_corpus(
        corpus, candidates, ontology, ontology_alignments(labels, ontology, stopwords)
    )
    payload = {"projected": index_to_json_obj(projected), "ok": index_to_json_obj(ok_index)}
    _emit(_json_line(payload), args.out)
    return EXIT_OK


def _load_index_side(path: str, side: str):
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    if side not in payload:
        raise ConfigError(f"index file has no {side!r} side")
    return index_from_json_obj(payload[side])


def cmd_query(args) -> int:
    if args.structure == "projected":
        if not args.taxonomy:
            raise ConfigError("query --structure projected needs --taxonomy")
        structure = taxonomy_from_json(Path(args.taxonomy).read_text(encoding="utf-8"))
    else:
        if not args.dsl:
            raise ConfigError("query --structure ok needs --dsl")
        structure = load_dsl(args.dsl)
    index = _load_index_side(args.index, args.structure)
    stopwords = _load_stopwords(args.stopwords)
    concept = resolve_label(structure, args.concept, stopwords)
    if concept is None:
        raise OntoTermError(f"concept not found in {args.structure} structure: {args.concept!r}")
    docs = sorted(query(index, structure, concept))
    if args.format == "json":
        sys.stdout.write(_json_line({"concept": concept, "documents": docs}))
    else:
        print(f"concept: {concept}")
        for doc in docs:
            print(doc)
    return EXIT_OK


def cmd_compare_recall(args) -> int:
    taxonomy = taxonomy_from_json(Path(args.taxonomy).read_text(encoding="utf-8"))
    ontology = load_dsl(args.dsl)
    index_projected = _load_index_side(args.index, "projected")
    index_ok = _load_index_side(args.index, "ok")
    stopwords = _load_stopwords(args.stopwords)
    comparison = compare_recall(
        index_projected, taxonomy, index_ok, ontology, args.concept, stopwords
    )
    if args.format == "json":
        sys.stdout.write(comparison_to_json(comparison))
    else:
        rows = []
        for doc in sorted(set(comparison.docs_a) | set(comparison.docs_b)):
            rows.append([
                doc,
                "x" if doc in comparison.docs_a else "",
                "x" if doc in comparison.docs_b else "",
                "; ".join(comparison.explanations[doc]["b"] or comparison.explanations[doc]["a"]),
            ])
        print(_render_table(["document", "projected", "ok", "via concept"], rows))
        print(f"symmetric difference: {list(comparison.symmetric_difference)}")
    return EXIT_OK


def cmd_export(args) -> int:
    ontology = load_dsl(args.dsl)
    text = to_kif(ontology) if args.format == "kif" else to_owl(ontology, args.iri)
    _emit(text, args.out)
    return EXIT_OK


def cmd_run(args) -> int:
    config = load_config(args.config)
    if args.output:
        config = replace(config, output=Path(args.output))
    result = run_pipeline(config, force=args.force)
    hits = sum(1 for s in result.stages.values() if s.cache_hit)
    print(f"{len(result.stages)} stages, {hits} cache hits -> {result.output_dir}")
    return EXIT_OK


def cmd_fixture_path(args) -> int:
    print(data_path())
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="ontoterm", description=__doc__)
    parser.add_argument("--version", action="version", version=f"ontoterm {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("extract", cmd_extract, "extract term candidates from a corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--lexicon")
    p.add_argument("--patterns")
    p.add_argument("--out")

    p = add("net", cmd_net, "build the lexical network from candidates")
    p.add_argument("--candidates", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--lexicon")
    p.add_argument("--synonyms")
    p.add_argument("--out")

    p = add("validate", cmd_validate, "apply expert decisions to a network")
    p.add_argument("--lexnet", required=True)
    p.add_argument("--decisions", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("json", "table"), default="table")

    p = add("project", cmd_project, "project the validated network into a taxonomy")
    p.add_argument("--lexnet", required=True)
    p.add_argument("--out")
    p.add_argument("--dot", help="also write a Graphviz rendering")

    p = add("ok-check", cmd_ok_check, "check an expert ontology for consistency")
    p.add_argument("--dsl", required=True)
    p.add_argument("--format", choices=("json", "table"), default="table")

    p = add("align", cmd_align, "align taxonomy terms with expert concepts")
    p.add_argument("--taxonomy", required=True)
    p.add_argument("--dsl", required=True)
    p.add_argument("--stopwords")
    p.add_argument("--out")
    p.add_argument("--format", choices=("json", "table"), default="json")

    p = add("index", cmd_index, "index documents under both structures")
    p.add_argument("--corpus", required=True)
    p.add_argument("--candidates", required=True)
    p.add_argument("--taxonomy", required=True)
    p.add_argument("--dsl", required=True)
    p.add_argument("--stopwords")
    p.add_argument("--out")

    p = add("query", cmd_query, "retrieve documents for a concept")
    p.add_argument("--index", required=True)
    p.add_argument("--structure", choices=("projected", "ok"), required=True)
    p.add_argument("--concept", required=True)
    p.add_argument("--taxonomy", help="taxonomy JSON (projected structure)")
    p.add_argument("--dsl", help="ontology source (ok structure)")
    p.add_argument("--stopwords")
    p.add_argument("--format", choices=("json", "table"), default="table")

    p = add("compare-recall", cmd_compare_recall, "diff one query across both structures")
    p.add_argument("--index", required=True)
    p.add_argument("--taxonomy", required=True)
    p.add_argument("--dsl", required=True)
    p.add_argument("--concept", required=True)
    p.add_argument("--stopwords")
    p.add_argument("--format", choices=("json", "table"), default="table")

    p = add("export", cmd_export, "emit the expert ontology as OWL or KIF")
    p.add_argument("--dsl", required=True)
    p.add_argument("--format", choices=("owl", "kif"), required=True)
    p.add_argument("--iri", default=DEFAULT_IRI)
    p.add_argument("--out")

    p = add("run", cmd_run, "run the whole pipeline from a config file")
    p.add_argument("--config", required=True)
    p.add_argument("--output", help="override the configured output directory")
    p.add_argument("--force", action="store_true", help="ignore cached stage artifacts")

    add("fixture-path", cmd_fixture_path, "print the bundled fixture directory")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"ontoterm: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InconsistentOntologyError as exc:
        print(f"ontoterm: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except OntoTermError as exc:
        print(f"ontoterm: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_STAGE


if __name__ == "__main__":
    sys.exit(main())
