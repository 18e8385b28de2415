"""Command line: pipeline steps, a terminal wizard, and the HTTP server.

Exit codes: 0 success, 1 usage, 2 unreadable or unparsable input,
3 validation or conflict errors (cycles, bad axioms, rejected answers).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from ontoform import vocab
from ontoform.axioms import components_of, validate_ontology
from ontoform.errors import (
    CorruptSession,
    CyclicDefinition,
    CyclicHierarchy,
    InvalidConceptScheme,
    InvalidOntology,
    MalformedAxiom,
    MalformedList,
    NotAProduct,
    OntologyMismatch,
    SessionComplete,
    StaleForm,
    UnknownClass,
    ValidationFailed,
)
from ontoform.export import to_html, to_rdf
from ontoform.graph import Graph
from ontoform.merge import merge_ontologies
from ontoform.orchestrator import (
    FormAnswer,
    Session,
    SessionState,
    coerce_values,
    current_form,
    start_session,
    submit_form,
)
from ontoform.terms import Iri
from ontoform.thesaurus import (
    extract_hierarchy,
    hierarchy_to_graph,
    scheme_from_csv,
    scheme_from_graph,
    transitive_reduction,
)
from ontoform.turtle import ParseError, parse_turtle, serialize_turtle

DEFAULT_ROOT = "http://www.cstb.fr/ontodt#ModulePhotoV"
DEFAULT_CSV_BASE = "http://www.cstb.fr/reef/#"

_INPUT_ERRORS = (
    OSError,
    UnicodeDecodeError,
    ParseError,
    InvalidConceptScheme,
    UnknownClass,
    json.JSONDecodeError,
)
_VALIDATION_ERRORS = (
    CyclicHierarchy,
    InvalidOntology,
    MalformedAxiom,
    MalformedList,
    ValidationFailed,
    StaleForm,
    SessionComplete,
    CyclicDefinition,
    NotAProduct,
    OntologyMismatch,
    CorruptSession,
)


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the contract here is 1."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _read_text(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _load_ontology(path: str, validate: bool = True) -> Graph:
    graph = parse_turtle(_read_text(path))
    if validate:
        validate_ontology(graph)
    return graph


def _resolve_class(graph: Graph, text: str) -> Iri:
    """Accept a full identifier or an unambiguous local name."""
    declared = {
        s for s in graph.subjects(vocab.RDF_TYPE, vocab.OWL_CLASS) if isinstance(s, Iri)
    }
    try:
        direct = Iri(text)
    except ValueError:
        direct = None
    if direct in declared:
        return direct
    hits = sorted(c for c in declared if vocab.local_name(c) == text)
    if len(hits) == 1:
        return hits[0]
    if not hits:
        raise UnknownClass(f"no class named {text!r} in the ontology")
    names = ", ".join(c.value for c in hits)
    raise UnknownClass(f"class name {text!r} is ambiguous: {names}")


def _write(path: str, content: str) -> None:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(content, encoding="utf-8")


# -- commands ---------------------------------------------------------


def cmd_transform(args: argparse.Namespace) -> int:
    if args.input.lower().endswith(".csv"):
        scheme = scheme_from_csv(_read_text(args.input), base=args.base)
    else:
        scheme = scheme_from_graph(parse_turtle(_read_text(args.input)))
    hierarchy = extract_hierarchy(scheme)
    if args.reduce:
        hierarchy = transitive_reduction(hierarchy)
    _write(args.out, serialize_turtle(hierarchy_to_graph(hierarchy)))
    print(f"{len(hierarchy.classes)} classes, {len(hierarchy.edges)} edges")
    return 0


def cmd_merge(args: argparse.Namespace) -> int:
    left = parse_turtle(_read_text(args.left))
    right = parse_turtle(_read_text(args.right))
    merged, alignment, report = merge_ontologies(left, right)
    _write(args.out, serialize_turtle(merged))
    _write(args.report, report.to_json())
    print(
        f"{len(alignment.matches)} matched, {len(report.carried_classes)} carried, "
        f"{len(report.name_conflicts)} name conflicts"
    )
    return 0


def cmd_components(args: argparse.Namespace) -> int:
    graph = parse_turtle(_read_text(args.ontology))
    concept = _resolve_class(graph, args.cls)
    for prop, filler in components_of(graph, concept):
        print(f"{vocab.local_name(prop)} {vocab.local_name(filler)}")
    return 0


def _replay(session: Session, script: list) -> None:
    """Feed script entries to the pending forms, in frontier order."""
    for index, entry in enumerate(script, start=1):
        if not isinstance(entry, dict) or not isinstance(entry.get("values"), dict):
            raise CorruptSession(f"script entry {index} must be an object with a 'values' map")
        form = current_form(session)
        concept = entry.get("concept")
        if concept is not None and concept != form.concept.value:
            raise StaleForm(
                f"script entry {index} targets {concept} "
                f"but the pending form is for {form.concept.value}"
            )
        form_id = entry.get("form_id", form.form_id)
        if not isinstance(form_id, str):
            raise CorruptSession(f"script entry {index} has a non-string form_id")
        submit_form(session, FormAnswer(form_id, coerce_values(entry["values"])))


def _interactive(session: Session) -> None:
    while session.state is SessionState.IN_PROGRESS:
        form = current_form(session)
        print(f"\n== {form.title} ==")
        if form.components:
            print("components to describe next: " + ", ".join(c.label for c in form.components))
        values = {}
        for form_field in form.fields:
            marker = " (required)" if form_field.required else ""
            values[form_field.id] = input(f"{form_field.label} [{form_field.datatype}]{marker}: ")
        try:
            submit_form(session, FormAnswer(form.form_id, values))
        except ValidationFailed as exc:
            for fid, message in exc.field_errors:
                print(f"  {fid}: {message}")
            print("please correct the values above")


def cmd_wizard(args: argparse.Namespace) -> int:
    graph = _load_ontology(args.ontology)
    root = _resolve_class(graph, args.root)
    product = _resolve_class(graph, args.product)
    session = start_session(graph, product, root, session_id=args.session_id)

    if args.answers:
        script = json.loads(_read_text(args.answers))
        if not isinstance(script, list):
            raise CorruptSession("answers script must be a JSON array")
        _replay(session, script)
        if session.state is not SessionState.COMPLETE:
            print(
                f"ontoform: script ended with {len(session.frontier)} forms still pending",
                file=sys.stderr,
            )
            return 3
    else:
        _interactive(session)

    base = Path(args.out)
    ttl_path = base.parent / (base.name + ".ttl")
    html_path = base.parent / (base.name + ".html")
    _write(str(ttl_path), to_rdf(session))
    _write(str(html_path), to_html(session))
    print(f"Complete: {len(session.answers)} instances. Wrote {ttl_path} and {html_path}")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    from ontoform.service import create_app

    graph = _load_ontology(args.ontology)
    root = _resolve_class(graph, args.root)
    app = create_app(graph, root, args.sessions_dir)

    import uvicorn

    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


# -- wiring -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ontoform", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("transform", help="thesaurus to class hierarchy")
    p.add_argument("input", help="SKOS Turtle file or id,label,broader_id CSV")
    p.add_argument("--out", required=True, help="output Turtle path")
    p.add_argument("--reduce", action="store_true", help="drop redundant subclass edges")
    p.add_argument("--base", default=DEFAULT_CSV_BASE, help="base IRI for bare CSV ids")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("merge", help="label intersection of two ontologies")
    p.add_argument("left", help="thesaurus-derived ontology (Turtle)")
    p.add_argument("right", help="document ontology (Turtle)")
    p.add_argument("--out", required=True, help="merged ontology path")
    p.add_argument("--report", required=True, help="conflict report JSON path")
    p.set_defaults(func=cmd_merge)

    p = sub.add_parser("components", help="list a defined class's components")
    p.add_argument("ontology", help="ontology Turtle file")
    p.add_argument("cls", metavar="class", help="class identifier or local name")
    p.set_defaults(func=cmd_components)

    p = sub.add_parser("wizard", help="fill a technical document session")
    p.add_argument("ontology", help="ontology Turtle file")
    p.add_argument("--product", required=True, help="product class identifier or local name")
    p.add_argument("--out", required=True, help="output base path (suffixes are added)")
    p.add_argument("--answers", help="JSON answers script for non-interactive replay")
    p.add_argument("--session-id", help="fix the session id for reproducible output")
    p.add_argument(
        "--root",
        default=os.environ.get("ONTOFORM_ROOT", DEFAULT_ROOT),
        help="product domain root class",
    )
    p.set_defaults(func=cmd_wizard)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("ontology", help="ontology Turtle file")
    p.add_argument("--host", default=os.environ.get("ONTOFORM_HOST", "127.0.0.1"))
    p.add_argument("--port", type=int, default=int(os.environ.get("ONTOFORM_PORT", "8000")))
    p.add_argument(
        "--sessions-dir",
        default=os.environ.get("ONTOFORM_SESSIONS_DIR", "sessions"),
        help="directory holding one JSON document per session",
    )
    p.add_argument(
        "--root",
        default=os.environ.get("ONTOFORM_ROOT", DEFAULT_ROOT),
        help="product domain root class",
    )
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _VALIDATION_ERRORS as exc:
        print(f"ontoform: {exc}", file=sys.stderr)
        return 3
    except _INPUT_ERRORS as exc:
        print(f"ontoform: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
