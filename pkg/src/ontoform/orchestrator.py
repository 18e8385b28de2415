"""Dynamic form chaining over a component ontology.

A session walks the chosen product's definition tree breadth-first: each
submitted form mints an instance, appends its annotation triples, and
enqueues one follow-up form per component of the answered concept. Forms
for defined concepts expand further; primitive concepts are terminal.
The walk ends when the frontier queue is empty.
"""

from __future__ import annotations

import datetime
import enum
import hashlib
import re
import uuid
from dataclasses import dataclass, field

from ontoform import vocab
from ontoform.axioms import (
    ConceptKind,
    classify_concept,
    components_of,
    properties_of,
)
from ontoform.errors import (
    CorruptSession,
    CyclicDefinition,
    NotAProduct,
    OntologyMismatch,
    SessionComplete,
    StaleForm,
    UnknownClass,
    ValidationFailed,
)
from ontoform.graph import Graph
from ontoform.terms import Iri, Literal, Triple
from ontoform.turtle import parse_turtle, serialize_turtle

SESSION_NS = "urn:ontoform:session:"

DATATYPE_NAMES = {
    vocab.XSD_STRING: "string",
    vocab.XSD_DECIMAL: "decimal",
    vocab.XSD_INTEGER: "integer",
    vocab.XSD_BOOLEAN: "boolean",
    vocab.XSD_DATE: "date",
}

_DECIMAL_RE = re.compile(r"[+-]?(\d+(\.\d*)?|\.\d+)")
_INTEGER_RE = re.compile(r"[+-]?\d+")


class SessionState(enum.Enum):
    IN_PROGRESS = "InProgress"
    COMPLETE = "Complete"


@dataclass(frozen=True, slots=True)
class FormField:
    """One input of an entry form."""

    id: str
    label: str
    datatype: str
    required: bool


@dataclass(frozen=True, slots=True)
class ComponentChoice:
    """A follow-up form announced by the current one."""

    property: Iri
    concept: Iri
    label: str


@dataclass(frozen=True, slots=True)
class FormSchema:
    form_id: str
    concept: Iri
    title: str
    fields: tuple[FormField, ...]
    components: tuple[ComponentChoice, ...]

    def as_dict(self) -> dict:
        """JSON shape consumed by the HTTP facade and the web client."""
        return {
            "form_id": self.form_id,
            "concept": self.concept.value,
            "title": self.title,
            "fields": [
                {"id": f.id, "label": f.label, "datatype": f.datatype, "required": f.required}
                for f in self.fields
            ],
            "components": [
                {"property": c.property.value, "concept": c.concept.value, "label": c.label}
                for c in self.components
            ],
        }


@dataclass(frozen=True, slots=True)
class FormAnswer:
    form_id: str
    values: dict[str, str]


@dataclass(frozen=True, slots=True)
class FrontierEntry:
    """A pending form: where the new instance will hang and its concept.

    ``path`` lists the defined concepts already expanded above this entry;
    it is what makes cycle detection per-path rather than global.
    """

    parent: Iri | None
    property: Iri | None
    concept: Iri
    path: tuple[Iri, ...] = ()


@dataclass(frozen=True, slots=True)
class AnsweredForm:
    instance: Iri
    concept: Iri
    form_id: str
    values: dict[str, str]


@dataclass
class Session:
    session_id: str
    graph: Graph
    ontology_hash: str
    product: Iri
    frontier: list[FrontierEntry] = field(default_factory=list)
    answers: list[AnsweredForm] = field(default_factory=list)
    annotations: Graph = field(default_factory=Graph)

    @property
    def state(self) -> SessionState:
        return SessionState.COMPLETE if not self.frontier else SessionState.IN_PROGRESS

    @property
    def visited(self) -> set[Iri]:
        """Defined concepts on some still-open expansion path."""
        out: set[Iri] = set()
        for entry in self.frontier:
            out.update(entry.path)
        return out

    def instance_namespace(self) -> str:
        return f"{SESSION_NS}{self.session_id}:"


def compute_ontology_hash(graph: Graph) -> str:
    """SHA-256 of the canonical serialization; pins sessions to content."""
    return hashlib.sha256(serialize_turtle(graph).encode("utf-8")).hexdigest()


def coerce_values(raw: dict) -> dict[str, str]:
    """Map JSON scalars to lexical forms; None and "" mean not filled."""
    out: dict[str, str] = {}
    for key, value in raw.items():
        if value is None:
            out[str(key)] = ""
        elif isinstance(value, bool):
            out[str(key)] = "true" if value else "false"
        elif isinstance(value, (int, float, str)):
            out[str(key)] = str(value)
        else:
            raise ValidationFailed([(str(key), "value must be a scalar")])
    return out


def _subclass_edges(graph: Graph) -> dict[Iri, list[Iri]]:
    children: dict[Iri, list[Iri]] = {}
    for t in graph.match(p=vocab.RDFS_SUBCLASSOF):
        if isinstance(t.subject, Iri) and isinstance(t.object, Iri):
            children.setdefault(t.object, []).append(t.subject)
    return children


def list_products(graph: Graph, root: Iri) -> list[tuple[Iri, str]]:
    """Strict named subclasses of ``root``, sorted by label."""
    if Triple(root, vocab.RDF_TYPE, vocab.OWL_CLASS) not in graph:
        raise UnknownClass(f"{root} is not a declared class")
    children = _subclass_edges(graph)
    declared = {
        s for s in graph.subjects(vocab.RDF_TYPE, vocab.OWL_CLASS) if isinstance(s, Iri)
    }
    found: set[Iri] = set()
    queue = list(children.get(root, []))
    while queue:
        node = queue.pop(0)
        if node in found or node == root:
            continue
        found.add(node)
        queue.extend(children.get(node, []))
    products = [(c, graph.label_of(c)) for c in found if c in declared]
    return sorted(products, key=lambda p: (p[1], p[0]))


def start_session(
    graph: Graph,
    product: Iri,
    root: Iri,
    session_id: str | None = None,
) -> Session:
    """Open a session whose first pending form is the product itself."""
    if Triple(product, vocab.RDF_TYPE, vocab.OWL_CLASS) not in graph:
        raise UnknownClass(f"{product} is not a declared class")
    if product not in {iri for iri, _ in list_products(graph, root)}:
        raise NotAProduct(f"{product} is not a product under {root}")

    session = Session(
        session_id=session_id or uuid.uuid4().hex,
        graph=graph,
        ontology_hash=compute_ontology_hash(graph),
        product=product,
        frontier=[FrontierEntry(None, None, product)],
    )
    annotations = Graph(dict(graph.namespaces))
    annotations.bind("ann", vocab.ANN_NS)
    annotations.bind("doc", session.instance_namespace())
    session.annotations = annotations
    return session


def form_bindings(
    graph: Graph, concept: Iri, include_quantity: bool
) -> list[tuple[FormField, Iri]]:
    """Form fields for a concept, each paired with its annotation property.

    Property fields use their local name as field id; clashes (including
    with the built-in designation/quantite fields) get a numeric suffix so
    ids stay unique within the form.
    """
    bindings: list[tuple[FormField, Iri]] = [
        (FormField("designation", "désignation", "string", True), vocab.ANN_DESIGNATION)
    ]
    if include_quantity:
        bindings.append(
            (FormField("quantite", "quantité", "integer", False), vocab.ANN_QUANTITY)
        )
    taken = {f.id for f, _ in bindings}
    for spec in properties_of(graph, concept):
        base = vocab.local_name(spec.property)
        fid, n = base, 1
        while fid in taken:
            n += 1
            fid = f"{base}-{n}"
        taken.add(fid)
        bindings.append(
            (FormField(fid, spec.label, DATATYPE_NAMES[spec.datatype], False), spec.property)
        )
    return bindings


def _field_bindings(session: Session, entry: FrontierEntry) -> list[tuple[FormField, Iri]]:
    return form_bindings(session.graph, entry.concept, entry.parent is not None)


def _next_form_id(session: Session) -> str:
    return f"form-{len(session.answers) + 1}"


def current_form(session: Session) -> FormSchema:
    """Schema for the head of the frontier queue."""
    if not session.frontier:
        raise SessionComplete("all forms are answered")
    entry = session.frontier[0]
    graph = session.graph
    return FormSchema(
        form_id=_next_form_id(session),
        concept=entry.concept,
        title=graph.label_of(entry.concept),
        fields=tuple(f for f, _ in _field_bindings(session, entry)),
        components=tuple(
            ComponentChoice(prop, filler, graph.label_of(filler))
            for prop, filler in components_of(graph, entry.concept)
        ),
    )


def _check_value(datatype: str, value: str) -> str | None:
    if datatype == "string":
        return None
    if datatype == "decimal":
        return None if _DECIMAL_RE.fullmatch(value) else "not a valid decimal"
    if datatype == "integer":
        return None if _INTEGER_RE.fullmatch(value) else "not a valid integer"
    if datatype == "boolean":
        return None if value in ("true", "false", "1", "0") else "expected true or false"
    if datatype == "date":
        try:
            datetime.date.fromisoformat(value)
            return None
        except ValueError:
            return "not a valid date (YYYY-MM-DD)"
    return f"unknown datatype {datatype}"


def _validate(
    bindings: list[tuple[FormField, Iri]], values: dict[str, str]
) -> dict[str, str]:
    """Return the filled values (empties dropped) or raise ValidationFailed."""
    by_id = {f.id: f for f, _ in bindings}
    errors: list[tuple[str, str]] = []
    filled: dict[str, str] = {}
    for fid, value in values.items():
        form_field = by_id.get(fid)
        if form_field is None:
            errors.append((fid, "no such field on this form"))
            continue
        if not isinstance(value, str):
            errors.append((fid, "value must be a string"))
            continue
        if value == "":
            continue
        problem = _check_value(form_field.datatype, value)
        if problem:
            errors.append((fid, problem))
        else:
            filled[fid] = value
    for form_field, _ in bindings:
        if form_field.required and not filled.get(form_field.id, "").strip():
            filled.pop(form_field.id, None)
            errors.append((form_field.id, "this field is required"))
    if errors:
        raise ValidationFailed(sorted(errors))
    return filled


def submit_form(session: Session, answer: FormAnswer) -> Session:
    """Record one answer atomically and enqueue its component forms.

    Any error leaves the session exactly as it was.
    """
    if not session.frontier:
        raise SessionComplete("all forms are answered")
    expected = _next_form_id(session)
    if answer.form_id != expected:
        raise StaleForm(f"expected {expected}, got {answer.form_id}")

    entry = session.frontier[0]
    graph = session.graph
    bindings = _field_bindings(session, entry)
    filled = _validate(bindings, answer.values)

    instance = Iri(f"{session.instance_namespace()}inst-{len(session.answers) + 1}")
    triples = [Triple(instance, vocab.RDF_TYPE, entry.concept)]
    if entry.parent is not None and entry.property is not None:
        triples.append(Triple(entry.parent, entry.property, instance))
    datatype_of = {f.id: f.datatype for f, _ in bindings}
    property_of = {f.id: prop for f, prop in bindings}
    for fid in sorted(filled):
        xsd = Iri(vocab.XSD_NS + datatype_of[fid])
        triples.append(Triple(instance, property_of[fid], Literal(filled[fid], datatype=xsd)))

    path = entry.path + (entry.concept,)
    enqueued: list[FrontierEntry] = []
    for prop, filler in components_of(graph, entry.concept):
        if classify_concept(graph, filler) is ConceptKind.DEFINED and filler in path:
            cycle = [c.value for c in path[path.index(filler):]] + [filler.value]
            raise CyclicDefinition(cycle)
        enqueued.append(FrontierEntry(instance, prop, filler, path))

    session.frontier.pop(0)
    session.frontier.extend(enqueued)
    session.answers.append(AnsweredForm(instance, entry.concept, answer.form_id, dict(filled)))
    session.annotations.add_all(triples)
    return session


def session_progress(session: Session) -> tuple[int, int, SessionState]:
    return len(session.answers), len(session.frontier), session.state


def save_session(session: Session) -> dict:
    """JSON-serializable snapshot; pair with the same ontology to reload."""
    return {
        "session_id": session.session_id,
        "ontology_hash": session.ontology_hash,
        "product": session.product.value,
        "frontier": [
            {
                "parent": e.parent.value if e.parent else None,
                "property": e.property.value if e.property else None,
                "concept": e.concept.value,
                "path": [c.value for c in e.path],
            }
            for e in session.frontier
        ],
        "visited": sorted(c.value for c in session.visited),
        "answers": [
            {
                "instance": a.instance.value,
                "concept": a.concept.value,
                "form_id": a.form_id,
                "values": dict(a.values),
            }
            for a in session.answers
        ],
        "annotations_ttl": serialize_turtle(session.annotations),
    }


def _require(document: dict, key: str, kind: type) -> object:
    if key not in document or not isinstance(document[key], kind):
        raise CorruptSession(f"missing or invalid field: {key}")
    return document[key]


def _opt_iri(value: object, where: str) -> Iri | None:
    if value is None:
        return None
    if not isinstance(value, str) or not value:
        raise CorruptSession(f"bad identifier in {where}")
    return Iri(value)


def load_session(document: dict, graph: Graph) -> Session:
    """Rebuild a session against the ontology it was saved with."""
    if not isinstance(document, dict):
        raise CorruptSession("session document must be an object")
    session_id = _require(document, "session_id", str)
    saved_hash = _require(document, "ontology_hash", str)
    if saved_hash != compute_ontology_hash(graph):
        raise OntologyMismatch("ontology content changed since the session was saved")

    frontier: list[FrontierEntry] = []
    for raw in _require(document, "frontier", list):
        if not isinstance(raw, dict):
            raise CorruptSession("frontier entry must be an object")
        concept = _opt_iri(raw.get("concept"), "frontier")
        if concept is None:
            raise CorruptSession("frontier entry lacks a concept")
        raw_path = raw.get("path", [])
        if not isinstance(raw_path, list):
            raise CorruptSession("frontier path must be a list")
        path: list[Iri] = []
        for c in raw_path:
            if not isinstance(c, str) or not c:
                raise CorruptSession("frontier path entries must be identifiers")
            path.append(Iri(c))
        frontier.append(
            FrontierEntry(
                parent=_opt_iri(raw.get("parent"), "frontier"),
                property=_opt_iri(raw.get("property"), "frontier"),
                concept=concept,
                path=tuple(path),
            )
        )

    answers: list[AnsweredForm] = []
    for raw in _require(document, "answers", list):
        if not isinstance(raw, dict):
            raise CorruptSession("answer entry must be an object")
        instance = _opt_iri(raw.get("instance"), "answers")
        concept = _opt_iri(raw.get("concept"), "answers")
        form_id = raw.get("form_id")
        values = raw.get("values")
        if instance is None or concept is None or not isinstance(form_id, str):
            raise CorruptSession("answer entry lacks instance, concept, or form_id")
        if not isinstance(values, dict) or not all(
            isinstance(k, str) and isinstance(v, str) for k, v in values.items()
        ):
            raise CorruptSession("answer values must map field ids to strings")
        answers.append(AnsweredForm(instance, concept, form_id, dict(values)))

    session = Session(
        session_id=session_id,
        graph=graph,
        ontology_hash=saved_hash,
        product=Iri(str(_require(document, "product", str))),
        frontier=frontier,
        answers=answers,
    )
    visited = _require(document, "visited", list)
    if sorted(visited) != sorted(c.value for c in session.visited):
        raise CorruptSession("visited set does not match the frontier paths")
    try:
        session.annotations = parse_turtle(str(_require(document, "annotations_ttl", str)))
    except Exception as exc:
        raise CorruptSession(f"annotation graph does not parse: {exc}") from exc
    return session
