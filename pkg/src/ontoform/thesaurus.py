"""Thesaurus ingestion and subclass-hierarchy extraction.

A concept scheme (SKOS document or flat CSV) turns into a class hierarchy:
every concept becomes a class, every broader link becomes a subclass edge
with the narrower term as the subclass. Redundant transitive edges are
removed by exact DAG transitive reduction.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

from ontoform import vocab
from ontoform.errors import CyclicHierarchy, InvalidConceptScheme
from ontoform.graph import Graph
from ontoform.terms import Iri, Literal, Triple


@dataclass(frozen=True, slots=True)
class Concept:
    """One thesaurus entry: identifier, preferred label, optional language."""

    iri: Iri
    label: str
    language: str | None = None


@dataclass(slots=True)
class ConceptScheme:
    """Concepts plus broader links, each link (narrower, broader).

    Narrower links from source documents are stored inverted, so one
    relation direction covers both input forms.
    """

    concepts: dict[Iri, Concept] = field(default_factory=dict)
    broader_links: set[tuple[Iri, Iri]] = field(default_factory=set)

    def validate(self) -> None:
        for concept in self.concepts.values():
            if not concept.label.strip():
                raise InvalidConceptScheme(f"concept {concept.iri} has an empty label")
        for narrower, broader in self.broader_links:
            for end in (narrower, broader):
                if end not in self.concepts:
                    raise InvalidConceptScheme(f"link endpoint {end} is not a declared concept")


@dataclass(slots=True)
class Hierarchy:
    """Labeled classes and subclass edges (subclass, superclass)."""

    classes: dict[Iri, str] = field(default_factory=dict)
    edges: set[tuple[Iri, Iri]] = field(default_factory=set)

    def validate(self) -> None:
        for sub, sup in self.edges:
            for end in (sub, sup):
                if end not in self.classes:
                    raise InvalidConceptScheme(f"edge endpoint {end} is not a declared class")
        cycle = find_cycle(self.edges)
        if cycle:
            raise CyclicHierarchy([c.value for c in cycle])


def find_cycle(edges: set[tuple[Iri, Iri]]) -> list[Iri] | None:
    """One directed cycle as [n0, n1, ..., n0], or None if acyclic."""
    children: dict[Iri, list[Iri]] = {}
    for a, b in sorted(edges):
        children.setdefault(a, []).append(b)

    done: set[Iri] = set()
    path: list[Iri] = []
    on_path: set[Iri] = set()

    def walk(node: Iri) -> list[Iri] | None:
        path.append(node)
        on_path.add(node)
        for nxt in children.get(node, ()):
            if nxt in on_path:
                return path[path.index(nxt):] + [nxt]
            if nxt not in done:
                found = walk(nxt)
                if found:
                    return found
        on_path.discard(node)
        path.pop()
        done.add(node)
        return None

    for start in sorted({a for a, _ in edges}):
        if start not in done:
            found = walk(start)
            if found:
                return found
    return None


def extract_hierarchy(scheme: ConceptScheme) -> Hierarchy:
    """One class per concept, one subclass edge per broader link.

    Raises CyclicHierarchy when the links loop.
    """
    scheme.validate()
    h = Hierarchy(
        classes={c.iri: c.label for c in scheme.concepts.values()},
        edges=set(scheme.broader_links),
    )
    h.validate()
    return h


def _descendants(edges: set[tuple[Iri, Iri]]) -> dict[Iri, set[Iri]]:
    children: dict[Iri, set[Iri]] = {}
    for a, b in edges:
        children.setdefault(a, set()).add(b)

    memo: dict[Iri, set[Iri]] = {}

    def reach(node: Iri) -> set[Iri]:
        if node not in memo:
            memo[node] = set()  # placeholder; acyclicity checked by caller
            out: set[Iri] = set()
            for child in children.get(node, ()):
                out.add(child)
                out |= reach(child)
            memo[node] = out
        return memo[node]

    for node in children:
        reach(node)
    return memo


def transitive_reduction(h: Hierarchy) -> Hierarchy:
    """Unique minimal edge set with the same reachability; classes unchanged.

    An edge (u, v) is dropped exactly when v is still reachable from u
    through some other direct superclass.
    """
    cycle = find_cycle(h.edges)
    if cycle:
        raise CyclicHierarchy([c.value for c in cycle])
    desc = _descendants(h.edges)
    kept = {
        (u, v)
        for (u, v) in h.edges
        if not any(w != v and v in desc.get(w, set()) for (x, w) in h.edges if x == u)
    }
    return Hierarchy(classes=dict(h.classes), edges=kept)


def hierarchy_to_graph(h: Hierarchy) -> Graph:
    """Materialize classes (type + label) and subclass edges as statements."""
    g = Graph({"rdf": vocab.RDF_NS, "rdfs": vocab.RDFS_NS, "owl": vocab.OWL_NS})
    for iri, label in h.classes.items():
        g.add(Triple(iri, vocab.RDF_TYPE, vocab.OWL_CLASS))
        g.add(Triple(iri, vocab.RDFS_LABEL, Literal(label)))
    for sub, sup in h.edges:
        g.add(Triple(sub, vocab.RDFS_SUBCLASSOF, sup))
    return g


# ---------------------------------------------------------------------------
# Readers
# ---------------------------------------------------------------------------

def scheme_from_graph(graph: Graph) -> ConceptScheme:
    """Concept scheme from SKOS statements (Concept, prefLabel, broader, narrower)."""
    scheme = ConceptScheme()
    for iri in graph.subjects(vocab.RDF_TYPE, vocab.SKOS_CONCEPT):
        if not isinstance(iri, Iri):
            raise InvalidConceptScheme(f"concept is not an IRI: {iri}")
        labels = [
            o for o in graph.objects(iri, vocab.SKOS_PREFLABEL) if isinstance(o, Literal)
        ]
        if not labels:
            raise InvalidConceptScheme(f"concept {iri} has no preferred label")
        scheme.concepts[iri] = Concept(iri, labels[0].lexical, labels[0].language)
    for t in graph.match(p=vocab.SKOS_BROADER):
        scheme.broader_links.add(_link_ends(t.subject, t.object))
    for t in graph.match(p=vocab.SKOS_NARROWER):
        scheme.broader_links.add(_link_ends(t.object, t.subject))
    scheme.validate()
    return scheme


def _link_ends(narrower: object, broader: object) -> tuple[Iri, Iri]:
    if not isinstance(narrower, Iri) or not isinstance(broader, Iri):
        raise InvalidConceptScheme(f"hierarchical link between non-IRIs: {narrower} / {broader}")
    return (narrower, broader)


def scheme_from_csv(text: str, base: str) -> ConceptScheme:
    """Concept scheme from `id,label,broader_id` rows.

    Bare ids are resolved against ``base``; a first row consisting of the
    column names is skipped. Repeated ids may add extra broader links but
    must agree on the label.
    """
    scheme = ConceptScheme()
    pending: list[tuple[Iri, Iri]] = []

    def resolve(cell: str) -> Iri:
        return Iri(cell) if ":" in cell else Iri(base + cell)

    rows = list(csv.reader(io.StringIO(text)))
    if rows and [c.strip().lower() for c in rows[0]] == ["id", "label", "broader_id"]:
        rows = rows[1:]
    for index, row in enumerate(rows, start=1):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != 3:
            raise InvalidConceptScheme(f"row {index}: expected 3 columns, got {len(row)}")
        iri = resolve(row[0].strip())
        label = row[1].strip()
        if iri in scheme.concepts and scheme.concepts[iri].label != label:
            raise InvalidConceptScheme(f"row {index}: conflicting labels for {iri}")
        scheme.concepts.setdefault(iri, Concept(iri, label))
        if row[2].strip():
            pending.append((iri, resolve(row[2].strip())))
    scheme.broader_links.update(pending)
    scheme.validate()
    return scheme
