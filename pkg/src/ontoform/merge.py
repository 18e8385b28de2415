"""Label-based alignment and intersection merge of two class ontologies.

The left side is the thesaurus-derived ontology, the right side the
technical-document ontology. Classes pair up by normalized label; the
merged graph keeps the right identifier per pair and records the left
identifier as an equivalence annotation. Duplicated labels within one
side are name conflicts and never match. Subclass edges survive only
when both endpoints do, and the merged hierarchy is transitively
reduced with every dropped edge reported.
"""

from __future__ import annotations

import json
import re
import unicodedata
from dataclasses import dataclass, field

from ontoform import vocab
from ontoform.graph import Graph
from ontoform.terms import BlankNode, Iri, Literal, Term, Triple
from ontoform.thesaurus import Hierarchy, transitive_reduction

_SEPARATORS = re.compile(r"[-\s]+")


def normalize_label(label: str) -> str:
    """Case, diacritic, hyphen and whitespace insensitive matching key."""
    decomposed = unicodedata.normalize("NFD", label)
    stripped = "".join(c for c in decomposed if not unicodedata.combining(c))
    return _SEPARATORS.sub(" ", stripped.lower()).strip()


@dataclass(frozen=True, slots=True)
class Match:
    left: Iri
    right: Iri
    label: str


@dataclass(slots=True)
class Alignment:
    matches: set[Match] = field(default_factory=set)
    left_only: set[Iri] = field(default_factory=set)
    right_only: set[Iri] = field(default_factory=set)


@dataclass(frozen=True, slots=True)
class NameConflict:
    label: str
    left: tuple[Iri, ...]
    right: tuple[Iri, ...]


@dataclass(slots=True)
class ConflictReport:
    name_conflicts: list[NameConflict] = field(default_factory=list)
    hierarchy_redundancies: set[tuple[Iri, Iri]] = field(default_factory=set)
    carried_classes: set[Iri] = field(default_factory=set)
    reef_fraction: float | None = None

    @property
    def is_empty(self) -> bool:
        return not (self.name_conflicts or self.hierarchy_redundancies or self.carried_classes)

    def as_dict(self) -> dict:
        doc: dict = {
            "name_conflicts": [
                {
                    "label": c.label,
                    "left": sorted(i.value for i in c.left),
                    "right": sorted(i.value for i in c.right),
                }
                for c in sorted(self.name_conflicts, key=lambda c: c.label)
            ],
            "hierarchy_redundancies": [
                {"sub": a.value, "super": b.value}
                for a, b in sorted(self.hierarchy_redundancies)
            ],
            "carried_classes": sorted(i.value for i in self.carried_classes),
        }
        if self.reef_fraction is not None:
            doc["reef_fraction"] = self.reef_fraction
        return doc

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), ensure_ascii=False, indent=2) + "\n"


def ontology_classes(graph: Graph) -> dict[Iri, str]:
    """Named classes and their display labels (anonymous classes excluded)."""
    return {
        s: graph.label_of(s)
        for s in graph.subjects(vocab.RDF_TYPE, vocab.OWL_CLASS)
        if isinstance(s, Iri)
    }


def align_by_label(left: Graph, right: Graph) -> tuple[Alignment, ConflictReport]:
    """1:1 pairing of classes whose normalized labels agree.

    A label carried by two or more classes on one side becomes a name
    conflict; none of its classes match.
    """
    left_classes = ontology_classes(left)
    right_classes = ontology_classes(right)

    by_label_left: dict[str, list[Iri]] = {}
    for iri, label in left_classes.items():
        by_label_left.setdefault(normalize_label(label), []).append(iri)
    by_label_right: dict[str, list[Iri]] = {}
    for iri, label in right_classes.items():
        by_label_right.setdefault(normalize_label(label), []).append(iri)

    alignment = Alignment()
    report = ConflictReport()
    conflicted: set[str] = set()
    for label in sorted(set(by_label_left) | set(by_label_right)):
        lhs = sorted(by_label_left.get(label, []))
        rhs = sorted(by_label_right.get(label, []))
        if len(lhs) > 1 or len(rhs) > 1:
            conflicted.add(label)
            report.name_conflicts.append(NameConflict(label, tuple(lhs), tuple(rhs)))
        elif lhs and rhs:
            alignment.matches.add(Match(lhs[0], rhs[0], label))

    matched_left = {m.left for m in alignment.matches}
    matched_right = {m.right for m in alignment.matches}
    alignment.left_only = set(left_classes) - matched_left
    alignment.right_only = set(right_classes) - matched_right
    return alignment, report


def _blank_closure(graph: Graph, node: Term) -> set[Triple]:
    """All statements reachable from ``node`` through blank subjects."""
    out: set[Triple] = set()
    stack = [node]
    seen = {node}
    while stack:
        current = stack.pop()
        for t in graph.match(s=current):
            out.add(t)
            if isinstance(t.object, BlankNode) and t.object not in seen:
                seen.add(t.object)
                stack.append(t.object)
    return out


def _definition_statements(right: Graph, cls: Iri) -> set[Triple]:
    """The anonymous-superclass definition subgraph of one class, verbatim."""
    out: set[Triple] = set()
    for t in right.match(s=cls, p=vocab.RDFS_SUBCLASSOF):
        if isinstance(t.object, BlankNode):
            out.add(t)
            out |= _blank_closure(right, t.object)
    return out


def _definition_fillers(statements: set[Triple]) -> set[Iri]:
    return {
        t.object
        for t in statements
        if t.predicate == vocab.OWL_SOMEVALUESFROM and isinstance(t.object, Iri)
    }


def intersect_merge(left: Graph, right: Graph, alignment: Alignment) -> tuple[Graph, ConflictReport]:
    """Merged ontology per the intersection policy; see module docstring.

    Unmatched right classes referenced as restriction fillers of surviving
    definitions are carried along (declaration and label only) and flagged.
    """
    merged = Graph(dict(right.namespaces))
    for prefix, base in left.namespaces.items():
        merged.namespaces.setdefault(prefix, base)
    for prefix, base in (("rdf", vocab.RDF_NS), ("rdfs", vocab.RDFS_NS), ("owl", vocab.OWL_NS)):
        merged.namespaces.setdefault(prefix, base)

    report = ConflictReport()
    matched_right = {m.right for m in alignment.matches}
    left_to_right = {m.left: m.right for m in alignment.matches}

    definitions: dict[Iri, set[Triple]] = {
        cls: _definition_statements(right, cls) for cls in sorted(matched_right)
    }
    carried: set[Iri] = set()
    for statements in definitions.values():
        carried |= _definition_fillers(statements) - matched_right
    report.carried_classes = set(carried)
    survivors = matched_right | carried

    right_labels = {m.right: m.label for m in alignment.matches}
    for cls in sorted(survivors):
        merged.add(Triple(cls, vocab.RDF_TYPE, vocab.OWL_CLASS))
        labels = [o for o in right.objects(cls, vocab.RDFS_LABEL) if isinstance(o, Literal)]
        for label in labels:
            merged.add(Triple(cls, vocab.RDFS_LABEL, label))
        if not labels and cls in right_labels:
            merged.add(Triple(cls, vocab.RDFS_LABEL, Literal(right_labels[cls])))
    for m in sorted(alignment.matches, key=lambda m: m.right):
        merged.add(Triple(m.right, vocab.OWL_EQUIVALENTCLASS, m.left))

    for statements in definitions.values():
        merged.add_all(statements)

    edges: set[tuple[Iri, Iri]] = set()
    for t in right.match(p=vocab.RDFS_SUBCLASSOF):
        if isinstance(t.subject, Iri) and isinstance(t.object, Iri):
            if t.subject in survivors and t.object in survivors:
                edges.add((t.subject, t.object))
    for t in left.match(p=vocab.RDFS_SUBCLASSOF):
        sub = left_to_right.get(t.subject)
        sup = left_to_right.get(t.object)
        if sub is not None and sup is not None:
            edges.add((sub, sup))

    hierarchy = Hierarchy(classes={c: merged.label_of(c) for c in survivors}, edges=edges)
    hierarchy.validate()
    reduced = transitive_reduction(hierarchy)
    report.hierarchy_redundancies = edges - reduced.edges
    for sub, sup in reduced.edges:
        merged.add(Triple(sub, vocab.RDFS_SUBCLASSOF, sup))

    _copy_surviving_properties(right, merged, survivors, definitions)

    if survivors:
        report.reef_fraction = len(matched_right) / len(survivors)
    return merged, report


def _copy_surviving_properties(
    right: Graph,
    merged: Graph,
    survivors: set[Iri],
    definitions: dict[Iri, set[Triple]],
) -> None:
    """Properties stay when their domain survives or a definition uses them."""
    used_in_definitions = {
        t.object
        for statements in definitions.values()
        for t in statements
        if t.predicate == vocab.OWL_ONPROPERTY and isinstance(t.object, Iri)
    }
    named_right_classes = set(ontology_classes(right))

    for kind in (vocab.OWL_OBJECTPROPERTY, vocab.OWL_DATATYPEPROPERTY):
        for prop in right.subjects(vocab.RDF_TYPE, kind):
            if not isinstance(prop, Iri):
                continue
            domains = [o for o in right.objects(prop, vocab.RDFS_DOMAIN) if isinstance(o, Iri)]
            keep = prop in used_in_definitions or any(d in survivors for d in domains)
            if not keep:
                continue
            for t in right.match(s=prop):
                if t.predicate == vocab.RDFS_DOMAIN and t.object not in survivors:
                    continue
                if (
                    t.predicate == vocab.RDFS_RANGE
                    and t.object in named_right_classes
                    and t.object not in survivors
                ):
                    continue
                merged.add(t)


def merge_ontologies(left: Graph, right: Graph) -> tuple[Graph, Alignment, ConflictReport]:
    """Align by label, merge, and combine both conflict reports."""
    alignment, align_report = align_by_label(left, right)
    merged, merge_report = intersect_merge(left, right, alignment)
    merge_report.name_conflicts = align_report.name_conflicts
    return merged, alignment, merge_report
