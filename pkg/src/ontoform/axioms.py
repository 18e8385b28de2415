"""Defined-class axioms and the composition query.

A class may carry one definition: an anonymous superclass holding an
intersection of existential restrictions. Decoding that structure answers
the two questions the form engine asks: what are a concept's components
(restriction property/filler pairs, in collection order) and which
datatype properties apply to it (its own domain or any named ancestor's).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from ontoform import vocab
from ontoform.errors import InvalidOntology, MalformedAxiom, MalformedList, UnknownClass
from ontoform.graph import Graph
from ontoform.terms import BlankNode, Iri, Literal, Term, Triple
from ontoform.thesaurus import find_cycle


@dataclass(frozen=True, slots=True)
class Restriction:
    """One existential component requirement: property and filler class."""

    property: Iri
    filler: Iri


@dataclass(frozen=True, slots=True)
class ClassAxiom:
    """A class with its named superclasses and optional definition."""

    cls: Iri
    named_superclasses: tuple[Iri, ...]
    definition: tuple[Restriction, ...] | None = None


class ConceptKind(enum.Enum):
    DEFINED = "Defined"
    PRIMITIVE = "Primitive"


_FIELD_DATATYPES = {
    vocab.XSD_STRING,
    vocab.XSD_DECIMAL,
    vocab.XSD_INTEGER,
    vocab.XSD_BOOLEAN,
    vocab.XSD_DATE,
}


@dataclass(frozen=True, slots=True)
class PropertySpec:
    """A datatype property applicable to a concept's entry form."""

    property: Iri
    label: str
    domain: Iri
    datatype: Iri

    def __post_init__(self) -> None:
        if self.datatype not in _FIELD_DATATYPES:
            raise MalformedAxiom(f"unsupported field datatype {self.datatype}")


def _require_class(graph: Graph, c: Iri) -> None:
    if Triple(c, vocab.RDF_TYPE, vocab.OWL_CLASS) not in graph:
        raise UnknownClass(f"{c} is not a declared class")


def _decode_restriction(graph: Graph, member: Term) -> Restriction:
    if not isinstance(member, (BlankNode, Iri)):
        raise MalformedAxiom(f"restriction is not a node: {member}")
    props = graph.objects(member, vocab.OWL_ONPROPERTY)
    fillers = graph.objects(member, vocab.OWL_SOMEVALUESFROM)
    if len(props) != 1 or not isinstance(props[0], Iri):
        raise MalformedAxiom(f"restriction {member} needs exactly one onProperty")
    if len(fillers) != 1 or not isinstance(fillers[0], Iri):
        raise MalformedAxiom(f"restriction {member} needs exactly one someValuesFrom filler")
    return Restriction(props[0], fillers[0])


def read_axiom(graph: Graph, c: Iri) -> ClassAxiom:
    """Decode subClassOf statements of ``c`` into named links plus definition."""
    _require_class(graph, c)
    named: list[Iri] = []
    anonymous: list[BlankNode] = []
    for sup in graph.objects(c, vocab.RDFS_SUBCLASSOF):
        if isinstance(sup, Iri):
            named.append(sup)
        elif isinstance(sup, BlankNode):
            anonymous.append(sup)
        else:
            raise MalformedAxiom(f"superclass of {c} is a literal")
    if len(anonymous) > 1:
        raise MalformedAxiom(f"{c} has {len(anonymous)} anonymous definitions, at most 1 allowed")

    definition: tuple[Restriction, ...] | None = None
    if anonymous:
        node = anonymous[0]
        heads = graph.objects(node, vocab.OWL_INTERSECTIONOF)
        if len(heads) != 1:
            raise MalformedAxiom(f"definition of {c} needs exactly one intersectionOf collection")
        try:
            members = graph.list_members(heads[0])
        except MalformedList as exc:
            raise MalformedAxiom(f"definition collection of {c} is broken: {exc}") from exc
        definition = tuple(_decode_restriction(graph, m) for m in members)
    return ClassAxiom(c, tuple(named), definition)


def classify_concept(graph: Graph, c: Iri) -> ConceptKind:
    """Defined iff the class carries an intersection definition."""
    axiom = read_axiom(graph, c)
    return ConceptKind.DEFINED if axiom.definition is not None else ConceptKind.PRIMITIVE


def components_of(graph: Graph, c: Iri) -> list[tuple[Iri, Iri]]:
    """(property, filler) pairs of the definition, in collection order."""
    axiom = read_axiom(graph, c)
    if axiom.definition is None:
        return []
    return [(r.property, r.filler) for r in axiom.definition]


def superclass_closure(graph: Graph, c: Iri) -> set[Iri]:
    """``c`` plus every class reachable through named subClassOf links."""
    out: set[Iri] = set()
    stack = [c]
    while stack:
        node = stack.pop()
        if node in out:
            continue
        out.add(node)
        for sup in graph.objects(node, vocab.RDFS_SUBCLASSOF):
            if isinstance(sup, Iri):
                stack.append(sup)
    return out


def _range_datatype(graph: Graph, prop: Iri) -> Iri:
    ranges = [o for o in graph.objects(prop, vocab.RDFS_RANGE) if isinstance(o, Iri)]
    for r in ranges:
        if r in _FIELD_DATATYPES:
            return r
    return vocab.XSD_STRING


def properties_of(graph: Graph, c: Iri) -> list[PropertySpec]:
    """Datatype properties whose domain is ``c`` or a named ancestor.

    Sorted by label (property identifier as tiebreak); a property reached
    through several ancestors appears once. Properties without a usable
    range fall back to string fields.
    """
    _require_class(graph, c)
    ancestors = superclass_closure(graph, c)
    specs: dict[Iri, PropertySpec] = {}
    for prop in graph.subjects(vocab.RDF_TYPE, vocab.OWL_DATATYPEPROPERTY):
        if not isinstance(prop, Iri) or prop in specs:
            continue
        domains = [d for d in graph.objects(prop, vocab.RDFS_DOMAIN) if isinstance(d, Iri)]
        applicable = sorted(d for d in domains if d in ancestors)
        if not applicable:
            continue
        specs[prop] = PropertySpec(
            property=prop,
            label=graph.label_of(prop),
            domain=applicable[0],
            datatype=_range_datatype(graph, prop),
        )
    return sorted(specs.values(), key=lambda s: (s.label, s.property))


def ontology_class_list(graph: Graph) -> list[Iri]:
    """Named declared classes, deterministically ordered."""
    return [s for s in graph.subjects(vocab.RDF_TYPE, vocab.OWL_CLASS) if isinstance(s, Iri)]


def validate_ontology(graph: Graph) -> None:
    """Load-time checks: decodable axioms, declared fillers, acyclic hierarchy.

    Raises InvalidOntology carrying every problem found.
    """
    problems: list[str] = []
    classes = ontology_class_list(graph)
    declared = set(classes)

    for c in classes:
        try:
            axiom = read_axiom(graph, c)
        except MalformedAxiom as exc:
            problems.append(str(exc))
            continue
        for r in axiom.definition or ():
            if r.filler not in declared:
                problems.append(f"definition of {c} references undeclared filler {r.filler}")
        for sup in axiom.named_superclasses:
            if sup not in declared:
                problems.append(f"{c} has undeclared superclass {sup}")

    edges = {
        (t.subject, t.object)
        for t in graph.match(p=vocab.RDFS_SUBCLASSOF)
        if isinstance(t.subject, Iri) and isinstance(t.object, Iri)
    }
    cycle = find_cycle(edges)
    if cycle:
        problems.append("cyclic hierarchy: " + " -> ".join(c.value for c in cycle))

    if problems:
        raise InvalidOntology(sorted(problems))
