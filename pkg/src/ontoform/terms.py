"""RDF term and statement model.

A node is either an :class:`Iri`, a :class:`BlankNode`, or a :class:`Literal`;
a :class:`Triple` is one subject-predicate-object statement over them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ontoform.errors import InvalidTriple

_XSD_STRING = "http://www.w3.org/2001/XMLSchema#string"
_RDF_LANGSTRING = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString"


@dataclass(frozen=True, slots=True, order=True)
class Iri:
    """An absolute IRI. Must be non-empty and contain no whitespace."""

    value: str

    def __post_init__(self) -> None:
        if not self.value or any(c.isspace() for c in self.value):
            raise ValueError(f"not a usable IRI: {self.value!r}")

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, slots=True, order=True)
class BlankNode:
    """A blank node. Labels are stable within one graph's lifetime."""

    label: str

    def __str__(self) -> str:
        return "_:" + self.label


@dataclass(frozen=True, slots=True, order=True)
class Literal:
    """A literal value: lexical form, datatype IRI, optional language tag.

    A language tag forces the datatype to rdf:langString; otherwise plain
    literals default to xsd:string.
    """

    lexical: str
    datatype: Iri = field(default=Iri(_XSD_STRING))
    language: str | None = None

    def __post_init__(self) -> None:
        if self.language is not None:
            object.__setattr__(self, "datatype", Iri(_RDF_LANGSTRING))

    def __str__(self) -> str:
        if self.language:
            return f'"{self.lexical}"@{self.language}'
        if self.datatype.value == _XSD_STRING:
            return f'"{self.lexical}"'
        return f'"{self.lexical}"^^<{self.datatype.value}>'


Term = Iri | BlankNode | Literal


@dataclass(frozen=True, slots=True)
class Triple:
    """One statement. Subjects are IRIs or blanks; predicates are IRIs."""

    subject: Term
    predicate: Term
    object: Term

    def __post_init__(self) -> None:
        if isinstance(self.subject, Literal):
            raise InvalidTriple(f"literal in subject position: {self.subject}")
        if not isinstance(self.subject, (Iri, BlankNode)):
            raise InvalidTriple(f"subject must be an IRI or blank node: {self.subject!r}")
        if not isinstance(self.predicate, Iri):
            raise InvalidTriple(f"predicate must be an IRI: {self.predicate!r}")
        if not isinstance(self.object, (Iri, BlankNode, Literal)):
            raise InvalidTriple(f"object is not a term: {self.object!r}")

    def __str__(self) -> str:
        return f"{self.subject} {self.predicate} {self.object} ."
