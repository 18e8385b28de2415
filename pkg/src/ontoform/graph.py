"""In-memory triple graph with subject/predicate indexes.

Statements are a set (inserting a duplicate is a no-op). Pattern matching
uses whichever index is bound; collection traversal walks first/rest chains
with strict well-formedness checks.
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterable, Iterator

from ontoform import vocab
from ontoform.errors import MalformedList
from ontoform.terms import BlankNode, Iri, Literal, Term, Triple


def term_sort_key(term: Term) -> tuple[int, str, str, str]:
    """Total order over mixed terms: IRIs, then blanks, then literals."""
    if isinstance(term, Iri):
        return (0, term.value, "", "")
    if isinstance(term, BlankNode):
        return (1, term.label, "", "")
    return (2, term.lexical, term.datatype.value, term.language or "")


def triple_sort_key(t: Triple) -> tuple:
    return (term_sort_key(t.subject), term_sort_key(t.predicate), term_sort_key(t.object))


class Graph:
    """A set of triples plus a prefix table, indexed by subject and predicate."""

    def __init__(self, namespaces: dict[str, str] | None = None):
        self._statements: set[Triple] = set()
        self._by_subject: dict[Term, set[Triple]] = defaultdict(set)
        self._by_predicate: dict[Term, set[Triple]] = defaultdict(set)
        self._blank_labels: set[str] = set()
        self.namespaces: dict[str, str] = dict(namespaces or {})
        self._blank_counter = 0

    # -- construction -------------------------------------------------

    def add(self, triple: Triple) -> Graph:
        """Insert one statement; duplicates leave the graph unchanged."""
        if triple in self._statements:
            return self
        self._statements.add(triple)
        self._by_subject[triple.subject].add(triple)
        self._by_predicate[triple.predicate].add(triple)
        for term in (triple.subject, triple.object):
            if isinstance(term, BlankNode):
                self._blank_labels.add(term.label)
        return self

    def add_all(self, triples: Iterable[Triple]) -> Graph:
        for t in triples:
            self.add(t)
        return self

    def bind(self, prefix: str, base: str) -> None:
        self.namespaces[prefix] = base

    def fresh_blank(self) -> BlankNode:
        """Mint a blank node label unused in this graph."""
        while True:
            self._blank_counter += 1
            label = f"g{self._blank_counter}"
            if label not in self._blank_labels:
                self._blank_labels.add(label)
                return BlankNode(label)

    def update(self, other: Graph, rename_blanks: bool = True) -> Graph:
        """Add all statements of ``other``.

        With ``rename_blanks`` the other graph's blank nodes get fresh labels
        so independent sources cannot capture each other's blanks.
        """
        mapping: dict[BlankNode, BlankNode] = {}

        def carry(term: Term) -> Term:
            if rename_blanks and isinstance(term, BlankNode):
                if term not in mapping:
                    mapping[term] = self.fresh_blank()
                return mapping[term]
            return term

        for t in sorted(other, key=triple_sort_key):
            self.add(Triple(carry(t.subject), t.predicate, carry(t.object)))
        for prefix, base in other.namespaces.items():
            self.namespaces.setdefault(prefix, base)
        return self

    def copy(self) -> Graph:
        g = Graph(self.namespaces)
        for t in self._statements:
            g.add(t)
        g._blank_counter = self._blank_counter
        return g

    # -- queries ------------------------------------------------------

    def match(self, s: Term | None = None, p: Term | None = None, o: Term | None = None) -> set[Triple]:
        """All statements matching the bound positions; None matches anything."""
        if s is not None:
            candidates: Iterable[Triple] = self._by_subject.get(s, ())
        elif p is not None:
            candidates = self._by_predicate.get(p, ())
        else:
            candidates = self._statements
        return {
            t
            for t in candidates
            if (s is None or t.subject == s)
            and (p is None or t.predicate == p)
            and (o is None or t.object == o)
        }

    def objects(self, s: Term, p: Term) -> list[Term]:
        """Objects of (s, p, ?), deterministically ordered."""
        return sorted((t.object for t in self.match(s, p)), key=term_sort_key)

    def subjects(self, p: Term, o: Term) -> list[Term]:
        """Subjects of (?, p, o), deterministically ordered."""
        return sorted((t.subject for t in self.match(None, p, o)), key=term_sort_key)

    def value(self, s: Term, p: Term) -> Term | None:
        """The single object of (s, p, ?), or None; first in term order if several."""
        found = self.objects(s, p)
        return found[0] if found else None

    def label_of(self, c: Iri) -> str:
        """rdfs:label lexical form, falling back to the IRI's local name."""
        for obj in self.objects(c, vocab.RDFS_LABEL):
            if isinstance(obj, Literal):
                return obj.lexical
        return vocab.local_name(c)

    # -- collections --------------------------------------------------

    def list_members(self, head: Term) -> list[Term]:
        """Members of the first/rest collection starting at ``head``.

        Raises MalformedList when a cell lacks exactly one first and one
        rest, the chain cycles, or it does not terminate at nil.
        """
        members: list[Term] = []
        seen: set[Term] = set()
        cell = head
        while cell != vocab.RDF_NIL:
            if not isinstance(cell, (Iri, BlankNode)):
                raise MalformedList(f"collection cell is not a node: {cell}")
            if cell in seen:
                raise MalformedList(f"collection chain cycles at {cell}")
            seen.add(cell)
            firsts = self.objects(cell, vocab.RDF_FIRST)
            rests = self.objects(cell, vocab.RDF_REST)
            if len(firsts) != 1 or len(rests) != 1:
                raise MalformedList(
                    f"cell {cell} has {len(firsts)} first and {len(rests)} rest statements"
                )
            members.append(firsts[0])
            cell = rests[0]
        return members

    def add_collection(self, members: Iterable[Term]) -> Term:
        """Build a first/rest chain for ``members``; returns the head term."""
        items = list(members)
        if not items:
            return vocab.RDF_NIL
        cells = [self.fresh_blank() for _ in items]
        for cell, item, rest in zip(cells, items, cells[1:] + [vocab.RDF_NIL]):
            self.add(Triple(cell, vocab.RDF_FIRST, item))
            self.add(Triple(cell, vocab.RDF_REST, rest))
        return cells[0]

    # -- protocol -----------------------------------------------------

    def __len__(self) -> int:
        return len(self._statements)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self._statements)

    def __contains__(self, triple: Triple) -> bool:
        return triple in self._statements

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._statements == other._statements

    def __repr__(self) -> str:
        return f"<Graph with {len(self)} statements>"
