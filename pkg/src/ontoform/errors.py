"""Engine error hierarchy.

Every failure the engine can signal lives here so the HTTP facade and the
CLI can map errors to status codes / exit codes from one table.
"""

from __future__ import annotations


class OntoformError(Exception):
    """Base class for all engine errors."""


class InvalidTriple(OntoformError):
    """A statement violates the term-position rules."""


class MalformedList(OntoformError):
    """A first/rest collection chain is broken, cyclic, or unterminated."""


class CyclicHierarchy(OntoformError):
    """The subclass hierarchy contains a cycle."""

    def __init__(self, cycle: list[str]):
        self.cycle = cycle
        super().__init__("cyclic hierarchy: " + " -> ".join(cycle))


class InvalidConceptScheme(OntoformError):
    """A thesaurus violates its structural invariants."""


class UnknownClass(OntoformError):
    """The named class is not declared in the ontology."""


class MalformedAxiom(OntoformError):
    """A class definition cannot be decoded from its statements."""


class InvalidOntology(OntoformError):
    """Ontology failed load-time validation."""

    def __init__(self, problems: list[str]):
        self.problems = problems
        super().__init__("; ".join(problems))


class NotAProduct(OntoformError):
    """The chosen class is not below the configured product root."""


class SessionComplete(OntoformError):
    """No form is pending: the session already reached Complete."""


class StaleForm(OntoformError):
    """The submitted form id does not match the currently pending form."""


class ValidationFailed(OntoformError):
    """One or more submitted values are invalid. The session is unchanged."""

    def __init__(self, field_errors: list[tuple[str, str]]):
        self.field_errors = field_errors
        detail = "; ".join(f"{f}: {m}" for f, m in field_errors)
        super().__init__(f"validation failed: {detail}")


class CyclicDefinition(OntoformError):
    """A defined concept recurs on its own expansion path."""

    def __init__(self, cycle: list[str]):
        self.cycle = cycle
        super().__init__("cyclic definition: " + " -> ".join(cycle))


class OntologyMismatch(OntoformError):
    """A saved session references a different ontology content hash."""


class CorruptSession(OntoformError):
    """A saved session document violates the persistence schema."""
