"""ontoform: ontology-driven chained entry forms for technical documents.

A thesaurus becomes a class hierarchy, merges with a domain ontology, and
defined-class axioms drive a wizard that chains entry forms until a product's
component tree is fully described, exported as RDF annotations and HTML.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

__version__ = "0.1.0"


def fixture_path(name: str) -> Path:
    """Filesystem path of a bundled sample file (ontology, thesaurus, scripts)."""
    return Path(str(resources.files("ontoform") / "fixtures" / name))
