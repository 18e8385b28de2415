"""Fixed vocabulary identifiers used throughout the engine.

Only the handful of RDF/RDFS/OWL terms the axiom and collection machinery
actually needs, plus SKOS for thesaurus input, XSD datatypes for form
values, and the tool's own annotation vocabulary.
"""

from __future__ import annotations

from ontoform.terms import Iri

RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS_NS = "http://www.w3.org/2000/01/rdf-schema#"
OWL_NS = "http://www.w3.org/2002/07/owl#"
XSD_NS = "http://www.w3.org/2001/XMLSchema#"
SKOS_NS = "http://www.w3.org/2004/02/skos/core#"

# Annotation vocabulary for form answers (instance naming and multiplicity).
ANN_NS = "urn:ontoform:vocab#"

RDF_TYPE = Iri(RDF_NS + "type")
RDF_FIRST = Iri(RDF_NS + "first")
RDF_REST = Iri(RDF_NS + "rest")
RDF_NIL = Iri(RDF_NS + "nil")
RDF_LANGSTRING = Iri(RDF_NS + "langString")

RDFS_SUBCLASSOF = Iri(RDFS_NS + "subClassOf")
RDFS_LABEL = Iri(RDFS_NS + "label")
RDFS_DOMAIN = Iri(RDFS_NS + "domain")
RDFS_RANGE = Iri(RDFS_NS + "range")

OWL_CLASS = Iri(OWL_NS + "Class")
OWL_INTERSECTIONOF = Iri(OWL_NS + "intersectionOf")
OWL_RESTRICTION = Iri(OWL_NS + "Restriction")
OWL_ONPROPERTY = Iri(OWL_NS + "onProperty")
OWL_SOMEVALUESFROM = Iri(OWL_NS + "someValuesFrom")
OWL_EQUIVALENTCLASS = Iri(OWL_NS + "equivalentClass")
OWL_OBJECTPROPERTY = Iri(OWL_NS + "ObjectProperty")
OWL_DATATYPEPROPERTY = Iri(OWL_NS + "DatatypeProperty")

XSD_STRING = Iri(XSD_NS + "string")
XSD_DECIMAL = Iri(XSD_NS + "decimal")
XSD_INTEGER = Iri(XSD_NS + "integer")
XSD_BOOLEAN = Iri(XSD_NS + "boolean")
XSD_DATE = Iri(XSD_NS + "date")

SKOS_CONCEPT = Iri(SKOS_NS + "Concept")
SKOS_PREFLABEL = Iri(SKOS_NS + "prefLabel")
SKOS_BROADER = Iri(SKOS_NS + "broader")
SKOS_NARROWER = Iri(SKOS_NS + "narrower")

ANN_DESIGNATION = Iri(ANN_NS + "designation")
ANN_QUANTITY = Iri(ANN_NS + "quantite")

WELL_KNOWN_PREFIXES = {
    "rdf": RDF_NS,
    "rdfs": RDFS_NS,
    "owl": OWL_NS,
    "xsd": XSD_NS,
    "skos": SKOS_NS,
}


def local_name(iri: Iri | str) -> str:
    """Fragment after '#', else last path segment, else the full IRI."""
    value = iri.value if isinstance(iri, Iri) else iri
    if "#" in value:
        tail = value.rsplit("#", 1)[1]
        if tail:
            return tail
    tail = value.rstrip("/").rsplit("/", 1)[-1]
    return tail or value
