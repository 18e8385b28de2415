import random

import pytest

from ontoform import fixture_path, vocab
from ontoform.axioms import (
    ClassAxiom,
    ConceptKind,
    PropertySpec,
    classify_concept,
    components_of,
    properties_of,
    read_axiom,
    superclass_closure,
    validate_ontology,
)
from ontoform.errors import InvalidOntology, MalformedAxiom, UnknownClass
from ontoform.graph import Graph
from ontoform.terms import BlankNode, Iri, Literal, Triple
from ontoform.turtle import parse_turtle, serialize_turtle

from builders import random_acyclic_ontology, random_axiom_ontology
from oracles import naive_components

DT = "http://www.cstb.fr/ontodt#"


def dt(name: str) -> Iri:
    return Iri(DT + name)


@pytest.fixture(scope="module")
def ontology() -> Graph:
    return parse_turtle(fixture_path("technical_document.ttl").read_text(encoding="utf-8"))


class TestReadAxiom:
    def test_defined_class_decodes_fully(self, ontology):
        axiom = read_axiom(ontology, dt("VerrePolymere"))
        assert axiom.named_superclasses == (dt("ModulePhotoV"),)
        assert axiom.definition is not None
        assert [r.property for r in axiom.definition] == [dt("hasComponent")] * 5
        fillers = [r.filler for r in axiom.definition]
        assert dt("CableElectrique") in fillers
        assert dt("Cadre") in fillers

    def test_primitive_class_has_no_definition(self, ontology):
        axiom = read_axiom(ontology, dt("Cadre"))
        assert axiom == ClassAxiom(dt("Cadre"), (), None)

    def test_unknown_class_rejected(self, ontology):
        with pytest.raises(UnknownClass):
            read_axiom(ontology, dt("Fantome"))

    def test_restriction_without_on_property_rejected(self):
        g = Graph()
        cls = dt("X")
        g.add(Triple(cls, vocab.RDF_TYPE, vocab.OWL_CLASS))
        broken = g.fresh_blank()
        g.add(Triple(broken, vocab.OWL_SOMEVALUESFROM, cls))
        definition = g.fresh_blank()
        g.add(Triple(definition, vocab.OWL_INTERSECTIONOF, g.add_collection([broken])))
        g.add(Triple(cls, vocab.RDFS_SUBCLASSOF, definition))
        with pytest.raises(MalformedAxiom):
            read_axiom(g, cls)

    def test_two_anonymous_definitions_rejected(self):
        g = Graph()
        cls = dt("X")
        g.add(Triple(cls, vocab.RDF_TYPE, vocab.OWL_CLASS))
        for _ in range(2):
            definition = g.fresh_blank()
            g.add(Triple(definition, vocab.OWL_INTERSECTIONOF, g.add_collection([])))
            g.add(Triple(cls, vocab.RDFS_SUBCLASSOF, definition))
        with pytest.raises(MalformedAxiom):
            read_axiom(g, cls)

    def test_broken_collection_surfaces_as_malformed_axiom(self):
        g = Graph()
        cls = dt("X")
        g.add(Triple(cls, vocab.RDF_TYPE, vocab.OWL_CLASS))
        definition = g.fresh_blank()
        dangling = g.fresh_blank()
        g.add(Triple(dangling, vocab.RDF_FIRST, cls))  # no rdf:rest
        g.add(Triple(definition, vocab.OWL_INTERSECTIONOF, dangling))
        g.add(Triple(cls, vocab.RDFS_SUBCLASSOF, definition))
        with pytest.raises(MalformedAxiom):
            read_axiom(g, cls)


class TestClassify:
    def test_defined(self, ontology):
        assert classify_concept(ontology, dt("VerrePolymere")) is ConceptKind.DEFINED

    def test_primitive(self, ontology):
        assert classify_concept(ontology, dt("Cadre")) is ConceptKind.PRIMITIVE

    def test_bare_declaration_is_primitive(self):
        g = Graph().add(Triple(dt("Seul"), vocab.RDF_TYPE, vocab.OWL_CLASS))
        assert classify_concept(g, dt("Seul")) is ConceptKind.PRIMITIVE

    def test_unknown(self, ontology):
        with pytest.raises(UnknownClass):
            classify_concept(ontology, dt("Fantome"))


class TestComponents:
    def test_defined_class_lists_fillers_in_collection_order(self, ontology):
        pairs = components_of(ontology, dt("VerrePolymere"))
        assert [f for _, f in pairs] == [
            dt("CableElectrique"),
            dt("Cadre"),
            dt("CellulePhotoV"),
            dt("FilmPolymere"),
            dt("VerreInterieur"),
        ]
        assert all(p == dt("hasComponent") for p, _ in pairs)

    def test_primitive_class_gives_empty_list(self, ontology):
        assert components_of(ontology, dt("CellulePhotoV")) == []

    def test_primitive_implies_no_components(self, ontology):
        for cls in ("Cadre", "ModuleRigide", "Etancheite"):
            assert classify_concept(ontology, dt(cls)) is ConceptKind.PRIMITIVE
            assert components_of(ontology, dt(cls)) == []

    def test_agrees_with_naive_decoder_on_randomized_ontologies(self):
        rng = random.Random(40221)
        for round_index in range(1000):
            g, classes = random_axiom_ontology(rng)
            cls = rng.choice(classes)
            assert components_of(g, cls) == naive_components(g, cls)

    def test_order_survives_serialization_round_trip(self):
        rng = random.Random(5150)
        for _ in range(50):
            g, classes = random_axiom_ontology(rng, max_classes=8, max_restrictions=6)
            reparsed = parse_turtle(serialize_turtle(g))
            for cls in classes:
                assert components_of(reparsed, cls) == components_of(g, cls)


class TestProperties:
    def test_inherited_through_named_superclass(self, ontology):
        specs = properties_of(ontology, dt("VerrePolymere"))
        assert [(s.label, s.datatype) for s in specs] == [
            ("fabricant", vocab.XSD_STRING),
            ("longueur", vocab.XSD_DECIMAL),
            ("poids", vocab.XSD_DECIMAL),
        ]
        assert all(s.domain == dt("ModulePhotoV") for s in specs)

    def test_no_properties(self, ontology):
        assert properties_of(ontology, dt("Cadre")) == []

    def test_own_domain_listed(self, ontology):
        specs = properties_of(ontology, dt("CableElectrique"))
        assert {s.property for s in specs} == {dt("datePose"), dt("nombreBrins"), dt("isolant")}

    def test_diamond_inheritance_deduplicates(self):
        g = Graph()
        for name in ("Top", "L", "R", "Bottom"):
            g.add(Triple(dt(name), vocab.RDF_TYPE, vocab.OWL_CLASS))
        g.add(Triple(dt("L"), vocab.RDFS_SUBCLASSOF, dt("Top")))
        g.add(Triple(dt("R"), vocab.RDFS_SUBCLASSOF, dt("Top")))
        g.add(Triple(dt("Bottom"), vocab.RDFS_SUBCLASSOF, dt("L")))
        g.add(Triple(dt("Bottom"), vocab.RDFS_SUBCLASSOF, dt("R")))
        prop = dt("masse")
        g.add(Triple(prop, vocab.RDF_TYPE, vocab.OWL_DATATYPEPROPERTY))
        g.add(Triple(prop, vocab.RDFS_DOMAIN, dt("Top")))
        g.add(Triple(prop, vocab.RDFS_RANGE, vocab.XSD_DECIMAL))
        specs = properties_of(g, dt("Bottom"))
        assert len(specs) == 1

    def test_missing_range_falls_back_to_string(self):
        g = Graph()
        g.add(Triple(dt("X"), vocab.RDF_TYPE, vocab.OWL_CLASS))
        prop = dt("mystere")
        g.add(Triple(prop, vocab.RDF_TYPE, vocab.OWL_DATATYPEPROPERTY))
        g.add(Triple(prop, vocab.RDFS_DOMAIN, dt("X")))
        (spec,) = properties_of(g, dt("X"))
        assert spec.datatype == vocab.XSD_STRING

    def test_monotone_over_random_hierarchies(self):
        rng = random.Random(77)
        for _ in range(100):
            g, _ = random_acyclic_ontology(rng)
            for cls in list(g.subjects(vocab.RDF_TYPE, vocab.OWL_CLASS)):
                if not isinstance(cls, Iri):
                    continue
                mine = {s.property for s in properties_of(g, cls)}
                for sup in superclass_closure(g, cls):
                    inherited = {s.property for s in properties_of(g, sup)}
                    assert inherited <= mine

    def test_spec_with_bad_datatype_rejected(self):
        with pytest.raises(MalformedAxiom):
            PropertySpec(dt("p"), "p", dt("X"), Iri("http://ex/unknown"))


class TestValidate:
    def test_fixture_is_valid(self, ontology):
        validate_ontology(ontology)

    def test_undeclared_filler_reported(self):
        g = Graph()
        cls = dt("X")
        g.add(Triple(cls, vocab.RDF_TYPE, vocab.OWL_CLASS))
        node = g.fresh_blank()
        g.add(Triple(node, vocab.OWL_ONPROPERTY, dt("hasComponent")))
        g.add(Triple(node, vocab.OWL_SOMEVALUESFROM, dt("Fantome")))
        definition = g.fresh_blank()
        g.add(Triple(definition, vocab.OWL_INTERSECTIONOF, g.add_collection([node])))
        g.add(Triple(cls, vocab.RDFS_SUBCLASSOF, definition))
        with pytest.raises(InvalidOntology) as err:
            validate_ontology(g)
        assert any("Fantome" in p for p in err.value.problems)

    def test_cyclic_hierarchy_reported(self):
        g = Graph()
        for name in ("A", "B"):
            g.add(Triple(dt(name), vocab.RDF_TYPE, vocab.OWL_CLASS))
        g.add(Triple(dt("A"), vocab.RDFS_SUBCLASSOF, dt("B")))
        g.add(Triple(dt("B"), vocab.RDFS_SUBCLASSOF, dt("A")))
        with pytest.raises(InvalidOntology) as err:
            validate_ontology(g)
        assert any("cyclic" in p for p in err.value.problems)

    def test_all_problems_collected(self):
        g = Graph()
        g.add(Triple(dt("A"), vocab.RDF_TYPE, vocab.OWL_CLASS))
        g.add(Triple(dt("A"), vocab.RDFS_SUBCLASSOF, dt("Ghost")))
        g.add(Triple(dt("A"), vocab.RDFS_SUBCLASSOF, dt("Ghost2")))
        with pytest.raises(InvalidOntology) as err:
            validate_ontology(g)
        assert len(err.value.problems) == 2

    def test_random_acyclic_ontologies_are_valid(self):
        rng = random.Random(8080)
        for _ in range(50):
            g, _ = random_acyclic_ontology(rng)
            validate_ontology(g)
