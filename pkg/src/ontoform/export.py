"""Session exports: the RDF annotation file and a readable HTML document.

Both are pure functions of a session snapshot and byte-deterministic, so
equal sessions always export identical files.
"""

from __future__ import annotations

import html

from ontoform.orchestrator import Session, form_bindings
from ontoform.terms import Iri
from ontoform.turtle import serialize_turtle


def to_rdf(session: Session) -> str:
    """Canonical Turtle of the annotation graph, with a provenance header."""
    header = [
        f"# session: {session.session_id}",
        f"# product: {session.product.value}",
        f"# ontology: sha256:{session.ontology_hash}",
    ]
    return "\n".join(header) + "\n" + serialize_turtle(session.annotations)


def _instance_index(session: Session) -> dict[Iri, int]:
    return {answer.instance: i for i, answer in enumerate(session.answers)}


def component_links(session: Session, instance: Iri) -> list[tuple[Iri, Iri]]:
    """(property, child instance) links from one instance, in entry order."""
    index = _instance_index(session)
    links = [
        (t.predicate, t.object)
        for t in session.annotations.match(s=instance)
        if isinstance(t.object, Iri) and t.object in index
    ]
    return sorted(links, key=lambda pair: index[pair[1]])


def instance_tree(session: Session) -> dict | None:
    """Answered instances as a nested structure, children in entry order.

    Shape: {"instance", "concept", "label", "designation", "children": [...]}.
    Returns None while nothing is answered yet.
    """
    if not session.answers:
        return None
    nodes: dict[Iri, dict] = {}
    for answer in session.answers:
        nodes[answer.instance] = {
            "instance": answer.instance.value,
            "concept": answer.concept.value,
            "label": session.graph.label_of(answer.concept),
            "designation": answer.values.get("designation", ""),
            "children": [],
        }
    for answer in session.answers:
        for _, child in component_links(session, answer.instance):
            nodes[answer.instance]["children"].append(nodes[child])
    return nodes[session.answers[0].instance]


_STYLE = """\
body { font-family: sans-serif; margin: 2rem auto; max-width: 50rem; color: #222; }
h1 { border-bottom: 2px solid #446; padding-bottom: .3rem; }
section { margin: 1.5rem 0; padding: 1rem; border: 1px solid #ccd; border-radius: 6px; }
table { border-collapse: collapse; margin: .5rem 0; }
td, th { border: 1px solid #ccd; padding: .25rem .6rem; text-align: left; }
ul.components { margin: .5rem 0 0 1rem; }
p.meta { color: #667; font-size: .85rem; }
"""


def _instance_anchor(instance: Iri) -> str:
    return instance.value.rsplit(":", 1)[-1]


def to_html(session: Session) -> str:
    """Self-contained document: one section per answered form, in order."""
    graph = session.graph
    title = graph.label_of(session.product)
    out = [
        "<!DOCTYPE html>",
        '<html lang="fr">',
        "<head>",
        '<meta charset="utf-8">',
        f"<title>{html.escape(title)}</title>",
        f"<style>{_STYLE}</style>",
        "</head>",
        "<body>",
        f"<h1>{html.escape(title)}</h1>",
        f'<p class="meta">session {html.escape(session.session_id)}, '
        f"ontology sha256:{html.escape(session.ontology_hash)}</p>",
    ]
    if not session.answers:
        out.append('<p class="empty">No entries yet.</p>')

    for i, answer in enumerate(session.answers):
        concept_label = graph.label_of(answer.concept)
        designation = answer.values.get("designation", "")
        out.append(f'<section id="{html.escape(_instance_anchor(answer.instance))}">')
        out.append(f"<h2>{html.escape(concept_label)}: {html.escape(designation)}</h2>")

        rows = []
        for form_field, _ in form_bindings(graph, answer.concept, i > 0):
            if form_field.id == "designation":
                continue
            value = answer.values.get(form_field.id)
            if value:
                rows.append(
                    f"<tr><td>{html.escape(form_field.label)}</td>"
                    f"<td>{html.escape(value)}</td></tr>"
                )
        if rows:
            out.append("<table>")
            out.extend(rows)
            out.append("</table>")

        links = component_links(session, answer.instance)
        if links:
            out.append('<ul class="components">')
            by_instance = {a.instance: a for a in session.answers}
            for prop, child in links:
                child_answer = by_instance[child]
                child_label = graph.label_of(child_answer.concept)
                child_designation = child_answer.values.get("designation", "")
                out.append(
                    f'<li>{html.escape(graph.label_of(prop))}: '
                    f'<a href="#{html.escape(_instance_anchor(child))}">'
                    f"{html.escape(child_label)}: {html.escape(child_designation)}</a></li>"
                )
            out.append("</ul>")
        out.append("</section>")

    out.append("</body>")
    out.append("</html>")
    return "\n".join(out) + "\n"
