"""OWL ontology emitter.

Cardinalities become unqualified ``owl:minCardinality``/``owl:maxCardinality``
restrictions and ranges become ``owl:allValuesFrom`` restrictions, one
restriction node per axiom. Value sets are enumerated classes
(``owl:oneOf``) whose members are named individuals. For list-valued
properties the range restriction describes the list members and carries an
``empusa:listKind`` annotation naming the container.
"""

from __future__ import annotations

from ..errors import EmitError
from ..rdf import (
    IRI,
    OWL,
    RDF_FIRST,
    RDF_NIL,
    RDF_REST,
    RDF_TYPE,
    RDFS,
    SKOS,
    XSD,
    BNode,
    Graph,
    Literal,
)
from ..schema import ClassRef, ContainerKind, Datatype, ExternalIri, Schema, ValueSetRef

#: annotation recording a list marker on the range restriction
LIST_KIND = "http://empusa.org/0.1#listKind"

_A = IRI(RDF_TYPE)


def _lit_int(n: int) -> Literal:
    return Literal(str(n), XSD + "nonNegativeInteger")


def property_kinds(schema: Schema) -> dict[str, str]:
    """predicate -> 'object' | 'datatype', rejecting mixed usage."""
    kinds: dict[str, str] = {}
    where: dict[str, str] = {}
    for cls in sorted(schema.classes):
        for pd in schema.classes[cls].own_properties:
            kind = "datatype" if isinstance(pd.value_type, Datatype) else "object"
            if kinds.setdefault(pd.predicate, kind) != kind:
                raise EmitError(
                    "conflicting-global-property",
                    f"<{pd.predicate}> is a {kinds[pd.predicate]} property on <{where[pd.predicate]}>"
                    f" but a {kind} property on <{cls}>",
                )
            where.setdefault(pd.predicate, cls)
    return kinds


def emit_owl(schema: Schema) -> Graph:
    g = Graph(prefixes=schema.prefixes)
    if "skos" not in g.prefixes and g.prefixes.label_for(SKOS) is None:
        g.prefixes.bind("skos", SKOS)
    counter = iter(range(10**9))

    def fresh() -> BNode:
        return BNode(f"r{next(counter)}")

    if schema.ontology_iri:
        g.add(IRI(schema.ontology_iri), _A, IRI(OWL + "Ontology"))
        if schema.ontology_label:
            g.add(IRI(schema.ontology_iri), IRI(RDFS + "label"), Literal(schema.ontology_label))

    kinds = property_kinds(schema)
    descriptions: dict[str, str] = {}
    for cls in sorted(schema.classes):
        for pd in schema.classes[cls].own_properties:
            if pd.description and pd.predicate not in descriptions:
                descriptions[pd.predicate] = pd.description
    for pred in sorted(kinds):
        node = IRI(pred)
        kind = OWL + ("DatatypeProperty" if kinds[pred] == "datatype" else "ObjectProperty")
        g.add(node, _A, IRI(kind))
        if pred in descriptions:
            g.add(node, IRI(RDFS + "comment"), Literal(descriptions[pred]))

    enum_root = schema.vocab.enumerated_root
    if schema.value_sets:
        g.add(IRI(enum_root), _A, IRI(OWL + "Class"))
    for root in sorted(schema.value_sets):
        vs = schema.value_sets[root]
        node = IRI(root)
        g.add(node, _A, IRI(OWL + "Class"))
        g.add(node, IRI(RDFS + "subClassOf"), IRI(enum_root))
        if vs.label:
            g.add(node, IRI(RDFS + "label"), Literal(vs.label))
        if vs.description:
            g.add(node, IRI(SKOS + "description"), Literal(vs.description))
        members = sorted(vs.member_iris)
        head: IRI | BNode = IRI(RDF_NIL)
        for m in reversed(members):
            cell = fresh()
            g.add(cell, IRI(RDF_FIRST), IRI(m))
            g.add(cell, IRI(RDF_REST), head)
            head = cell
        g.add(node, IRI(OWL + "oneOf"), head)
        for m in vs.members:
            g.add(IRI(m.iri), _A, IRI(OWL + "NamedIndividual"))
            g.add(IRI(m.iri), _A, node)
            if m.label:
                g.add(IRI(m.iri), IRI(RDFS + "label"), Literal(m.label))

    sub = IRI(RDFS + "subClassOf")
    for cls in sorted(schema.classes):
        cdef = schema.classes[cls]
        node = IRI(cls)
        g.add(node, _A, IRI(OWL + "Class"))
        for p in cdef.parents:
            g.add(node, sub, IRI(p))
        if cdef.label:
            g.add(node, IRI(RDFS + "label"), Literal(cdef.label))
        if cdef.description:
            g.add(node, IRI(SKOS + "description"), Literal(cdef.description))
        for pd in schema.effective[cls]:
            pred = IRI(pd.predicate)
            vt = pd.value_type
            if isinstance(vt, (Datatype, ClassRef)):
                rng = IRI(vt.iri)
            elif isinstance(vt, ValueSetRef):
                rng = IRI(vt.root)
            else:
                assert isinstance(vt, ExternalIri)
                rng = IRI(OWL + "Thing")
            r = fresh()
            g.add(node, sub, r)
            g.add(r, _A, IRI(OWL + "Restriction"))
            g.add(r, IRI(OWL + "onProperty"), pred)
            g.add(r, IRI(OWL + "allValuesFrom"), rng)
            if pd.container is not ContainerKind.NONE:
                g.add(r, IRI(LIST_KIND), Literal(pd.container.label))
            if pd.cardinality.min >= 1:
                r = fresh()
                g.add(node, sub, r)
                g.add(r, _A, IRI(OWL + "Restriction"))
                g.add(r, IRI(OWL + "onProperty"), pred)
                g.add(r, IRI(OWL + "minCardinality"), _lit_int(1))
            if pd.cardinality.max_one:
                r = fresh()
                g.add(node, sub, r)
                g.add(r, _A, IRI(OWL + "Restriction"))
                g.add(r, IRI(OWL + "onProperty"), pred)
                g.add(r, IRI(OWL + "maxCardinality"), _lit_int(1))
    if g.prefixes.label_for(LIST_KIND.rsplit("#", 1)[0] + "#") is None and "empusa" not in g.prefixes:
        g.prefixes.bind("empusa", LIST_KIND.rsplit("#", 1)[0] + "#")
    return g
