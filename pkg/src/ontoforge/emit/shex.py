"""ShExC emitter."""

from __future__ import annotations

from ..rdf import RDF_FIRST, RDF_NIL, RDF_REST, RDF_TYPE, XSD
from ..schema import ClassRef, ContainerKind, Datatype, ExternalIri, PropertyDef, Schema, ValueSetRef
from .common import accessor_name, curie

HEADER = """\
# Shape expressions generated from the ontology definition.
#
# Every shape is CLOSED: a predicate not declared for the class is a
# violation. EXTRA rdf:type tolerates additional types on a node.
# Lists marked '=' are rdf:first/rdf:rest collections, validated through
# the auxiliary '-list' shapes. Lists marked '~' are entry nodes carrying
# {index} (integer, from 0) and {value}; index uniqueness is not
# expressible in ShEx and is checked by the ontoforge validator only.
"""

_MODIFIER = {(1, True): "", (0, True): " ?", (0, False): " *", (1, False): " +"}


def list_shape_iri(class_iri: str, predicate: str) -> str:
    return f"{class_iri}-{accessor_name(predicate)}-list"


def entry_shape_iri(class_iri: str, predicate: str) -> str:
    return f"{class_iri}-{accessor_name(predicate)}-entry"


def _label(schema: Schema, iri: str) -> str:
    return curie(schema, iri)


def _class_ref(schema: Schema, target: str) -> str:
    alts = [target] + sorted(schema.descendants.get(target, ()))
    refs = [f"@{_label(schema, c)}" for c in alts]
    if len(refs) == 1:
        return refs[0]
    return "( " + " OR ".join(refs) + " )"


def _member_expr(schema: Schema, pd: PropertyDef) -> str:
    vt = pd.value_type
    if isinstance(vt, Datatype):
        return _label(schema, vt.iri)
    if isinstance(vt, ClassRef):
        return _class_ref(schema, vt.iri)
    if isinstance(vt, ValueSetRef):
        members = sorted(schema.value_sets[vt.root].member_iris)
        return "[ " + " ".join(_label(schema, m) for m in members) + (" ]" if members else "]")
    assert isinstance(vt, ExternalIri)
    return "IRI"


def _shape(schema: Schema, label: str, constraints: list[str], closed: bool = True, extra_type: bool = False) -> str:
    head = label
    if closed:
        head += " CLOSED"
    if extra_type:
        head += f" EXTRA {_label(schema, RDF_TYPE)}"
    if not constraints:
        return head + " {\n}\n"
    return head + " {\n" + " ;\n".join("  " + c for c in constraints) + "\n}\n"


def emit_shex(schema: Schema) -> str:
    vocab = schema.vocab
    header = HEADER.format(index=curie(schema, vocab.list_index), value=curie(schema, vocab.list_value))
    out = [header, "\n"]
    for label, ns in schema.prefixes.items():
        out.append(f"PREFIX {label}: <{ns}>\n")
    rdf_type = _label(schema, RDF_TYPE)
    aux: list[str] = []
    for cls in sorted(schema.classes):
        constraints = [f"{rdf_type} [ {_label(schema, cls)} ]"]
        for pd in schema.effective[cls]:
            pred = _label(schema, pd.predicate)
            member = _member_expr(schema, pd)
            card = pd.cardinality
            if pd.container is ContainerKind.ORDERED:
                lst = _label(schema, list_shape_iri(cls, pd.predicate))
                nil = _label(schema, RDF_NIL)
                if card.min == 0:
                    constraints.append(f"{pred} ( @{lst} OR [ {nil} ] ) ?")
                else:
                    constraints.append(f"{pred} @{lst}")
                aux.append(
                    _shape(
                        schema,
                        lst,
                        [
                            f"{_label(schema, RDF_FIRST)} {member}",
                            f"{_label(schema, RDF_REST)} ( @{lst} OR [ {nil} ] )",
                        ],
                    )
                )
            elif pd.container is ContainerKind.NUMBERED:
                entry = _label(schema, entry_shape_iri(cls, pd.predicate))
                constraints.append(f"{pred} @{entry}{_MODIFIER[(card.min, False)]}")
                aux.append(
                    _shape(
                        schema,
                        entry,
                        [
                            f"{_label(schema, vocab.list_index)} {_label(schema, XSD + 'integer')}",
                            f"{_label(schema, vocab.list_value)} {member}",
                        ],
                    )
                )
            else:
                constraints.append(f"{pred} {member}{_MODIFIER[(card.min, card.max_one)]}")
        out.append("\n")
        out.append(_shape(schema, _label(schema, cls), constraints, extra_type=True))
    for shape in aux:
        out.append("\n")
        out.append(shape)
    return "".join(out)
