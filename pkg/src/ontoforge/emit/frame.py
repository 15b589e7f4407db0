"""JSON-LD frame documents."""

from __future__ import annotations

import json

from ..errors import EmitError, UnknownClassError
from ..rdf import XSD_STRING
from ..schema import ClassRef, ContainerKind, Datatype, Schema
from .common import accessor_names


def canonical_json(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _compact(schema: Schema, iri: str) -> str:
    c = schema.prefixes.compact(iri)
    if c is None or c.startswith(":"):
        return iri
    return c


def _add_terms(schema: Schema, cls: str, context: dict) -> None:
    for pred, name in accessor_names(schema, cls).items():
        pd = next(p for p in schema.effective[cls] if p.predicate == pred)
        term: dict = {"@id": _compact(schema, pred)}
        vt = pd.value_type
        if pd.container is ContainerKind.NUMBERED:
            # objects are entry nodes carrying the index and the value
            term["@type"] = "@id"
        elif isinstance(vt, Datatype):
            if vt.iri != XSD_STRING:
                term["@type"] = _compact(schema, vt.iri)
        else:
            term["@type"] = "@id"
        if pd.container is ContainerKind.ORDERED:
            term["@container"] = "@list"
        existing = context.get(name)
        if existing is not None and (not isinstance(existing, dict) or existing["@id"] != term["@id"]):
            raise EmitError(
                "accessor-collision",
                f"term '{name}' for {term['@id']} clashes with an existing context entry",
            )
        context[name] = term


def _frame_body(schema: Schema, cls: str, depth: int, context: dict, top: bool) -> dict:
    _add_terms(schema, cls, context)
    types = [cls] if top else [cls] + sorted(schema.descendants.get(cls, ()))
    names = [_compact(schema, t) for t in types]
    body: dict = {"@type": names[0] if len(names) == 1 else names}
    accessors = accessor_names(schema, cls)
    for pd in schema.effective[cls]:
        if not isinstance(pd.value_type, ClassRef):
            continue
        name = accessors[pd.predicate]
        if depth > 0:
            inner = _frame_body(schema, pd.value_type.iri, depth - 1, context, top=False)
        else:
            inner = {"@embed": "@never"}
        if pd.container is ContainerKind.NUMBERED:
            inner = {
                _compact(schema, schema.vocab.list_index): {},
                _compact(schema, schema.vocab.list_value): inner,
            }
        body[name] = inner
    return body


def emit_jsonld_frame(schema: Schema, class_iri: str, depth: int = 1) -> str:
    """Frame for ``class_iri``; class-valued properties nest ``depth`` levels."""
    if class_iri not in schema.classes:
        raise UnknownClassError(class_iri)
    if depth < 0:
        raise ValueError("depth must be >= 0")
    context: dict = {label: ns for label, ns in schema.prefixes.items() if label}
    if "" in dict(schema.prefixes.items()):
        context["@vocab"] = schema.prefixes[""]
    body = _frame_body(schema, class_iri, depth, context, top=True)
    return canonical_json({"@context": context, **body})
