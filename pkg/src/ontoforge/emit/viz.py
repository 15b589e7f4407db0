"""Class-diagram export for Cytoscape (JSON) and GraphML viewers."""

from __future__ import annotations

import xml.etree.ElementTree as ET

from ..errors import EmitError
from ..schema import ClassRef, Datatype, ExternalIri, Schema, ValueSetRef, local_name
from .frame import canonical_json

FORMATS = ("cytoscape-json", "graphml")


def viz_elements(schema: Schema) -> tuple[list[dict], list[dict]]:
    nodes, edges = [], []
    for iri in sorted(schema.classes):
        cdef = schema.classes[iri]
        own = cdef.own_properties
        nodes.append(
            {
                "id": iri,
                "iri": iri,
                "label": cdef.label or local_name(iri),
                "isValueSetRoot": False,
                "datatypeProperties": sum(isinstance(pd.value_type, Datatype) for pd in own),
                "iriProperties": sum(isinstance(pd.value_type, ExternalIri) for pd in own),
            }
        )
    for iri in sorted(schema.value_sets):
        vs = schema.value_sets[iri]
        nodes.append(
            {
                "id": iri,
                "iri": iri,
                "label": vs.label or local_name(iri),
                "isValueSetRoot": True,
                "datatypeProperties": 0,
                "iriProperties": 0,
            }
        )
    for iri in sorted(schema.classes):
        cdef = schema.classes[iri]
        for parent in cdef.parents:
            edges.append({"source": iri, "target": parent, "kind": "subclass", "predicate": "", "cardinality": ""})
        for pd in cdef.own_properties:
            vt = pd.value_type
            if isinstance(vt, ClassRef):
                target = vt.iri
            elif isinstance(vt, ValueSetRef):
                target = vt.root
            else:
                continue
            edges.append(
                {"source": iri, "target": target, "kind": "property", "predicate": pd.predicate, "cardinality": pd.token}
            )
    for i, e in enumerate(edges):
        e["id"] = f"e{i}"
    return nodes, edges


def _cytoscape(schema: Schema) -> str:
    nodes, edges = viz_elements(schema)
    return canonical_json(
        {
            "data": {"name": schema.ontology_iri or "ontology"},
            "elements": {
                "nodes": [{"data": n} for n in nodes],
                "edges": [{"data": e} for e in edges],
            },
        }
    )


def _graphml(schema: Schema) -> str:
    nodes, edges = viz_elements(schema)
    root = ET.Element("graphml", xmlns="http://graphml.graphdrawing.org/xmlns")
    keys = [
        ("iri", "node", "string"),
        ("label", "node", "string"),
        ("isValueSetRoot", "node", "boolean"),
        ("datatypeProperties", "node", "int"),
        ("iriProperties", "node", "int"),
        ("kind", "edge", "string"),
        ("predicate", "edge", "string"),
        ("cardinality", "edge", "string"),
    ]
    for name, domain, kind in keys:
        ET.SubElement(root, "key", {"id": name, "for": domain, "attr.name": name, "attr.type": kind})
    graph = ET.SubElement(root, "graph", id="G", edgedefault="directed")
    for n in nodes:
        el = ET.SubElement(graph, "node", id=n["id"])
        for name, domain, _ in keys:
            if domain == "node":
                value = n[name]
                ET.SubElement(el, "data", key=name).text = str(value).lower() if isinstance(value, bool) else str(value)
    for e in edges:
        el = ET.SubElement(graph, "edge", id=e["id"], source=e["source"], target=e["target"])
        for name, domain, _ in keys:
            if domain == "edge" and e[name]:
                ET.SubElement(el, "data", key=name).text = e[name]
    ET.indent(root)
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(root, encoding="unicode") + "\n"


def emit_viz(schema: Schema, format: str = "cytoscape-json") -> str:
    if format == "cytoscape-json":
        return _cytoscape(schema)
    if format == "graphml":
        return _graphml(schema)
    raise EmitError("unknown-format", f"unknown visualization format '{format}' (expected one of {', '.join(FORMATS)})")
