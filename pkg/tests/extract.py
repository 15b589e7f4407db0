"""
Pull (class, predicate, cardinality token) triples back out of each
emitted artifact, using third-party parsers where one exists.
"""

from __future__ import annotations

import json
import re

import rdflib
from pyshexc.parser_impl.generate_shexj import parse as parse_shexc
from rdflib import OWL, RDF, RDFS, URIRef

RDF_TYPE = str(RDF.type)
RDF_NIL = str(RDF.nil)
LIST_KIND = URIRef("http://empusa.org/0.1#listKind")
MARKER = {"none": "", "ordered": "=", "numbered": "~"}


def _token(lo: int, unbounded: bool, marker: str = "") -> str:
    return f"{marker}{lo}..{'N' if unbounded else '1'}"


def from_shex(text: str) -> set[tuple[str, str, str]]:
    schema = parse_shexc(text)
    out = set()
    for shape in schema.shapes:
        if shape.id.endswith("-list") or shape.id.endswith("-entry"):
            continue
        expr = shape.expression
        tcs = expr.expressions if type(expr).__name__ == "EachOf" else [expr]
        for tc in tcs:
            if tc.predicate == RDF_TYPE:
                continue
            lo = 1 if tc.min is None else tc.min
            hi = 1 if tc.max is None else tc.max
            refs = _refs(tc.valueExpr)
            lists = [r for r in refs if r.endswith("-list")]
            entries = [r for r in refs if r.endswith("-entry")]
            if lists:
                # the triple points at the list head; an empty list is rdf:nil
                nil_ok = _allows_nil(tc.valueExpr)
                out.add((shape.id, tc.predicate, _token(0 if (lo == 0 or nil_ok) else 1, True, "=")))
            elif entries:
                out.add((shape.id, tc.predicate, _token(lo, hi == -1, "~")))
            else:
                out.add((shape.id, tc.predicate, _token(lo, hi == -1)))
    return out


def _refs(expr) -> list[str]:
    if isinstance(expr, str):
        return [expr]
    if type(expr).__name__ in ("ShapeOr", "ShapeAnd"):
        return [r for e in expr.shapeExprs for r in _refs(e)]
    return []


def _allows_nil(expr) -> bool:
    if type(expr).__name__ == "ShapeOr":
        return any(_allows_nil(e) for e in expr.shapeExprs)
    values = getattr(expr, "values", None) or []
    return any(str(v) == RDF_NIL for v in values)


def from_owl(text: str) -> set[tuple[str, str, str]]:
    g = rdflib.Graph().parse(data=text, format="turtle")
    acc: dict[tuple[str, str], dict] = {}
    for cls in g.subjects(RDF.type, OWL.Class):
        for r in g.objects(cls, RDFS.subClassOf):
            if (r, RDF.type, OWL.Restriction) not in g:
                continue
            key = (str(cls), str(g.value(r, OWL.onProperty)))
            entry = acc.setdefault(key, {"min": 0, "max_one": False, "kind": "none"})
            if g.value(r, OWL.minCardinality) is not None:
                entry["min"] = int(g.value(r, OWL.minCardinality))
            if g.value(r, OWL.maxCardinality) is not None:
                entry["max_one"] = int(g.value(r, OWL.maxCardinality)) == 1
            if g.value(r, LIST_KIND) is not None:
                entry["kind"] = str(g.value(r, LIST_KIND))
    return {(c, p, _token(e["min"], not e["max_one"], MARKER[e["kind"]])) for (c, p), e in acc.items()}


_ROW = re.compile(r"^\| \[[^\]]*\]\(([^)]*)\) \| .* \| ([01]\.\.[1N]) \| ([^|]*) \|")


def from_docs(files, schema) -> set[tuple[str, str, str]]:
    """Rows of every class page; the page's class is read from its IRI line."""
    out = set()
    for path, content in files.items():
        if "/classes/" not in path:
            continue
        cls = re.search(r"^IRI: `([^`]*)`", content, re.M).group(1)
        for line in content.splitlines():
            m = _ROW.match(line)
            if not m:
                continue
            pred, token, container = m.groups()
            marker = "=" if "`=`" in container else "~" if "`~`" in container else ""
            out.add((cls, pred, marker + token))
    return out


def from_api(text: str) -> set[tuple[str, str, str]]:
    doc = json.loads(text)
    return {
        (c["iri"], p["predicate"], MARKER[p["container"]] + p["cardinality"])
        for c in doc["classes"]
        for p in c["properties"]
    }


def from_schema(schema) -> set[tuple[str, str, str]]:
    return {(c, pd.predicate, pd.token) for c in schema.classes for pd in schema.effective[c]}
