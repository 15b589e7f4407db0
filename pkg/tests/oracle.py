"""
Independent brute-force validator used as a test oracle.

It works on an rdflib graph, recomputes the subclass closure from the raw
parent lists, judges literals against the hand-labelled table in
``gen.LEXICAL_OK`` and scans every triple for every check instead of
using indexes. Effective properties are re-derived from each class's own
definitions by enumerating ancestor paths; only the parsed property lines
are shared with the code under test.
"""

from __future__ import annotations

import logging
import warnings
from collections import Counter

import rdflib
from rdflib import RDF, BNode, Literal, URIRef

from gen import LEXICAL_OK

# keep lexical forms exactly as written; ill-typed literals are expected here
rdflib.NORMALIZE_LITERALS = False
logging.getLogger("rdflib.term").setLevel(logging.CRITICAL)


def to_rdflib(triples) -> rdflib.Graph:
    g = rdflib.Graph()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for s, p, o in triples:
            g.add(tuple(_term(t) for t in (s, p, o)))
    return g


def _term(t):
    kind = type(t).__name__
    if kind == "IRI":
        return URIRef(t.value)
    if kind == "BNode":
        return BNode(t.label)
    return Literal(t.lexical, datatype=URIRef(t.datatype))


def _focus(t) -> str:
    return f"<{t}>" if isinstance(t, URIRef) else f"_:{t}"


def _ancestors(schema) -> dict[str, set[str]]:
    anc = {c: {c} for c in schema.classes}
    changed = True
    while changed:
        changed = False
        for c, cd in schema.classes.items():
            for p in cd.parents:
                new = anc[p] - anc[c]
                if new:
                    anc[c] |= new
                    changed = True
    return anc


def _paths_up(schema, cls):
    """Every parent path from ``cls`` to a root, as lists of classes."""
    parents = schema.classes[cls].parents
    if not parents:
        return [[cls]]
    return [[cls] + rest for p in parents for rest in _paths_up(schema, p)]


def _effective(schema, anc, cls):
    on_paths = {c for path in _paths_up(schema, cls) for c in path}
    defs = {}
    for c in on_paths:
        for pd in schema.classes[c].own_properties:
            defs.setdefault(pd.predicate, []).append((c, pd))
    out = []
    for pred, found in defs.items():
        # most derived: a definer that is not an ancestor of another definer
        lowest = [pd for c, pd in found if not any(o != c and c in anc[o] for o, _ in found)]
        out.append(lowest[0])
    return out


def _objs(g, s, p):
    return [o for (ss, pp, o) in g if ss == s and pp == p]


class _Bad(Exception):
    pass


def _walk(g, head):
    nil = RDF.nil
    out, seen, node = [], set(), head
    while node != nil:
        if node in seen or isinstance(node, Literal):
            raise _Bad
        seen.add(node)
        firsts, rests = _objs(g, node, RDF.first), _objs(g, node, RDF.rest)
        if len(firsts) != 1 or len(rests) != 1:
            raise _Bad
        out.append(firsts[0])
        node = rests[0]
    return out


def _numbered(g, entries, vocab):
    idx_p, val_p = URIRef(vocab.list_index), URIRef(vocab.list_value)
    slots = {}
    for e in entries:
        if isinstance(e, Literal):
            raise _Bad
        idx, val = _objs(g, e, idx_p), _objs(g, e, val_p)
        if len(idx) != 1 or len(val) != 1:
            raise _Bad
        i = idx[0]
        xsd_int = "http://www.w3.org/2001/XMLSchema#integer"
        if not isinstance(i, Literal) or str(i.datatype) != xsd_int:
            raise _Bad
        try:
            n = int(str(i))
        except ValueError:
            raise _Bad from None
        if n in slots:
            raise _Bad
        slots[n] = val[0]
    if set(slots) != set(range(len(slots))):
        raise _Bad
    return [slots[k] for k in sorted(slots)]


def oracle_violations(schema, g: rdflib.Graph) -> Counter:
    """Multiset of ``(code, focus, class, predicate)``."""
    anc = _ancestors(schema)
    found: Counter = Counter()
    subjects = {s for (s, p, o) in g if p == RDF.type and isinstance(o, URIRef) and str(o) in schema.classes}
    for node in subjects:
        types = sorted(str(o) for o in _objs(g, node, RDF.type) if isinstance(o, URIRef) and str(o) in schema.classes)
        declared_any = set()
        for cls in types:
            for pd in _effective(schema, anc, cls):
                declared_any.add(pd.predicate)
                objs = _objs(g, node, URIRef(pd.predicate))
                kind = pd.container.label
                try:
                    if kind == "ordered":
                        if len(objs) > 1:
                            raise _Bad
                        values = _walk(g, objs[0]) if objs else []
                    elif kind == "numbered":
                        values = _numbered(g, objs, schema.vocab)
                    else:
                        values = objs
                except _Bad:
                    found[("MALFORMED_LIST", _focus(node), cls, pd.predicate)] += 1
                    continue
                if len(values) < pd.cardinality.min:
                    found[("MISSING_REQUIRED", _focus(node), cls, pd.predicate)] += 1
                if pd.cardinality.max_one and len(values) > 1:
                    found[("TOO_MANY", _focus(node), cls, pd.predicate)] += 1
                for v in values:
                    code = _classify(schema, anc, g, v, pd.value_type)
                    if code:
                        found[(code, _focus(node), cls, pd.predicate)] += 1
        for p in sorted({p for (s, p, o) in g if s == node}):
            if p != RDF.type and str(p) not in declared_any:
                found[("UNDECLARED_PREDICATE", _focus(node), types[0], str(p))] += 1
        specific = [t for t in types if not any(o != t and t in anc[o] for o in types)]
        if len(specific) > 1:
            found[("AMBIGUOUS_TYPE", _focus(node), None, None)] += 1
    return found


def _classify(schema, anc, g, v, vt) -> str | None:
    kind = type(vt).__name__
    if kind == "Datatype":
        if not isinstance(v, Literal) or str(v.datatype) != vt.iri:
            return "BAD_DATATYPE"
        return None if LEXICAL_OK[(vt.iri, str(v))] else "BAD_DATATYPE"
    if kind == "ClassRef":
        if isinstance(v, Literal):
            return "BAD_TARGET_TYPE"
        types = _objs(g, v, RDF.type)
        if not types:
            return "UNTYPED_NODE"
        ok = any(str(t) in anc and vt.iri in anc[str(t)] for t in types)
        return None if ok else "BAD_TARGET_TYPE"
    if kind == "ExternalIri":
        return None if isinstance(v, URIRef) else "NOT_AN_IRI"
    members = schema.value_sets[vt.root].member_iris
    return None if isinstance(v, URIRef) and str(v) in members else "NOT_IN_VALUESET"


def implementation_violations(report) -> Counter:
    return Counter((v.code.value, v.focus.n3(), v.class_iri, v.predicate) for v in report.violations)
