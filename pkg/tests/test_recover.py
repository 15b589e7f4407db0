from __future__ import annotations

import json
import random
from collections import Counter

import pytest
import rdflib
from hypothesis import given, settings
from hypothesis import strategies as st
from rdflib import RDF, URIRef

from gen import random_data, random_rdf_graph, random_schema, to_graph
from oracle import to_rdflib
from ontoforge import (
    IRI,
    ContainerKind,
    Graph,
    ObservedProperty,
    compile_schema,
    diff_schema,
    infer_cardinality,
    parse_turtle,
    recover_structure,
    sample_conforming,
)
from ontoforge.recover import DiffKind, TargetKind

G = "http://gbol.life/0.1/"
E = "http://example.org/"

PREFIXES = """
@prefix ex: <http://example.org/> .
@prefix gbol: <http://gbol.life/0.1/> .
@prefix empusa: <http://empusa.org/0.1#> .
@prefix owl: <http://www.w3.org/2002/07/owl#> .
@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .
"""


def _recover(body: str):
    return recover_structure(parse_turtle(PREFIXES + body))


def test_empty_graph():
    observed = recover_structure(Graph())
    assert observed.classes == {} and observed.instance_counts == {}


def test_region_strand_observed_on_every_instance():
    observed = _recover(
        "ex:r1 a gbol:Region ; gbol:strand gbol:ForwardStrandPosition .\n"
        "ex:r2 a gbol:Region ; gbol:strand gbol:ReverseStrandPosition .\n"
    )
    op = observed.get(G + "Region", G + "strand")
    assert (op.subjects_with, op.subjects_total) == (2, 2)
    assert (op.min_count, op.max_count) == (1, 1)
    assert infer_cardinality(op) == "1..1"
    assert op.target_kinds == Counter({TargetKind("untyped-iri"): 2})


def test_counts_zero_one_three():
    observed = _recover(
        "ex:a a ex:C .\n"
        "ex:b a ex:C ; ex:p 1 .\n"
        "ex:c a ex:C ; ex:p 1, 2, 3 .\n"
    )
    op = observed.get(E + "C", E + "p")
    assert (op.min_count, op.max_count, op.subjects_with, op.subjects_total) == (0, 3, 2, 3)
    assert infer_cardinality(op) == "0..N"
    assert op.target_kinds == Counter({TargetKind("datatype", "http://www.w3.org/2001/XMLSchema#integer"): 4})


def test_lists_and_numbered_entries_count_members():
    observed = _recover(
        "ex:a a ex:C ; ex:l ( 1 2 3 ) ; ex:n [ empusa:index 0 ; empusa:value ex:x ] .\n"
        "ex:b a ex:C ; ex:l ( 4 ) .\n"
    )
    lst = observed.get(E + "C", E + "l")
    assert lst.container is ContainerKind.ORDERED and infer_cardinality(lst) == "=1..N"
    num = observed.get(E + "C", E + "n")
    assert num.container is ContainerKind.NUMBERED and infer_cardinality(num) == "~0..1"


def test_multiple_types_measured_per_type():
    observed = _recover("ex:a a ex:C, ex:D ; ex:p 1 .\nex:b a ex:D .")
    assert observed.instance_counts == {E + "C": 1, E + "D": 2}
    assert infer_cardinality(observed.get(E + "C", E + "p")) == "1..1"
    assert infer_cardinality(observed.get(E + "D", E + "p")) == "0..1"


@pytest.mark.parametrize(
    ("lo", "hi", "with_all", "token"),
    [
        (0, 0, False, "0..1"),
        (0, 1, False, "0..1"),
        (1, 1, True, "1..1"),
        (0, 4, False, "0..N"),
        (1, 3, True, "1..N"),
        (2, 5, True, "1..N"),
    ],
)
def test_infer_cardinality_table(lo, hi, with_all, token):
    op = ObservedProperty(E + "p", min_count=lo, max_count=hi, subjects_with=3 if with_all else 1, subjects_total=3)
    assert infer_cardinality(op) == token


# -- diff ----------------------------------------------------------------------------


def _schema(body: str):
    return compile_schema(parse_turtle(PREFIXES + body))


def test_diff_cardinality_mismatch():
    schema = _schema('ex:C a owl:Class ; empusa:propertyDefinitions "ex:p xsd:string 0..1" .')
    diff = diff_schema(schema, _recover('ex:a a ex:C ; ex:p "x", "y" .'))
    (entry,) = diff.entries
    assert entry.kind is DiffKind.CARDINALITY_MISMATCH
    assert (entry.intended, entry.observed) == ("0..1", "1..N")


def test_diff_cardinality_mismatch_over_two_instances():
    schema = _schema('ex:C a owl:Class ; empusa:propertyDefinitions "ex:p xsd:string 0..1" .')
    diff = diff_schema(schema, _recover('ex:a a ex:C ; ex:p "x", "y" .\nex:b a ex:C .'))
    (entry,) = diff.entries
    assert entry.kind is DiffKind.CARDINALITY_MISMATCH
    assert (entry.intended, entry.observed) == ("0..1", "0..N")


def test_diff_undeclared_unused_missing_extra_and_type():
    schema = _schema(
        'ex:C a owl:Class ; empusa:propertyDefinitions """ex:req xsd:string 1..1\nex:num xsd:integer 0..1""" .\n'
        "ex:Unused a owl:Class ."
    )
    observed = _recover('ex:a a ex:C ; ex:num "nope" ; ex:extra 1 .\nex:z a ex:Other .')
    kinds = {(e.kind, e.class_iri, e.predicate) for e in diff_schema(schema, observed).entries}
    assert kinds == {
        (DiffKind.MISSING_IN_DATA, E + "C", E + "req"),
        (DiffKind.TYPE_MISMATCH, E + "C", E + "num"),
        (DiffKind.EXTRA_IN_DATA, E + "C", E + "extra"),
        (DiffKind.CLASS_UNUSED, E + "Unused", None),
        (DiffKind.CLASS_UNDECLARED, E + "Other", None),
    }
    blocking = {e.kind for e in diff_schema(schema, observed).blocking}
    assert DiffKind.CLASS_UNUSED not in blocking


def test_diff_json_and_markdown(fixture_schema):
    diff = diff_schema(fixture_schema, _recover("ex:z a ex:Other ."))
    doc = json.loads(diff.to_json())
    assert doc["blocking"] == 1
    assert sum(e["kind"] == "CLASS_UNUSED" for e in doc["entries"]) == len(fixture_schema.classes)
    md = diff.to_markdown().splitlines()
    assert md[0] == "| kind | class | predicate | intended | observed |"
    assert len(md) == 2 + len(diff.entries)


def test_observed_json_shape():
    doc = json.loads(_recover("ex:a a ex:C ; ex:p 1 .").to_json())
    (cls,) = doc["classes"]
    assert cls["iri"] == E + "C" and cls["instances"] == 1
    assert cls["properties"][0]["cardinality"] == "1..1"


def test_sampled_fixture_data_diffs_clean(fixture_schema):
    diff = diff_schema(fixture_schema, recover_structure(sample_conforming(fixture_schema, seed=1)))
    assert diff.blocking == []


# -- properties ----------------------------------------------------------------------


def _naive_counts(g: rdflib.Graph) -> dict[tuple[str, str], list[int]]:
    """Per (class, predicate), the raw object count of every instance."""
    out: dict[tuple[str, str], list[int]] = {}
    classes = {str(o) for o in g.objects(None, RDF.type) if isinstance(o, URIRef)}
    for cls in classes:
        members = set(g.subjects(RDF.type, URIRef(cls)))
        preds = {p for s in members for p in g.predicates(s) if p != RDF.type}
        for p in preds:
            out[cls, str(p)] = [len(set(g.objects(s, p))) for s in members]
    return out


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=0, max_value=10**9))
def test_flat_counts_match_naive_recount(seed):
    rng = random.Random(seed)
    _, schema = random_schema(rng, max_classes=3, max_props=4, lists=False)
    triples = random_data(rng, schema)
    observed = recover_structure(to_graph(triples))
    naive = _naive_counts(to_rdflib(triples))
    seen = {(c, op.predicate) for c, ops in observed.classes.items() for op in ops}
    assert seen == set(naive)
    for (cls, pred), counts in naive.items():
        op = observed.get(cls, pred)
        if op.container is not ContainerKind.NONE:
            continue
        assert op.max_count == max(counts)
        assert op.min_count == min(counts)
        assert op.subjects_with == sum(1 for n in counts if n)
        assert op.subjects_total == len(counts)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=10**9))
def test_adding_values_never_lowers_max(seed):
    rng = random.Random(seed)
    _, schema = random_schema(rng, max_classes=3, max_props=4, lists=False)
    triples = random_data(rng, schema)
    before = recover_structure(to_graph(triples))
    typed = [(s, o) for s, p, o in triples if p.value.endswith("#type")]
    if not typed:
        return
    s, _ = rng.choice(typed)
    extra = (s, IRI(E + "added"), IRI(E + "v"))
    after = recover_structure(to_graph(triples + [extra]))
    for cls, ops in before.classes.items():
        for op in ops:
            if op.container is ContainerKind.NONE:
                assert after.get(cls, op.predicate).max_count >= op.max_count


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=10**9))
def test_recovery_ignores_triple_order(seed):
    rng = random.Random(seed)
    g = random_rdf_graph(rng, 25)
    triples = list(g)
    rng.shuffle(triples)
    h = Graph()
    for t in triples:
        h.add(*t)
    assert recover_structure(g).to_json() == recover_structure(h).to_json()


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10**9))
def test_exhaustive_samples_reproduce_tokens(seed):
    _, schema = random_schema(random.Random(seed))
    observed = recover_structure(sample_conforming(schema, seed=seed))
    for cls in schema.classes:
        for pd in schema.effective[cls]:
            assert infer_cardinality(observed.get(cls, pd.predicate)) == pd.token
