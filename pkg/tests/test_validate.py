from __future__ import annotations

import json
import random

from hypothesis import given, settings
from hypothesis import strategies as st

from gen import random_data, random_schema, to_graph
from oracle import implementation_violations, oracle_violations, to_rdflib
from ontoforge import (
    IRI,
    BNode,
    ClassRef,
    Code,
    Datatype,
    Graph,
    Literal,
    Severity,
    ValueSetRef,
    classify_term,
    parse_turtle,
    sample_conforming,
    validate_graph,
)
from ontoforge.xsd import XSD

G = "http://gbol.life/0.1/"

DATA_PREFIXES = """
@prefix gbol: <http://gbol.life/0.1/> .
@prefix ex: <http://example.org/d/> .
@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .
"""


def _check(schema, body: str):
    return validate_graph(schema, parse_turtle(DATA_PREFIXES + body))


def _codes(report) -> list[str]:
    return [v.code.value for v in report.violations]


def test_empty_graph_is_conformant(fixture_schema):
    report = validate_graph(fixture_schema, Graph())
    assert report.conformant and report.violations == [] and report.checked_node_count == 0


def test_region_missing_strand(fixture_schema):
    report = _check(fixture_schema, 'ex:r a gbol:Region ; gbol:begin 1 ; gbol:end 9 .')
    assert _codes(report) == ["MISSING_REQUIRED"]
    (v,) = report.violations
    assert v.predicate == G + "strand" and v.class_iri == G + "Region"
    assert v.expected == "1..1" and v.actual == "0"
    assert not report.conformant


def test_region_with_strand_conforms(fixture_schema):
    report = _check(fixture_schema, "ex:r a gbol:Region ; gbol:begin 1 ; gbol:end 9 ; gbol:strand gbol:ForwardStrandPosition .")
    assert report.violations == [] and report.checked_node_count == 1


def test_two_unrelated_types_are_ambiguous(fixture_schema):
    report = _check(
        fixture_schema,
        'ex:n a gbol:Sample, gbol:Exon ; gbol:name "s" ; gbol:location ex:l .\n'
        "ex:l a gbol:Location .",
    )
    assert _codes(report) == ["AMBIGUOUS_TYPE"]
    assert report.violations[0].severity is Severity.WARNING
    assert report.conformant


def test_type_and_its_ancestor_are_not_ambiguous(fixture_schema):
    report = _check(fixture_schema, "ex:e a gbol:Exon, gbol:Feature ; gbol:location ex:l .\nex:l a gbol:Location .")
    assert report.violations == []


def test_too_many_reports_actual_count(fixture_schema):
    report = _check(fixture_schema, 'ex:s a gbol:Sample ; gbol:name "a", "b" .')
    (v,) = report.violations
    assert v.code is Code.TOO_MANY and v.actual == "2" and v.expected == "1..1"


def test_typo_predicate_is_undeclared_warning(fixture_schema):
    report = _check(fixture_schema, 'ex:s a gbol:Sample ; gbol:name "a" ; gbol:nmae "b" .')
    (v,) = report.violations
    assert v.code is Code.UNDECLARED_PREDICATE and v.predicate == G + "nmae"
    assert report.conformant


def test_absent_optional_many_is_fine(fixture_schema):
    report = _check(fixture_schema, "ex:l a gbol:Location .")
    assert report.violations == []


def test_undeclared_only_when_no_type_declares_it(fixture_schema):
    report = _check(
        fixture_schema,
        'ex:n a gbol:Sample, gbol:Location ; gbol:name "s" ; gbol:note "x" ; ex:other 1 .',
    )
    undeclared = [v for v in report.violations if v.code is Code.UNDECLARED_PREDICATE]
    assert [(v.predicate, v.class_iri) for v in undeclared] == [("http://example.org/d/other", G + "Location")]


def test_malformed_and_numbered_lists(fixture_schema):
    body = (
        'ex:t a gbol:Transcript ; gbol:location ex:l ; gbol:exonList ex:notalist .\n'
        "ex:l a gbol:Location .\n"
        'ex:g a gbol:Gene ; gbol:location ex:l ; gbol:locusTag "x" ; gbol:synonym "y" ;\n'
        "  gbol:transcript [ <http://empusa.org/0.1#index> 0 ; <http://empusa.org/0.1#value> ex:t ] ,\n"
        "                  [ <http://empusa.org/0.1#index> 2 ; <http://empusa.org/0.1#value> ex:t ] .\n"
    )
    codes = {(v.focus.n3(), v.code.value) for v in _check(fixture_schema, body).violations}
    assert ("<http://example.org/d/t>", "MALFORMED_LIST") in codes
    assert ("<http://example.org/d/g>", "MALFORMED_LIST") in codes


def test_ordered_list_members_are_type_checked(fixture_schema):
    body = (
        "ex:l a gbol:Location .\n"
        "ex:e a gbol:Exon ; gbol:location ex:l .\n"
        "ex:t a gbol:Transcript ; gbol:location ex:l ; gbol:exonList ( ex:e ex:l ) .\n"
    )
    report = _check(fixture_schema, body)
    assert _codes(report) == ["BAD_TARGET_TYPE"]
    assert report.violations[0].actual == "<http://example.org/d/l>"


# -- classify_term ------------------------------------------------------------------


def test_classify_bad_integer_lexical(fixture_schema):
    v = classify_term(fixture_schema, Graph(), Literal("abc", XSD + "integer"), Datatype(XSD + "integer"))
    assert v is not None and v.code is Code.BAD_DATATYPE


def test_classify_wrong_datatype(fixture_schema):
    v = classify_term(fixture_schema, Graph(), Literal("5"), Datatype(XSD + "integer"))
    assert v is not None and v.code is Code.BAD_DATATYPE


def test_classify_strand_member(fixture_schema):
    vt = ValueSetRef(G + "StrandPosition")
    assert classify_term(fixture_schema, Graph(), IRI(G + "ForwardStrandPosition"), vt) is None
    v = classify_term(fixture_schema, Graph(), IRI(G + "CSV"), vt)
    assert v is not None and v.code is Code.NOT_IN_VALUESET


def test_classify_subclass_instance_accepted(fixture_schema):
    data = parse_turtle(DATA_PREFIXES + "_:e a gbol:Exon .")
    (node,) = data.subjects()
    assert isinstance(node, BNode)
    assert classify_term(fixture_schema, data, node, ClassRef(G + "Feature")) is None
    v = classify_term(fixture_schema, data, node, ClassRef(G + "Location"))
    assert v is not None and v.code is Code.BAD_TARGET_TYPE


def test_classify_untyped_value(fixture_schema):
    v = classify_term(fixture_schema, Graph(), IRI("http://example.org/d/x"), ClassRef(G + "Location"))
    assert v is not None and v.code is Code.UNTYPED_NODE


# -- report formats -----------------------------------------------------------------


def test_report_text_and_json(fixture_schema):
    report = _check(fixture_schema, 'ex:s a gbol:Sample ; gbol:name "a", "b" ; ex:odd 1 .')
    text = report.to_text()
    assert text.splitlines()[0].startswith("ERROR TOO_MANY focus=<http://example.org/d/s>")
    assert text.rstrip().endswith("conformant=false; TOO_MANY=1, UNDECLARED_PREDICATE=1")
    doc = json.loads(report.to_json())
    assert doc["conformant"] is False and doc["checkedNodeCount"] == 1
    assert doc["counts"] == {"TOO_MANY": 1, "UNDECLARED_PREDICATE": 1}
    assert {v["severity"] for v in doc["violations"]} == {"ERROR", "WARNING"}


def test_report_is_sorted_and_deterministic(fixture_schema):
    report = validate_graph(fixture_schema, to_graph(random_data(random.Random(3), fixture_schema, 12, 40)))
    assert report.violations
    keys = [v.sort_key() for v in report.violations]
    assert keys == sorted(keys)


# -- properties ---------------------------------------------------------------------


@settings(max_examples=150, deadline=None)
@given(st.integers(min_value=0, max_value=10**9))
def test_matches_brute_force_oracle(seed):
    rng = random.Random(seed)
    _, schema = random_schema(rng, max_classes=3, max_props=4)
    triples = random_data(rng, schema)
    report = validate_graph(schema, to_graph(triples))
    assert implementation_violations(report) == oracle_violations(schema, to_rdflib(triples))


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10**9))
def test_sampled_data_conforms(seed):
    _, schema = random_schema(random.Random(seed))
    report = validate_graph(schema, sample_conforming(schema, seed=seed))
    assert report.conformant and report.violations == []


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=0, max_value=10**9))
def test_conformant_iff_no_error(seed):
    rng = random.Random(seed)
    _, schema = random_schema(rng, max_classes=3, max_props=4)
    triples = random_data(rng, schema)
    report = validate_graph(schema, to_graph(triples))
    assert report.conformant == all(v.severity is Severity.WARNING for v in report.violations)
    rng.shuffle(triples)
    assert validate_graph(schema, to_graph(triples)).to_text() == report.to_text()
