"""Gatekeeping: check instance data before it reaches downstream tools.

We start from data sampled to conform, then break it the way real data
breaks and watch the report change.
"""

from __future__ import annotations

from _common import heading, load

from ontoforge import IRI, instances_of, Literal, sample_conforming, validate_graph
from ontoforge.rdf import term_key

G = "http://gbol.life/0.1/"
schema = load()
data = sample_conforming(schema, seed=1)

heading("sampled data")
report = validate_graph(schema, data)
print(report.to_text().strip())

region = sorted(instances_of(data, G + "Region"), key=term_key)[0]

heading("drop the required strand of one region")
for triple in list(data.triples(s=region, p=IRI(G + "strand"))):
    data.remove(*triple)
print(validate_graph(schema, data).to_text().strip())

heading("add bad values and a misspelt predicate")
data.add(region, IRI(G + "strand"), IRI(G + "CSV"))
data.add(region, IRI(G + "strnad"), IRI(G + "ForwardStrandPosition"))
data.add(region, IRI(G + "begin"), Literal("ten", "http://www.w3.org/2001/XMLSchema#integer"))
print(validate_graph(schema, data).to_text().strip())
