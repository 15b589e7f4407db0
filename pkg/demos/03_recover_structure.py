"""Work backwards from data: what structure does it actually have?

Recovery measures each class's properties in the data and turns the
counts into the same cardinality tokens the definition uses. Diffing that
against the definition shows where data and model disagree.
"""

from __future__ import annotations

from _common import heading, load

from ontoforge import IRI, instances_of, diff_schema, infer_cardinality, recover_structure, sample_conforming
from ontoforge.rdf import term_key
from ontoforge.schema import local_name

G = "http://gbol.life/0.1/"
schema = load()
data = sample_conforming(schema, seed=2)

heading("observed Gene properties")
observed = recover_structure(data)
for op in observed.classes[G + "Gene"]:
    print(f"  {local_name(op.predicate):<12} {infer_cardinality(op):<6} min={op.min_count} max={op.max_count}")

heading("diff against the definition")
print(diff_schema(schema, observed).to_markdown())

heading("give one sample a second name, then diff again")
sample = sorted(instances_of(data, G + "Sample"), key=term_key)[0]
data.add(sample, IRI(G + "name"), IRI(G + "not-a-string"))
print(diff_schema(schema, recover_structure(data)).to_markdown())
