"""Generate instance data that conforms to a schema."""

from __future__ import annotations

import random

from .rdf import IRI, RDF_FIRST, RDF_NIL, RDF_REST, RDF_TYPE, XSD, BNode, Graph, Literal
from .schema import ClassRef, ContainerKind, Datatype, ExternalIri, PropertyDef, Schema, ValueSetRef, local_name
from .xsd import sample_lexical

DATA_NS = "http://example.org/data/"


def _counts(pd: PropertyDef, n: int, rng: random.Random, exhaustive: bool) -> list[int]:
    """Per-instance value counts for one property over ``n`` instances."""
    lo, max_one = pd.cardinality.min, pd.cardinality.max_one
    hi = 1 if max_one else 3
    counts = [rng.randint(lo, hi) for _ in range(n)]
    if exhaustive and n >= 2:
        # exercise both boundaries of the multiplicity
        counts[0] = 1 if max_one else 2
        counts[1] = lo
    return counts


def sample_conforming(
    schema: Schema,
    seed: int | random.Random = 0,
    instances_per_class: int = 2,
    exhaustive: bool = True,
    skip_classes: set[str] | frozenset[str] = frozenset(),
) -> Graph:
    """Instance data with zero ERROR-severity violations against ``schema``.

    With ``exhaustive`` every optional property is present on one instance
    and absent on another, and every unbounded property occurs twice on
    some instance (requires ``instances_per_class >= 2``). Class-valued
    properties point at instances of the target class, so skipped classes
    must not be required targets.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    g = Graph(prefixes=schema.prefixes)
    g.prefixes.bind("data", DATA_NS)
    rdf_type = IRI(RDF_TYPE)
    instances: dict[str, list[IRI]] = {}
    for cls in sorted(schema.classes):
        if cls in skip_classes:
            continue
        name = local_name(cls)
        nodes = [IRI(f"{DATA_NS}{name}_{i}") for i in range(instances_per_class)]
        instances[cls] = nodes
        for node in nodes:
            g.add(node, rdf_type, IRI(cls))

    bnodes = iter(range(10**9))
    ext = iter(range(10**9))

    def value_for(pd: PropertyDef, k: int):
        vt = pd.value_type
        if isinstance(vt, Datatype):
            return Literal(sample_lexical(vt.iri, k), vt.iri)
        if isinstance(vt, ClassRef):
            pool = instances.get(vt.iri)
            if not pool:
                pool = [n for c in sorted(schema.descendants.get(vt.iri, ())) for n in instances.get(c, [])]
            if not pool:
                raise ValueError(f"no instances available for class <{vt.iri}>")
            return pool[k % len(pool)]
        if isinstance(vt, ValueSetRef):
            members = sorted(schema.value_sets[vt.root].member_iris)
            if not members:
                raise ValueError(f"value set <{vt.root}> has no members")
            return IRI(members[rng.randrange(len(members))])
        assert isinstance(vt, ExternalIri)
        return IRI(f"http://example.org/external/{next(ext)}")

    for cls in sorted(instances):
        nodes = instances[cls]
        for pd in schema.effective[cls]:
            counts = _counts(pd, len(nodes), rng, exhaustive)
            pred = IRI(pd.predicate)
            for node, n in zip(nodes, counts):
                values = [value_for(pd, k) for k in range(n)]
                if pd.container is ContainerKind.NONE:
                    for v in values:
                        g.add(node, pred, v)
                    # duplicate values collapse in a set; retry distinct ones
                    k = n
                    while g.count(node, pred) < n and k < n + 50:
                        g.add(node, pred, value_for(pd, k))
                        k += 1
                elif pd.container is ContainerKind.ORDERED:
                    if n == 0:
                        continue
                    head = IRI(RDF_NIL)
                    for v in reversed(values):
                        cell = BNode(f"l{next(bnodes)}")
                        g.add(cell, IRI(RDF_FIRST), v)
                        g.add(cell, IRI(RDF_REST), head)
                        head = cell
                    g.add(node, pred, head)
                else:
                    for i, v in enumerate(values):
                        entry = BNode(f"e{next(bnodes)}")
                        g.add(node, pred, entry)
                        g.add(entry, IRI(schema.vocab.list_index), Literal(str(i), XSD + "integer"))
                        g.add(entry, IRI(schema.vocab.list_value), v)
    return g
