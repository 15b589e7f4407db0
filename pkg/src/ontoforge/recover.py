"""
Recover the structure a dataset actually has and diff it with a schema.

Recovery is exact over the whole graph: for every class with instances it
records each predicate's per-instance counts and the kinds of objects seen.
Properties whose objects are all RDF collections (or all numbered-list
entries) are measured in list members rather than triples.
"""

from __future__ import annotations

import enum
import json
from collections import Counter
from dataclasses import dataclass, field

from .errors import MalformedListError
from .rdf import IRI, RDF_FIRST, RDF_NIL, RDF_TYPE, BNode, Graph, Literal, Term, list_members, term_key
from .schema import (
    ClassRef,
    ContainerKind,
    Datatype,
    ExternalIri,
    Schema,
    ValueSetRef,
    Vocab,
    effective_properties,
)


@dataclass(frozen=True, order=True)
class TargetKind:
    """What an object was observed to be: ``datatype``/``class`` carry an IRI."""

    kind: str  # datatype | class | untyped-iri | blank-untyped
    iri: str | None = None

    def __str__(self) -> str:
        return f"{self.kind}:<{self.iri}>" if self.iri else self.kind


@dataclass
class ObservedProperty:
    predicate: str
    target_kinds: Counter = field(default_factory=Counter)
    min_count: int = 0
    max_count: int = 0
    subjects_with: int = 0
    subjects_total: int = 0
    container: ContainerKind = ContainerKind.NONE

    def to_dict(self) -> dict:
        return {
            "predicate": self.predicate,
            "container": self.container.label,
            "minCount": self.min_count,
            "maxCount": self.max_count,
            "subjectsWith": self.subjects_with,
            "subjectsTotal": self.subjects_total,
            "cardinality": infer_cardinality(self),
            "targetKinds": [
                {"kind": k.kind, "iri": k.iri, "count": n} for k, n in sorted(self.target_kinds.items())
            ],
        }


@dataclass
class ObservedSchema:
    classes: dict[str, list[ObservedProperty]] = field(default_factory=dict)
    instance_counts: dict[str, int] = field(default_factory=dict)

    def get(self, class_iri: str, predicate: str) -> ObservedProperty | None:
        for op in self.classes.get(class_iri, []):
            if op.predicate == predicate:
                return op
        return None

    def to_dict(self) -> dict:
        return {
            "classes": [
                {
                    "iri": c,
                    "instances": self.instance_counts[c],
                    "properties": [op.to_dict() for op in self.classes[c]],
                }
                for c in sorted(self.classes)
            ]
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _kinds(data: Graph, obj: Term) -> list[TargetKind]:
    if isinstance(obj, Literal):
        return [TargetKind("datatype", obj.datatype)]
    types = [t for t in data.objects(obj, IRI(RDF_TYPE)) if isinstance(t, IRI)]
    if types:
        return [TargetKind("class", t.value) for t in types]
    return [TargetKind("untyped-iri" if isinstance(obj, IRI) else "blank-untyped")]


def _is_list_head(data: Graph, obj: Term) -> bool:
    if obj == IRI(RDF_NIL):
        return True
    return isinstance(obj, BNode) and data.count(obj, IRI(RDF_FIRST)) > 0


def _is_entry(data: Graph, obj: Term, vocab: Vocab) -> bool:
    return (
        isinstance(obj, BNode)
        and data.count(obj, IRI(vocab.list_index)) > 0
        and data.count(obj, IRI(vocab.list_value)) > 0
    )


def _expand_objects(data: Graph, objs: list[Term], container: ContainerKind, vocab: Vocab) -> list[Term] | None:
    if container is ContainerKind.NONE:
        return objs
    if container is ContainerKind.ORDERED:
        if not objs:
            return []
        if len(objs) != 1:
            return None
        try:
            return list_members(data, objs[0])
        except MalformedListError:
            return None
    return [v for e in objs for v in data.objects(e, IRI(vocab.list_value))]


def recover_structure(data: Graph, vocab: Vocab | None = None) -> ObservedSchema:
    vocab = vocab or Vocab()
    rdf_type = IRI(RDF_TYPE)
    instances: dict[str, list[Term]] = {}
    for s, _, o in data.triples(p=rdf_type):
        if isinstance(o, IRI):
            instances.setdefault(o.value, []).append(s)
    observed = ObservedSchema()
    for cls in sorted(instances):
        members = sorted(instances[cls], key=term_key)
        observed.instance_counts[cls] = len(members)
        preds = sorted({p for s in members for p in data.predicates(s) if p != rdf_type}, key=term_key)
        props = []
        for p in preds:
            per_instance = {s: data.objects(s, p) for s in members}
            all_objs = [o for objs in per_instance.values() for o in objs]
            container = ContainerKind.NONE
            if all(_is_list_head(data, o) for o in all_objs):
                container = ContainerKind.ORDERED
            elif all(_is_entry(data, o, vocab) for o in all_objs):
                container = ContainerKind.NUMBERED
            expanded = {s: _expand_objects(data, objs, container, vocab) for s, objs in per_instance.items()}
            if container is not ContainerKind.NONE and any(v is None for v in expanded.values()):
                container = ContainerKind.NONE
                expanded = per_instance
            counts = [len(v) for v in expanded.values()]
            op = ObservedProperty(p.value, container=container)
            op.subjects_total = len(members)
            op.subjects_with = sum(1 for c in counts if c > 0)
            op.max_count = max(counts)
            op.min_count = 0 if op.subjects_with < op.subjects_total else min(counts)
            for values in expanded.values():
                for v in values:
                    op.target_kinds.update(_kinds(data, v))
            props.append(op)
        observed.classes[cls] = props
    return observed


def infer_cardinality(op: ObservedProperty) -> str:
    """Clamp observed counts into one of the four multiplicity tokens."""
    lo = "1" if op.min_count >= 1 else "0"
    hi = "1" if op.max_count <= 1 else "N"
    return op.container.marker + f"{lo}..{hi}"


# --------------------------------------------------------------------------
# diff


class DiffKind(str, enum.Enum):
    MISSING_IN_DATA = "MISSING_IN_DATA"
    EXTRA_IN_DATA = "EXTRA_IN_DATA"
    CARDINALITY_MISMATCH = "CARDINALITY_MISMATCH"
    TYPE_MISMATCH = "TYPE_MISMATCH"
    CLASS_UNUSED = "CLASS_UNUSED"
    CLASS_UNDECLARED = "CLASS_UNDECLARED"


#: kinds that never fail a gate
INFORMATIONAL = {DiffKind.CLASS_UNUSED}


@dataclass(frozen=True)
class DiffEntry:
    kind: DiffKind
    class_iri: str
    predicate: str | None = None
    intended: str = ""
    observed: str = ""

    def sort_key(self) -> tuple:
        return (self.class_iri, self.predicate or "", self.kind.value, self.intended, self.observed)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "class": self.class_iri,
            "predicate": self.predicate,
            "intended": self.intended,
            "observed": self.observed,
        }


@dataclass
class SchemaDiff:
    entries: list[DiffEntry] = field(default_factory=list)

    @property
    def blocking(self) -> list[DiffEntry]:
        return [e for e in self.entries if e.kind not in INFORMATIONAL]

    def to_json(self) -> str:
        doc = {"entries": [e.to_dict() for e in self.entries], "blocking": len(self.blocking)}
        return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def to_markdown(self) -> str:
        lines = ["| kind | class | predicate | intended | observed |", "|---|---|---|---|---|"]
        for e in self.entries:
            cells = [e.kind.value, e.class_iri, e.predicate or "", e.intended, e.observed]
            lines.append("| " + " | ".join(c.replace("|", "\\|") for c in cells) + " |")
        return "\n".join(lines) + "\n"


def accepts_kind(schema: Schema, vt, kind: TargetKind) -> bool:
    if isinstance(vt, Datatype):
        return kind.kind == "datatype" and kind.iri == vt.iri
    if isinstance(vt, ClassRef):
        return kind.kind == "class" and schema.is_subclass(kind.iri, vt.iri)
    if isinstance(vt, ExternalIri):
        return kind.kind in ("untyped-iri", "class")
    assert isinstance(vt, ValueSetRef)
    return kind.kind == "untyped-iri"


def diff_schema(schema: Schema, observed: ObservedSchema) -> SchemaDiff:
    entries: list[DiffEntry] = []
    for cls in sorted(schema.classes):
        if cls not in observed.classes:
            entries.append(DiffEntry(DiffKind.CLASS_UNUSED, cls, intended="declared", observed="0 instances"))
            continue
        props = effective_properties(schema, cls)
        declared = {pd.predicate for pd in props}
        for pd in props:
            op = observed.get(cls, pd.predicate)
            if op is None:
                if pd.cardinality.min >= 1:
                    entries.append(DiffEntry(DiffKind.MISSING_IN_DATA, cls, pd.predicate, pd.token, "absent"))
                continue
            token = infer_cardinality(op)
            too_many = op.max_count > 1 and pd.cardinality.max_one
            too_few = op.min_count == 0 and pd.cardinality.min == 1 and op.subjects_total > 0
            if too_many or too_few or op.container is not pd.container:
                entries.append(DiffEntry(DiffKind.CARDINALITY_MISMATCH, cls, pd.predicate, pd.token, token))
            bad = sorted(k for k in op.target_kinds if not accepts_kind(schema, pd.value_type, k))
            if bad:
                entries.append(
                    DiffEntry(
                        DiffKind.TYPE_MISMATCH,
                        cls,
                        pd.predicate,
                        _describe_type(pd.value_type),
                        ", ".join(str(k) for k in bad),
                    )
                )
        for op in observed.classes[cls]:
            if op.predicate not in declared:
                entries.append(
                    DiffEntry(DiffKind.EXTRA_IN_DATA, cls, op.predicate, "undeclared", infer_cardinality(op))
                )
    for cls in sorted(observed.classes):
        if cls not in schema.classes:
            entries.append(
                DiffEntry(DiffKind.CLASS_UNDECLARED, cls, intended="absent", observed=f"{observed.instance_counts[cls]} instances")
            )
    entries.sort(key=DiffEntry.sort_key)
    return SchemaDiff(entries)


def _describe_type(vt) -> str:
    if isinstance(vt, Datatype):
        return f"datatype:<{vt.iri}>"
    if isinstance(vt, ClassRef):
        return f"class:<{vt.iri}>"
    if isinstance(vt, ValueSetRef):
        return f"valueset:<{vt.root}>"
    return "iri"
