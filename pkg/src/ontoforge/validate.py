"""
Validate instance data against a resolved schema.

Every node typed with a schema class is checked against the effective
properties of each of its schema types. Findings are reported as
:class:`Violation` records; validation itself never raises on bad data.
"""

from __future__ import annotations

import enum
import json
from collections import Counter
from dataclasses import dataclass, field

from .errors import MalformedListError
from .rdf import IRI, RDF_TYPE, XSD, BNode, Graph, Literal, Term, list_members, term_key
from .schema import (
    ClassRef,
    ContainerKind,
    Datatype,
    ExternalIri,
    PropertyDef,
    Schema,
    ValueSetRef,
    ValueType,
    effective_properties,
    local_name,
)
from .xsd import is_valid_lexical


class Severity(str, enum.Enum):
    ERROR = "ERROR"
    WARNING = "WARNING"


class Code(str, enum.Enum):
    MISSING_REQUIRED = "MISSING_REQUIRED"
    TOO_MANY = "TOO_MANY"
    BAD_DATATYPE = "BAD_DATATYPE"
    BAD_TARGET_TYPE = "BAD_TARGET_TYPE"
    NOT_IN_VALUESET = "NOT_IN_VALUESET"
    NOT_AN_IRI = "NOT_AN_IRI"
    UNDECLARED_PREDICATE = "UNDECLARED_PREDICATE"
    UNTYPED_NODE = "UNTYPED_NODE"
    AMBIGUOUS_TYPE = "AMBIGUOUS_TYPE"
    MALFORMED_LIST = "MALFORMED_LIST"

    @property
    def severity(self) -> Severity:
        return SEVERITY[self]


SEVERITY = {
    Code.MISSING_REQUIRED: Severity.ERROR,
    Code.TOO_MANY: Severity.ERROR,
    Code.BAD_DATATYPE: Severity.ERROR,
    Code.BAD_TARGET_TYPE: Severity.ERROR,
    Code.NOT_IN_VALUESET: Severity.ERROR,
    Code.NOT_AN_IRI: Severity.ERROR,
    Code.MALFORMED_LIST: Severity.ERROR,
    Code.UNDECLARED_PREDICATE: Severity.WARNING,
    Code.UNTYPED_NODE: Severity.WARNING,
    Code.AMBIGUOUS_TYPE: Severity.WARNING,
}


@dataclass(frozen=True)
class Violation:
    code: Code
    focus: Term
    class_iri: str | None = None
    predicate: str | None = None
    expected: str = ""
    actual: str = ""
    message: str = ""

    def __post_init__(self):
        if isinstance(self.focus, Literal):
            raise ValueError("violation focus cannot be a literal")

    @property
    def severity(self) -> Severity:
        return SEVERITY[self.code]

    def sort_key(self) -> tuple:
        return (
            term_key(self.focus),
            self.code.value,
            self.class_iri or "",
            self.predicate or "",
            self.expected,
            self.actual,
            self.message,
        )

    def to_text(self) -> str:
        return (
            f"{self.severity.value} {self.code.value} focus={self.focus.n3()}"
            f" class=<{self.class_iri or ''}> predicate=<{self.predicate or ''}>"
            f" expected={self.expected} actual={self.actual} {self.message}"
        )

    def to_dict(self) -> dict:
        return {
            "code": self.code.value,
            "severity": self.severity.value,
            "focus": self.focus.n3(),
            "class": self.class_iri,
            "predicate": self.predicate,
            "expected": self.expected,
            "actual": self.actual,
            "message": self.message,
        }


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)
    checked_node_count: int = 0

    @property
    def counts(self) -> dict[str, int]:
        c = Counter(v.code.value for v in self.violations)
        return dict(sorted(c.items()))

    @property
    def conformant(self) -> bool:
        return not any(v.severity is Severity.ERROR for v in self.violations)

    def to_text(self) -> str:
        lines = [v.to_text() for v in self.violations]
        summary = ", ".join(f"{k}={n}" for k, n in self.counts.items()) or "no violations"
        lines.append(
            f"# checked {self.checked_node_count} nodes; conformant={'true' if self.conformant else 'false'}; {summary}"
        )
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        doc = {
            "conformant": self.conformant,
            "checkedNodeCount": self.checked_node_count,
            "counts": self.counts,
            "violations": [v.to_dict() for v in self.violations],
        }
        return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _schema_types(schema: Schema, data: Graph, node: Term) -> list[str]:
    return [t.value for t in data.objects(node, IRI(RDF_TYPE)) if isinstance(t, IRI) and t.value in schema.classes]


def _describe(vt: ValueType) -> str:
    if isinstance(vt, Datatype):
        return f"<{vt.iri}>"
    if isinstance(vt, ClassRef):
        return f"instance of <{vt.iri}>"
    if isinstance(vt, ValueSetRef):
        return f"member of <{vt.root}>"
    return "IRI"


def classify_term(schema: Schema, data: Graph, value: Term, expected: ValueType) -> Violation | None:
    """Check one value against a value type.

    The returned violation has a placeholder focus (the value itself when
    it is a node); :func:`check_node` re-targets it at the owning subject.
    """
    focus = value if not isinstance(value, Literal) else BNode("value")
    want = _describe(expected)
    if isinstance(expected, Datatype):
        if not isinstance(value, Literal) or value.datatype != expected.iri:
            return Violation(Code.BAD_DATATYPE, focus, expected=want, actual=value.n3(), message="wrong datatype")
        if not is_valid_lexical(expected.iri, value.lexical):
            return Violation(
                Code.BAD_DATATYPE, focus, expected=want, actual=value.n3(), message="invalid lexical form"
            )
        return None
    if isinstance(expected, ClassRef):
        if isinstance(value, Literal):
            return Violation(Code.BAD_TARGET_TYPE, focus, expected=want, actual=value.n3(), message="literal value")
        types = [t for t in data.objects(value, IRI(RDF_TYPE))]
        if not types:
            return Violation(Code.UNTYPED_NODE, focus, expected=want, actual=value.n3(), message="value has no rdf:type")
        if any(isinstance(t, IRI) and schema.is_subclass(t.value, expected.iri) for t in types):
            return None
        return Violation(
            Code.BAD_TARGET_TYPE,
            focus,
            expected=want,
            actual=value.n3(),
            message="typed " + " ".join(t.n3() for t in types),
        )
    if isinstance(expected, ExternalIri):
        if isinstance(value, IRI):
            return None
        return Violation(Code.NOT_AN_IRI, focus, expected=want, actual=value.n3(), message="value is not an IRI")
    assert isinstance(expected, ValueSetRef)
    if isinstance(value, IRI) and value.value in schema.value_sets[expected.root].member_iris:
        return None
    return Violation(
        Code.NOT_IN_VALUESET,
        focus,
        expected=want,
        actual=value.n3(),
        message=f"not a member of {local_name(expected.root)}",
    )


def _numbered_values(schema: Schema, data: Graph, entries: list[Term]) -> list[Term]:
    index_p, value_p = IRI(schema.vocab.list_index), IRI(schema.vocab.list_value)
    by_index: dict[int, Term] = {}
    for entry in entries:
        if isinstance(entry, Literal):
            raise MalformedListError(f"literal entry {entry.n3()}")
        idx = data.objects(entry, index_p)
        val = data.objects(entry, value_p)
        if len(idx) != 1 or len(val) != 1:
            raise MalformedListError(f"entry {entry.n3()} needs exactly one index and one value")
        i = idx[0]
        if not (isinstance(i, Literal) and i.datatype == XSD + "integer" and is_valid_lexical(i.datatype, i.lexical)):
            raise MalformedListError(f"entry {entry.n3()} has a non-integer index")
        n = int(i.lexical)
        if n in by_index:
            raise MalformedListError(f"index {n} used twice")
        by_index[n] = val[0]
    if sorted(by_index) != list(range(len(by_index))):
        raise MalformedListError("indices are not 0..n-1")
    return [by_index[i] for i in range(len(by_index))]


def _values(schema: Schema, data: Graph, focus: Term, pd: PropertyDef) -> list[Term]:
    objects = data.objects(focus, IRI(pd.predicate))
    if pd.container is ContainerKind.ORDERED:
        if not objects:
            return []
        if len(objects) > 1:
            raise MalformedListError(f"{len(objects)} list heads, expected one")
        return list_members(data, objects[0])
    if pd.container is ContainerKind.NUMBERED:
        return _numbered_values(schema, data, objects)
    return objects


def check_node(schema: Schema, data: Graph, focus: Term, class_iri: str) -> list[Violation]:
    out: list[Violation] = []
    props = effective_properties(schema, class_iri)
    for pd in props:
        try:
            values = _values(schema, data, focus, pd)
        except MalformedListError as exc:
            out.append(
                Violation(
                    Code.MALFORMED_LIST,
                    focus,
                    class_iri,
                    pd.predicate,
                    expected=f"{pd.container.label} list",
                    actual="malformed",
                    message=str(exc),
                )
            )
            continue
        card = pd.cardinality
        if len(values) < card.min:
            out.append(
                Violation(
                    Code.MISSING_REQUIRED, focus, class_iri, pd.predicate, pd.token, str(len(values)), "required property missing"
                )
            )
        if card.max_one and len(values) > 1:
            out.append(
                Violation(Code.TOO_MANY, focus, class_iri, pd.predicate, pd.token, str(len(values)), "at most one value allowed")
            )
        for value in values:
            v = classify_term(schema, data, value, pd.value_type)
            if v is not None:
                out.append(
                    Violation(v.code, focus, class_iri, pd.predicate, v.expected, v.actual, v.message)
                )
    declared = {pd.predicate for pd in props}
    for p in data.predicates(focus):
        if p.value == RDF_TYPE or p.value in declared:
            continue
        out.append(
            Violation(
                Code.UNDECLARED_PREDICATE,
                focus,
                class_iri,
                p.value,
                expected="",
                actual=str(data.count(focus, p)),
                message="predicate not declared for class",
            )
        )
    return out


def validate_graph(schema: Schema, data: Graph) -> ValidationReport:
    """Check every node typed with a schema class.

    A predicate counts as undeclared only when none of the node's schema
    types declares it; it is then reported once, under the first such type.
    """
    violations: list[Violation] = []
    focus_nodes = sorted(
        {s for s, _, o in data.triples(p=IRI(RDF_TYPE)) if isinstance(o, IRI) and o.value in schema.classes},
        key=term_key,
    )
    for node in focus_nodes:
        types = sorted(_schema_types(schema, data, node))
        undeclared: dict[str, list[Violation]] = {}
        for cls in types:
            for v in check_node(schema, data, node, cls):
                if v.code is Code.UNDECLARED_PREDICATE:
                    undeclared.setdefault(v.predicate, []).append(v)
                else:
                    violations.append(v)
        for pred, found in undeclared.items():
            if len(found) == len(types):
                violations.append(found[0])
        specific = [t for t in types if not any(o != t and schema.is_subclass(o, t) for o in types)]
        if len(specific) > 1:
            violations.append(
                Violation(
                    Code.AMBIGUOUS_TYPE,
                    node,
                    expected="one most specific schema type",
                    actual=" ".join(f"<{t}>" for t in specific),
                    message="node typed with unrelated schema classes",
                )
            )
    violations.sort(key=Violation.sort_key)
    return ValidationReport(violations, len(focus_nodes))
