"""
Compile an ontology definition graph into a checked :class:`Schema`.

Classes come from OWL/RDFS declarations. Each class may carry a
``propertyDefinitions`` literal written in a line-oriented mini-language::

    # free-text description of the next property
    ex:strand   @ex:StrandPosition  1..1
    ex:begin    xsd:integer         1..1
    ex:exons    ex:Exon             =1..N
    ex:homepage IRI                 0..1

The target is an XSD datatype, a schema class, the keyword ``IRI`` or
``@`` followed by a value-set root. Value sets are the direct subclasses
of the enumerated-value root class; their transitive subclasses are the
allowed members.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field, replace
from typing import Union

from .errors import (
    CardinalityError,
    SchemaCompileError,
    SchemaError,
    UnknownClassError,
    UnknownPrefixError,
    UnknownValueSetError,
)
from .rdf import (
    IRI,
    OWL,
    RDF,
    RDF_TYPE,
    RDFS,
    SKOS,
    XSD,
    Graph,
    Literal,
    PrefixMap,
)

EMPUSA = "http://empusa.org/0.1#"


@dataclass(frozen=True)
class Vocab:
    """IRIs of the annotation and root classes the compiler looks for.

    ``list_index``/``list_value`` are the predicates of numbered-list entries.
    """

    property_definitions: str = EMPUSA + "propertyDefinitions"
    enumerated_root: str = EMPUSA + "EnumeratedValueClass"
    list_index: str = EMPUSA + "index"
    list_value: str = EMPUSA + "value"


@dataclass(frozen=True)
class Cardinality:
    min: int
    max_one: bool

    @property
    def token(self) -> str:
        return f"{self.min}..{'1' if self.max_one else 'N'}"

    def __str__(self) -> str:
        return self.token


class ContainerKind(enum.Enum):
    NONE = ""
    ORDERED = "="
    NUMBERED = "~"

    @property
    def marker(self) -> str:
        return self.value

    @property
    def label(self) -> str:
        return {"": "none", "=": "ordered", "~": "numbered"}[self.value]


@dataclass(frozen=True)
class Datatype:
    iri: str


@dataclass(frozen=True)
class ClassRef:
    iri: str


@dataclass(frozen=True)
class ExternalIri:
    pass


@dataclass(frozen=True)
class ValueSetRef:
    root: str


ValueType = Union[Datatype, ClassRef, ExternalIri, ValueSetRef]


@dataclass(frozen=True)
class PropertyDef:
    predicate: str
    value_type: ValueType
    cardinality: Cardinality
    container: ContainerKind = ContainerKind.NONE
    description: str | None = None
    source_line: int = field(default=0, compare=False)

    @property
    def token(self) -> str:
        """Cardinality token including the list marker, e.g. ``=0..N``."""
        return self.container.marker + self.cardinality.token

    def same_constraint(self, other: PropertyDef) -> bool:
        return (self.value_type, self.cardinality, self.container) == (
            other.value_type,
            other.cardinality,
            other.container,
        )


@dataclass
class ClassDef:
    iri: str
    label: str | None = None
    description: str | None = None
    parents: list[str] = field(default_factory=list)
    own_properties: list[PropertyDef] = field(default_factory=list)


@dataclass(frozen=True)
class ValueSetMember:
    iri: str
    parent: str | None = None
    label: str | None = None


@dataclass
class ValueSet:
    root: str
    label: str | None = None
    description: str | None = None
    members: list[ValueSetMember] = field(default_factory=list)

    @property
    def member_iris(self) -> set[str]:
        return {m.iri for m in self.members}


@dataclass
class Schema:
    ontology_iri: str | None = None
    prefixes: PrefixMap = field(default_factory=PrefixMap)
    classes: dict[str, ClassDef] = field(default_factory=dict)
    value_sets: dict[str, ValueSet] = field(default_factory=dict)
    vocab: Vocab = field(default_factory=Vocab)
    ontology_label: str | None = None
    # filled by resolve_schema
    resolved: bool = False
    linearization: dict[str, tuple[str, ...]] = field(default_factory=dict, repr=False)
    effective: dict[str, tuple[PropertyDef, ...]] = field(default_factory=dict, repr=False)
    declared_by: dict[tuple[str, str], str] = field(default_factory=dict, repr=False)
    descendants: dict[str, frozenset[str]] = field(default_factory=dict, repr=False)

    def is_subclass(self, sub: str, sup: str) -> bool:
        """Reflexive subclass test over the schema hierarchy."""
        return sub == sup or sub in self.descendants.get(sup, ())

    def ancestors(self, iri: str) -> tuple[str, ...]:
        return tuple(c for c in self.linearization[iri] if c != iri)


# --------------------------------------------------------------------------
# cardinality tokens

_CARD_RE = re.compile(r"^([=~]?)([01])\.\.([1N])$")


def parse_cardinality(token: str) -> tuple[Cardinality, ContainerKind]:
    m = _CARD_RE.match(token)
    if not m:
        raise CardinalityError(token)
    marker, lo, hi = m.groups()
    return Cardinality(int(lo), hi == "1"), ContainerKind(marker)


# --------------------------------------------------------------------------
# property blocks

_IRIREF_RE = re.compile(r"^<([^<>\s]+)>$")
_CURIE_RE = re.compile(r"^([A-Za-z][\w.\-]*)?:(\S*)$")


class _LineError(Exception):
    def __init__(self, code: str, message: str):
        self.code = code
        self.message = message


def _expand(token: str, prefixes: PrefixMap) -> str:
    m = _IRIREF_RE.match(token)
    if m:
        value = m.group(1)
    else:
        m = _CURIE_RE.match(token)
        if not m:
            raise _LineError("syntax", f"expected a CURIE or <IRI>, found '{token}'")
        try:
            value = prefixes.expand(token)
        except UnknownPrefixError as exc:
            raise _LineError("unknown-prefix", f"unknown prefix '{exc.prefix}'") from None
    try:
        IRI(value)
    except ValueError:
        raise _LineError("syntax", f"not an absolute IRI: '{value}'") from None
    return value


def _parse_target(token: str, prefixes: PrefixMap) -> ValueType:
    if token == "IRI":
        return ExternalIri()
    if token.startswith("@"):
        return ValueSetRef(_expand(token[1:], prefixes))
    iri = _expand(token, prefixes)
    if iri.startswith(XSD):
        return Datatype(iri)
    return ClassRef(iri)


def _block_errors(text: str, prefixes: PrefixMap) -> tuple[list[PropertyDef], list[tuple[int, str, str, str | None]]]:
    props: list[PropertyDef] = []
    errors: list[tuple[int, str, str, str | None]] = []
    seen: dict[str, int] = {}
    pending: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            pending = []
            continue
        if line.startswith("#"):
            body = line[1:]
            pending.append(body[1:] if body.startswith(" ") else body)
            continue
        description = "\n".join(pending) if pending else None
        pending = []
        parts = line.split()
        if len(parts) != 3:
            errors.append((lineno, "syntax", f"expected 'predicate type cardinality', found '{line}'", None))
            continue
        pred_tok, type_tok, card_tok = parts
        try:
            predicate = _expand(pred_tok, prefixes)
            value_type = _parse_target(type_tok, prefixes)
            try:
                card, container = parse_cardinality(card_tok)
            except CardinalityError as exc:
                raise _LineError("malformed-cardinality", str(exc)) from None
        except _LineError as exc:
            errors.append((lineno, exc.code, exc.message, None))
            continue
        if predicate in seen:
            errors.append(
                (lineno, "duplicate-predicate", f"predicate already defined on line {seen[predicate]}", predicate)
            )
            continue
        seen[predicate] = lineno
        props.append(PropertyDef(predicate, value_type, card, container, description, lineno))
    return props, errors


def parse_property_block(text: str, prefixes: PrefixMap, class_iri: str | None = None) -> list[PropertyDef]:
    """Parse one ``propertyDefinitions`` literal into property definitions.

    Raises :class:`SchemaCompileError` listing every malformed line.
    """
    props, errors = _block_errors(text, prefixes)
    if errors:
        raise SchemaCompileError(
            [SchemaError(code, msg, class_iri, pred, line) for line, code, msg, pred in errors]
        )
    return props


def format_property_block(props: list[PropertyDef], prefixes: PrefixMap) -> str:
    """Write property definitions back in the mini-language."""

    def name(iri: str) -> str:
        return prefixes.compact(iri) or f"<{iri}>"

    lines = []
    for pd in props:
        if pd.description is not None:
            lines.extend(f"# {d}" if d else "#" for d in pd.description.split("\n"))
        vt = pd.value_type
        if isinstance(vt, ExternalIri):
            target = "IRI"
        elif isinstance(vt, ValueSetRef):
            target = "@" + name(vt.root)
        else:
            target = name(vt.iri)
        lines.append(f"{name(pd.predicate)} {target} {pd.token}")
    return "\n".join(lines)


# --------------------------------------------------------------------------
# loading


def _literal_text(graph: Graph, subject: IRI, predicate: str) -> str | None:
    for o in graph.objects(subject, IRI(predicate)):
        if isinstance(o, Literal):
            return o.lexical
    return None


def _subclass_edges(graph: Graph) -> dict[str, list[str]]:
    parents: dict[str, list[str]] = {}
    for s, _, o in graph.triples(p=IRI(RDFS + "subClassOf")):
        if isinstance(s, IRI) and isinstance(o, IRI):
            parents.setdefault(s.value, []).append(o.value)
    return parents


def load_schema(graph: Graph, vocab: Vocab | None = None, prefixes: PrefixMap | None = None) -> Schema:
    """Extract classes, value sets and property blocks from a definition graph.

    Every malformed property block is reported in one
    :class:`SchemaCompileError`; the root class for value sets is optional.
    """
    vocab = vocab or Vocab()
    pm = graph.prefixes.copy()
    for label, ns in (prefixes.items() if prefixes else []):
        pm.bind(label, ns, replace=True)
    for label, ns in (("xsd", XSD), ("rdf", RDF), ("rdfs", RDFS), ("owl", OWL)):
        if label not in pm:
            pm.bind(label, ns)

    rdf_type = IRI(RDF_TYPE)
    parents = _subclass_edges(graph)
    children: dict[str, list[str]] = {}
    for child, ps in parents.items():
        for p in ps:
            children.setdefault(p, []).append(child)

    # enumerated-value subtree
    enum_subtree: set[str] = set()
    value_sets: dict[str, ValueSet] = {}
    root = vocab.enumerated_root
    owner: dict[str, str] = {}
    errors: list[SchemaError] = []
    if root in children or IRI(root) in graph.subjects(rdf_type, IRI(OWL + "Class")):
        enum_subtree.add(root)
    for vs_root in sorted(children.get(root, [])):
        enum_subtree.add(vs_root)
        vs = ValueSet(
            vs_root,
            label=_literal_text(graph, IRI(vs_root), RDFS + "label"),
            description=_literal_text(graph, IRI(vs_root), SKOS + "description")
            or _literal_text(graph, IRI(vs_root), RDFS + "comment"),
        )
        stack = [(vs_root, c) for c in sorted(children.get(vs_root, []))]
        visited: set[str] = set()
        while stack:
            parent, member = stack.pop(0)
            if member in visited:
                continue
            visited.add(member)
            if member in owner and owner[member] != vs_root:
                errors.append(
                    SchemaError(
                        "valueset-overlap",
                        f"member <{member}> already belongs to value set <{owner[member]}>",
                        vs_root,
                    )
                )
                continue
            owner[member] = vs_root
            enum_subtree.add(member)
            vs.members.append(
                ValueSetMember(
                    member,
                    None if parent == vs_root else parent,
                    _literal_text(graph, IRI(member), RDFS + "label"),
                )
            )
            stack.extend((member, c) for c in sorted(children.get(member, [])))
        value_sets[vs_root] = vs

    class_iris: set[str] = set()
    for kind in (OWL + "Class", RDFS + "Class"):
        for s in graph.subjects(rdf_type, IRI(kind)):
            if isinstance(s, IRI) and s.value not in enum_subtree:
                class_iris.add(s.value)

    ontology_iri = None
    for s in graph.subjects(rdf_type, IRI(OWL + "Ontology")):
        if isinstance(s, IRI):
            ontology_iri = s.value
            break

    classes: dict[str, ClassDef] = {}
    for iri in sorted(class_iris):
        node = IRI(iri)
        cdef = ClassDef(
            iri,
            label=_literal_text(graph, node, RDFS + "label"),
            description=_literal_text(graph, node, SKOS + "description")
            or _literal_text(graph, node, RDFS + "comment"),
            parents=[p for p in parents.get(iri, []) if p != OWL + "Thing"],
        )
        cdef.parents.sort()
        blocks = [o for o in graph.objects(node, IRI(vocab.property_definitions)) if isinstance(o, Literal)]
        seen: dict[str, int] = {}
        for block in blocks:
            props, block_errors = _block_errors(block.lexical, pm)
            for line, code, msg, pred in block_errors:
                errors.append(SchemaError(code, msg, iri, pred, line))
            for pd in props:
                if pd.predicate in seen:
                    errors.append(
                        SchemaError("duplicate-predicate", "predicate defined twice", iri, pd.predicate, pd.source_line)
                    )
                    continue
                seen[pd.predicate] = pd.source_line
                cdef.own_properties.append(pd)
        classes[iri] = cdef

    if errors:
        raise SchemaCompileError(errors)
    label = _literal_text(graph, IRI(ontology_iri), RDFS + "label") if ontology_iri else None
    return Schema(ontology_iri, pm, classes, value_sets, vocab, ontology_label=label)


# --------------------------------------------------------------------------
# resolution


def _find_cycles(classes: dict[str, ClassDef]) -> list[list[str]]:
    white, grey, black = 0, 1, 2
    state = {c: white for c in classes}
    cycles: list[list[str]] = []
    path: list[str] = []

    def visit(c: str) -> None:
        state[c] = grey
        path.append(c)
        for p in classes[c].parents:
            if p not in classes:
                continue
            if state[p] == grey:
                cycles.append(path[path.index(p) :])
            elif state[p] == white:
                visit(p)
        path.pop()
        state[c] = black

    for c in sorted(classes):
        if state[c] == white:
            visit(c)
    return cycles


def _linearize(classes: dict[str, ClassDef], iri: str) -> tuple[str, ...]:
    out: list[str] = []
    seen: set[str] = set()

    def visit(c: str) -> None:
        if c in seen:
            return
        seen.add(c)
        for p in classes[c].parents:
            visit(p)
        out.append(c)

    visit(iri)
    return tuple(out)


def resolve_schema(schema: Schema) -> Schema:
    """Check references, acyclicity, containers and overrides.

    Returns a new schema carrying linearizations, effective property lists
    and subclass tables, or raises :class:`SchemaCompileError` with all
    problems found.
    """
    errors: list[SchemaError] = []
    classes = schema.classes

    for c, cdef in sorted(classes.items()):
        for p in cdef.parents:
            if p not in classes:
                errors.append(SchemaError("dangling-reference", f"parent class <{p}> is not declared", c))
        for pd in cdef.own_properties:
            vt = pd.value_type
            if isinstance(vt, ClassRef) and vt.iri not in classes:
                errors.append(
                    SchemaError(
                        "dangling-reference",
                        f"target <{vt.iri}> is neither an XSD datatype nor a declared class",
                        c,
                        pd.predicate,
                        pd.source_line,
                    )
                )
            elif isinstance(vt, ValueSetRef) and vt.root not in schema.value_sets:
                errors.append(
                    SchemaError(
                        "dangling-reference",
                        f"value set <{vt.root}> is not declared",
                        c,
                        pd.predicate,
                        pd.source_line,
                    )
                )
            if pd.container is not ContainerKind.NONE and pd.cardinality.max_one:
                errors.append(
                    SchemaError(
                        "container-on-single",
                        f"list marker '{pd.container.marker}' needs an unbounded cardinality, got {pd.cardinality}",
                        c,
                        pd.predicate,
                        pd.source_line,
                    )
                )

    for cycle in _find_cycles(classes):
        ring = " -> ".join(f"<{c}>" for c in cycle + cycle[:1])
        errors.append(SchemaError("subclass-cycle", f"subclass cycle {ring}", min(cycle)))

    if errors:
        raise SchemaCompileError(errors)

    lin = {c: _linearize(classes, c) for c in classes}
    ancestor_sets = {c: set(lin[c]) - {c} for c in classes}
    descendants: dict[str, set[str]] = {c: set() for c in classes}
    for c, ancs in ancestor_sets.items():
        for a in ancs:
            descendants[a].add(c)

    effective: dict[str, tuple[PropertyDef, ...]] = {}
    declared_by: dict[tuple[str, str], str] = {}
    for c in sorted(classes):
        definers: dict[str, list[str]] = {}
        for k in lin[c]:
            for pd in classes[k].own_properties:
                definers.setdefault(pd.predicate, []).append(k)
        winner: dict[str, str] = {}
        for pred, ks in definers.items():
            most_derived = [k for k in ks if not any(k in ancestor_sets[o] for o in ks if o != k)]
            defs = [_own(classes[k], pred) for k in most_derived]
            if any(not d.same_constraint(defs[0]) for d in defs[1:]):
                names = ", ".join(f"<{k}>" for k in most_derived)
                errors.append(
                    SchemaError(
                        "override-conflict",
                        f"inherited definitions from {names} disagree; redefine the property on this class",
                        c,
                        pred,
                    )
                )
                continue
            # identical definitions: the latest in linearization order wins
            winner[pred] = most_derived[-1]
        props = []
        for k in lin[c]:
            for pd in classes[k].own_properties:
                if winner.get(pd.predicate) == k:
                    props.append(pd)
                    declared_by[(c, pd.predicate)] = k
        effective[c] = tuple(props)

    if errors:
        raise SchemaCompileError(errors)

    return replace(
        schema,
        resolved=True,
        linearization=lin,
        effective=effective,
        declared_by=declared_by,
        descendants={c: frozenset(d) for c, d in descendants.items()},
    )


def _own(cdef: ClassDef, predicate: str) -> PropertyDef:
    return next(pd for pd in cdef.own_properties if pd.predicate == predicate)


def compile_schema(graph: Graph, vocab: Vocab | None = None, prefixes: PrefixMap | None = None) -> Schema:
    return resolve_schema(load_schema(graph, vocab, prefixes))


def effective_properties(schema: Schema, class_iri: str) -> list[PropertyDef]:
    """Own plus inherited properties, ancestors first; overrides replace."""
    if not schema.resolved:
        raise ValueError("schema has not been resolved")
    if class_iri not in schema.effective:
        raise UnknownClassError(class_iri)
    return list(schema.effective[class_iri])


def valueset_members(schema: Schema, root_iri: str) -> set[str]:
    if root_iri not in schema.value_sets:
        raise UnknownValueSetError(root_iri)
    return schema.value_sets[root_iri].member_iris


def local_name(iri: str) -> str:
    for sep in ("#", "/", ":"):
        idx = iri.rfind(sep)
        if idx >= 0 and idx < len(iri) - 1:
            return iri[idx + 1 :]
    return iri
