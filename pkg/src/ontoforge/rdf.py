"""
Minimal RDF data model with deterministic Turtle and N-Triples support.

Terms are small frozen dataclasses, a :class:`Graph` is a set of triples with
subject/predicate indexes, and the serializer writes a canonical layout so
that equal graphs always produce byte-identical text.
"""

from __future__ import annotations

import itertools
import re
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Iterator, Union

from .errors import MalformedListError, RdfSyntaxError, UnknownPrefixError

RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"
XSD = "http://www.w3.org/2001/XMLSchema#"
OWL = "http://www.w3.org/2002/07/owl#"
SKOS = "http://www.w3.org/2004/02/skos/core#"

RDF_TYPE = RDF + "type"
RDF_FIRST = RDF + "first"
RDF_REST = RDF + "rest"
RDF_NIL = RDF + "nil"
RDF_LANGSTRING = RDF + "langString"
XSD_STRING = XSD + "string"

_IRI_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*:[^\s<>\"{}|^`\\]*$")
_LANG_RE = re.compile(r"^[A-Za-z]+(-[A-Za-z0-9]+)*$")


@dataclass(frozen=True, slots=True)
class IRI:
    value: str

    def __post_init__(self):
        if not isinstance(self.value, str) or not _IRI_RE.match(self.value):
            raise ValueError(f"not an absolute IRI: {self.value!r}")

    def n3(self) -> str:
        return f"<{self.value}>"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, slots=True)
class BNode:
    label: str

    def n3(self) -> str:
        return f"_:{self.label}"

    def __str__(self) -> str:
        return self.n3()


@dataclass(frozen=True, slots=True)
class Literal:
    lexical: str
    datatype: str = ""
    language: str | None = None

    def __post_init__(self):
        if self.language is not None:
            if not _LANG_RE.match(self.language):
                raise ValueError(f"bad language tag: {self.language!r}")
            if self.datatype in ("", RDF_LANGSTRING):
                object.__setattr__(self, "datatype", RDF_LANGSTRING)
            else:
                raise ValueError("a language-tagged literal must have datatype rdf:langString")
        elif not self.datatype:
            object.__setattr__(self, "datatype", XSD_STRING)
        elif self.datatype == RDF_LANGSTRING:
            raise ValueError("rdf:langString literal requires a language tag")

    def n3(self, prefixes: PrefixMap | None = None) -> str:
        text = _quote(self.lexical)
        if self.language is not None:
            return f"{text}@{self.language}"
        if self.datatype == XSD_STRING:
            return text
        dt = prefixes.compact(self.datatype) if prefixes is not None else None
        return f"{text}^^{dt or '<' + self.datatype + '>'}"

    def __str__(self) -> str:
        return self.n3()


Term = Union[IRI, BNode, Literal]
Triple = tuple  # (subject, IRI, object)


def term_key(term: Term) -> tuple:
    """Canonical sort key: IRIs, then blank nodes, then literals."""
    if isinstance(term, IRI):
        return (0, term.value, "", "")
    if isinstance(term, BNode):
        return (1, term.label, "", "")
    return (2, term.datatype, term.lexical, term.language or "")


def triple_key(triple: Triple) -> tuple:
    s, p, o = triple
    return (term_key(s), p.value, term_key(o))


class PrefixMap:
    """Prefix label to namespace bindings; at most one label per namespace."""

    def __init__(self, entries: dict[str, str] | None = None):
        self._ns: dict[str, str] = {}
        for label, ns in (entries or {}).items():
            self.bind(label, ns)

    def bind(self, label: str, namespace: str, replace: bool = False) -> None:
        holder = self.label_for(namespace)
        if holder is not None and holder != label:
            if not replace:
                return
            del self._ns[holder]
        self._ns[label] = namespace

    def label_for(self, namespace: str) -> str | None:
        for label, ns in self._ns.items():
            if ns == namespace:
                return label
        return None

    def expand(self, curie: str) -> str:
        label, sep, local = curie.partition(":")
        if not sep:
            raise ValueError(f"not a CURIE: {curie!r}")
        if label not in self._ns:
            raise UnknownPrefixError(label)
        return self._ns[label] + local

    def compact(self, iri: str) -> str | None:
        best = None
        for label, ns in self._ns.items():
            if iri.startswith(ns) and _LOCAL_SAFE.match(iri[len(ns):]):
                if best is None or len(ns) > len(self._ns[best]):
                    best = label
        if best is None:
            return None
        return f"{best}:{iri[len(self._ns[best]):]}"

    def items(self):
        return sorted(self._ns.items())

    def copy(self) -> PrefixMap:
        return PrefixMap(dict(self._ns))

    def __contains__(self, label: str) -> bool:
        return label in self._ns

    def __getitem__(self, label: str) -> str:
        return self._ns[label]

    def __len__(self) -> int:
        return len(self._ns)

    def __eq__(self, other) -> bool:
        return isinstance(other, PrefixMap) and self._ns == other._ns

    def __repr__(self) -> str:
        return f"PrefixMap({dict(self.items())!r})"


# local names the serializer may write unescaped
_LOCAL_SAFE = re.compile(r"^(?:[A-Za-z0-9_](?:[A-Za-z0-9_.\-]*[A-Za-z0-9_\-])?)?$")
_PREFIX_SAFE = re.compile(r"^(?:[A-Za-z](?:[A-Za-z0-9_.\-]*[A-Za-z0-9_\-])?)?$")


class Graph:
    """A set of RDF triples plus a prefix map.

    ``add`` and ``remove`` exist for construction; once a graph has been
    handed to the compiler or validator it is treated as read-only.
    """

    def __init__(self, triples: Iterable[Triple] = (), prefixes: PrefixMap | dict | None = None):
        self._triples: set[Triple] = set()
        self._spo: dict = defaultdict(lambda: defaultdict(set))
        self._pos: dict = defaultdict(lambda: defaultdict(set))
        if isinstance(prefixes, PrefixMap):
            self.prefixes = prefixes.copy()
        else:
            self.prefixes = PrefixMap(prefixes)
        for t in triples:
            self.add(*t)

    def add(self, s: Term, p: IRI, o: Term) -> None:
        if isinstance(s, Literal):
            raise ValueError("a literal cannot be a subject")
        if not isinstance(p, IRI):
            raise ValueError("predicate must be an IRI")
        if not isinstance(o, (IRI, BNode, Literal)):
            raise ValueError(f"not an RDF term: {o!r}")
        t = (s, p, o)
        if t in self._triples:
            return
        self._triples.add(t)
        self._spo[s][p].add(o)
        self._pos[p][o].add(s)

    def remove(self, s: Term, p: IRI, o: Term) -> None:
        t = (s, p, o)
        if t not in self._triples:
            return
        self._triples.discard(t)
        self._spo[s][p].discard(o)
        if not self._spo[s][p]:
            del self._spo[s][p]
            if not self._spo[s]:
                del self._spo[s]
        self._pos[p][o].discard(s)
        if not self._pos[p][o]:
            del self._pos[p][o]
            if not self._pos[p]:
                del self._pos[p]

    def copy(self) -> Graph:
        return Graph(self._triples, self.prefixes)

    def __len__(self) -> int:
        return len(self._triples)

    def __iter__(self) -> Iterator[Triple]:
        return iter(sorted(self._triples, key=triple_key))

    def __contains__(self, triple) -> bool:
        return tuple(triple) in self._triples

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self._triples == other._triples

    def __repr__(self) -> str:
        return f"<Graph {len(self)} triples>"

    def triples(self, s=None, p=None, o=None) -> list[Triple]:
        if s is not None:
            by_p = self._spo.get(s, {})
            preds = [p] if p is not None else list(by_p)
            out = [(s, pp, oo) for pp in preds for oo in by_p.get(pp, ()) if o is None or oo == o]
        elif p is not None:
            by_o = self._pos.get(p, {})
            objs = [o] if o is not None else list(by_o)
            out = [(ss, p, oo) for oo in objs for ss in by_o.get(oo, ())]
        else:
            out = [t for t in self._triples if o is None or t[2] == o]
        return sorted(out, key=triple_key)

    def objects(self, s: Term, p: IRI) -> list[Term]:
        return sorted(self._spo.get(s, {}).get(p, ()), key=term_key)

    def subjects(self, p: IRI | None = None, o: Term | None = None) -> list[Term]:
        if p is None:
            if o is None:
                return sorted(self._spo, key=term_key)
            return sorted({t[0] for t in self._triples if t[2] == o}, key=term_key)
        by_o = self._pos.get(p, {})
        if o is None:
            found = set().union(*by_o.values()) if by_o else set()
        else:
            found = by_o.get(o, set())
        return sorted(found, key=term_key)

    def predicates(self, s: Term) -> list[IRI]:
        return sorted(self._spo.get(s, {}), key=term_key)

    def count(self, s: Term, p: IRI) -> int:
        return len(self._spo.get(s, {}).get(p, ()))

    def value(self, s: Term, p: IRI) -> Term | None:
        objs = self.objects(s, p)
        return objs[0] if objs else None

    def blank_nodes(self) -> set[BNode]:
        out = set()
        for s, _, o in self._triples:
            if isinstance(s, BNode):
                out.add(s)
            if isinstance(o, BNode):
                out.add(o)
        return out


def objects_of(graph: Graph, subject: Term, predicate: IRI) -> list[Term]:
    return graph.objects(subject, predicate)


def instances_of(graph: Graph, class_iri: IRI | str) -> set[Term]:
    """Subjects directly typed with ``class_iri`` (no subclass closure)."""
    cls = class_iri if isinstance(class_iri, IRI) else IRI(class_iri)
    return set(graph.subjects(IRI(RDF_TYPE), cls))


def list_members(graph: Graph, head: Term) -> list[Term]:
    """Walk an rdf:first/rdf:rest chain starting at ``head``."""
    first, rest, nil = IRI(RDF_FIRST), IRI(RDF_REST), IRI(RDF_NIL)
    members: list[Term] = []
    seen: set[Term] = set()
    node = head
    while node != nil:
        if node in seen:
            raise MalformedListError(f"cycle at {node.n3()}")
        if isinstance(node, Literal):
            raise MalformedListError(f"literal {node.n3()} in list position")
        seen.add(node)
        firsts = graph.objects(node, first)
        rests = graph.objects(node, rest)
        if len(firsts) != 1:
            raise MalformedListError(f"{node.n3()} has {len(firsts)} rdf:first values")
        if len(rests) != 1:
            raise MalformedListError(f"{node.n3()} has {len(rests)} rdf:rest values")
        members.append(firsts[0])
        node = rests[0]
    return members


# --------------------------------------------------------------------------
# lexical helpers

_ECHAR = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f", '"': '"', "'": "'", "\\": "\\"}
_UCHAR_RE = re.compile(r"\\u([0-9A-Fa-f]{4})|\\U([0-9A-Fa-f]{8})")


def _quote(text: str) -> str:
    s = text.replace("\\", "\\\\").replace('"', '\\"').replace("\r", "\\r")
    if "\n" in s:
        return f'"""{s}"""'
    return '"' + s.replace("\t", "\\t").replace("\b", "\\b").replace("\f", "\\f") + '"'


def _unescape_string(raw: str, line: int, col: int) -> str:
    out = []
    i = 0
    while i < len(raw):
        ch = raw[i]
        if ch != "\\":
            out.append(ch)
            i += 1
            continue
        nxt = raw[i + 1 : i + 2]
        if nxt in _ECHAR:
            out.append(_ECHAR[nxt])
            i += 2
        elif nxt in ("u", "U"):
            m = _UCHAR_RE.match(raw, i)
            if not m:
                raise RdfSyntaxError("bad unicode escape", line, col)
            out.append(chr(int(m.group(1) or m.group(2), 16)))
            i = m.end()
        else:
            raise RdfSyntaxError(f"bad escape '\\{nxt}'", line, col)
    return "".join(out)


def _unescape_iri(raw: str) -> str:
    return _UCHAR_RE.sub(lambda m: chr(int(m.group(1) or m.group(2), 16)), raw)


# --------------------------------------------------------------------------
# N-Triples

_NT_IRI = r"<((?:[^<>\"{}|^`\\\x00-\x20]|\\u[0-9A-Fa-f]{4}|\\U[0-9A-Fa-f]{8})*)>"
_NT_BNODE = r"_:([A-Za-z0-9_](?:[\w.\-]*[\w\-])?)"
_NT_LIT = r"\"((?:[^\"\\\n\r]|\\.)*)\"(?:@([A-Za-z]+(?:-[A-Za-z0-9]+)*)|\^\^" + _NT_IRI + r")?"
_NT_LINE = re.compile(
    r"^\s*(?:" + _NT_IRI + "|" + _NT_BNODE + r")\s*" + _NT_IRI + r"\s*(?:"
    + _NT_IRI + "|" + _NT_BNODE + "|" + _NT_LIT + r")\s*\.\s*(?:#.*)?$"
)


class _BNodeFactory:
    def __init__(self, prefix: str):
        self.prefix = prefix
        self.counter = itertools.count()
        self.named: dict[str, BNode] = {}

    def fresh(self) -> BNode:
        return BNode(f"{self.prefix}{next(self.counter)}")

    def named_node(self, label: str) -> BNode:
        if label not in self.named:
            self.named[label] = self.fresh()
        return self.named[label]


def _make_iri(raw: str, line: int, col: int | None = None) -> IRI:
    value = _unescape_iri(raw)
    try:
        return IRI(value)
    except ValueError:
        raise RdfSyntaxError(f"relative or invalid IRI <{value}>", line, col) from None


def parse_ntriples(text: str, bnode_prefix: str = "b") -> Graph:
    graph = Graph()
    bnodes = _BNodeFactory(bnode_prefix)
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        m = _NT_LINE.match(line)
        if not m:
            raise RdfSyntaxError("malformed N-Triples statement", lineno)
        s_iri, s_bn, p_iri, o_iri, o_bn, lex, lang, dt = m.groups()
        s = _make_iri(s_iri, lineno) if s_iri is not None else bnodes.named_node(s_bn)
        p = _make_iri(p_iri, lineno)
        if o_iri is not None:
            o = _make_iri(o_iri, lineno)
        elif o_bn is not None:
            o = bnodes.named_node(o_bn)
        else:
            value = _unescape_string(lex, lineno, 0)
            if lang:
                o = Literal(value, language=lang)
            else:
                o = Literal(value, _make_iri(dt, lineno).value if dt else XSD_STRING)
        graph.add(s, p, o)
    return graph


def serialize_ntriples(graph: Graph) -> str:
    lines = []
    for s, p, o in graph:
        obj = o.n3() if not isinstance(o, Literal) else _nt_literal(o)
        lines.append(f"{s.n3()} {p.n3()} {obj} .")
    return "".join(line + "\n" for line in lines)


def _nt_literal(lit: Literal) -> str:
    s = lit.lexical.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n").replace("\r", "\\r")
    if lit.language is not None:
        return f'"{s}"@{lit.language}'
    if lit.datatype == XSD_STRING:
        return f'"{s}"'
    return f'"{s}"^^<{lit.datatype}>'


# --------------------------------------------------------------------------
# Turtle

_WS_RE = re.compile(r"(?:\s+|#[^\n]*)+")
_IRIREF_RE = re.compile(_NT_IRI)
_PN_PREFIX = r"(?:[^\W\d_][\w.\-]*[\w\-]|[^\W\d_])?"
_PN_LOCAL_CHAR = r"(?:[\w\-:]|%[0-9A-Fa-f]{2}|\\[_~.\-!$&'()*+,;=/?#@%])"
_PN_LOCAL = r"(?:(?:[\w:]|%[0-9A-Fa-f]{2}|\\[_~.\-!$&'()*+,;=/?#@%])(?:(?:" + _PN_LOCAL_CHAR + r"|\.)*" + _PN_LOCAL_CHAR + r")?)?"
_PNAME_RE = re.compile(r"(" + _PN_PREFIX + r"):(" + _PN_LOCAL + r")")
_BNODE_RE = re.compile(r"_:([\w](?:[\w.\-]*[\w\-])?)")
_LANGTAG_RE = re.compile(r"@([A-Za-z]+(?:-[A-Za-z0-9]+)*)")
_DOUBLE_RE = re.compile(r"[+-]?(?:\d+\.\d*[eE][+-]?\d+|\.\d+[eE][+-]?\d+|\d+[eE][+-]?\d+)")
_DECIMAL_RE = re.compile(r"[+-]?\d*\.\d+")
_INTEGER_RE = re.compile(r"[+-]?\d+")
_LOCAL_ESC_RE = re.compile(r"\\([_~.\-!$&'()*+,;=/?#@%])")
_DELIM = set(" \t\r\n#;,.()[]<>\"'^")


class _TurtleParser:
    def __init__(self, text: str, bnode_prefix: str):
        self.text = text
        self.pos = 0
        self.prefixes: dict[str, str] = {}
        self.prefix_order: list[str] = []
        self.bnodes = _BNodeFactory(bnode_prefix)
        self.graph = Graph()

    # position helpers
    def where(self, pos: int | None = None) -> tuple[int, int]:
        pos = self.pos if pos is None else pos
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def error(self, message: str, pos: int | None = None) -> RdfSyntaxError:
        return RdfSyntaxError(message, *self.where(pos))

    def skip(self) -> None:
        m = _WS_RE.match(self.text, self.pos)
        if m:
            self.pos = m.end()

    def peek(self, n: int = 1) -> str:
        self.skip()
        return self.text[self.pos : self.pos + n]

    def at_keyword(self, word: str, case_insensitive: bool = False) -> bool:
        self.skip()
        chunk = self.text[self.pos : self.pos + len(word)]
        match = chunk.lower() == word.lower() if case_insensitive else chunk == word
        after = self.text[self.pos + len(word) : self.pos + len(word) + 1]
        return match and (after == "" or after in _DELIM or after.isspace())

    def expect(self, ch: str) -> None:
        if self.peek(len(ch)) != ch:
            found = self.text[self.pos : self.pos + 10] or "end of input"
            raise self.error(f"expected '{ch}', found {found!r}")
        self.pos += len(ch)

    # grammar
    def parse(self) -> Graph:
        while True:
            self.skip()
            if self.pos >= len(self.text):
                break
            self.statement()
        pm = PrefixMap()
        for label in self.prefix_order:
            pm.bind(label, self.prefixes[label])
        self.graph.prefixes = pm
        return self.graph

    def statement(self) -> None:
        if self.peek(7) == "@prefix":
            self.pos += 7
            self.prefix_decl()
            self.expect(".")
        elif self.at_keyword("PREFIX", case_insensitive=True):
            self.pos += 6
            self.prefix_decl()
        elif self.peek(5) == "@base" or self.at_keyword("BASE", case_insensitive=True):
            raise self.error("base IRIs are not supported")
        else:
            self.triples()
            self.expect(".")

    def prefix_decl(self) -> None:
        self.skip()
        m = re.compile(r"(" + _PN_PREFIX + r"):").match(self.text, self.pos)
        if not m:
            raise self.error("expected prefix label")
        self.pos = m.end()
        self.skip()
        iri = self.iriref()
        label = m.group(1)
        if label not in self.prefixes:
            self.prefix_order.append(label)
        self.prefixes[label] = iri.value

    def triples(self) -> None:
        ch = self.peek()
        if ch == "[":
            subject = self.blank_property_list()
            if self.peek() != ".":
                self.predicate_object_list(subject)
            return
        subject = self.subject()
        self.predicate_object_list(subject)

    def subject(self) -> Term:
        ch = self.peek()
        if ch == "(":
            return self.collection()
        if self.text.startswith("_:", self.pos):
            return self.blank_label()
        term = self.iri_or_none()
        if term is None:
            raise self.error("expected subject")
        return term

    def predicate_object_list(self, subject: Term) -> None:
        while True:
            verb = self.verb()
            self.object_list(subject, verb)
            if self.peek() != ";":
                return
            while self.peek() == ";":
                self.pos += 1
            if self.peek() in (".", "]", ""):
                return

    def verb(self) -> IRI:
        self.skip()
        if self.text.startswith("a", self.pos):
            after = self.text[self.pos + 1 : self.pos + 2]
            if after == "" or after.isspace() or after in "<[(\"'_#":
                self.pos += 1
                return IRI(RDF_TYPE)
        term = self.iri_or_none()
        if term is None:
            raise self.error("expected predicate")
        return term

    def object_list(self, subject: Term, predicate: IRI) -> None:
        while True:
            obj = self.object()
            self.graph.add(subject, predicate, obj)
            if self.peek() != ",":
                return
            self.pos += 1

    def object(self) -> Term:
        ch = self.peek()
        if ch == "[":
            return self.blank_property_list()
        if ch == "(":
            return self.collection()
        if ch in ('"', "'"):
            return self.rdf_literal()
        if self.text.startswith("_:", self.pos):
            return self.blank_label()
        if ch and (ch.isdigit() or ch in "+-."):
            return self.numeric()
        for word in ("true", "false"):
            if self.text.startswith(word, self.pos):
                after = self.text[self.pos + len(word) : self.pos + len(word) + 1]
                if after == "" or after in _DELIM:
                    self.pos += len(word)
                    return Literal(word, XSD + "boolean")
        term = self.iri_or_none()
        if term is None:
            raise self.error("expected object")
        return term

    def blank_label(self) -> BNode:
        m = _BNODE_RE.match(self.text, self.pos)
        if not m:
            raise self.error("malformed blank node label")
        self.pos = m.end()
        return self.bnodes.named_node(m.group(1))

    def blank_property_list(self) -> BNode:
        self.expect("[")
        node = self.bnodes.fresh()
        if self.peek() != "]":
            self.predicate_object_list(node)
        self.expect("]")
        return node

    def collection(self) -> Term:
        self.expect("(")
        items = []
        while self.peek() != ")":
            if self.peek() == "":
                raise self.error("unterminated collection")
            items.append(self.object())
        self.pos += 1
        if not items:
            return IRI(RDF_NIL)
        nodes = [self.bnodes.fresh() for _ in items]
        for i, (node, item) in enumerate(zip(nodes, items)):
            self.graph.add(node, IRI(RDF_FIRST), item)
            nxt = nodes[i + 1] if i + 1 < len(nodes) else IRI(RDF_NIL)
            self.graph.add(node, IRI(RDF_REST), nxt)
        return nodes[0]

    def iriref(self) -> IRI:
        m = _IRIREF_RE.match(self.text, self.pos)
        if not m:
            raise self.error("malformed IRI reference")
        line, col = self.where()
        self.pos = m.end()
        return _make_iri(m.group(1), line, col)

    def iri_or_none(self) -> IRI | None:
        self.skip()
        if self.text.startswith("<", self.pos):
            return self.iriref()
        m = _PNAME_RE.match(self.text, self.pos)
        if not m:
            return None
        label, local = m.group(1), m.group(2)
        if label not in self.prefixes:
            raise UnknownPrefixError(label, *self.where())
        line, col = self.where()
        self.pos = m.end()
        return _make_iri(self.prefixes[label] + _LOCAL_ESC_RE.sub(r"\1", local), line, col)

    def rdf_literal(self) -> Literal:
        start = self.pos
        line, col = self.where()
        for quote in ('"""', "'''"):
            if self.text.startswith(quote, self.pos):
                end = self.pos + 3
                while True:
                    end = self.text.find(quote, end)
                    if end < 0:
                        raise self.error("unterminated long string", start)
                    # a quote preceded by an odd number of backslashes is escaped
                    bs = 0
                    while self.text[end - 1 - bs] == "\\":
                        bs += 1
                    if bs % 2 == 0:
                        break
                    end += 1
                # absorb quotes that belong to the content, e.g. """a""""
                while self.text.startswith(quote[0], end + 3):
                    end += 1
                raw = self.text[self.pos + 3 : end]
                self.pos = end + 3
                break
        else:
            q = self.text[self.pos]
            m = re.compile(q + r"((?:[^" + q + r"\\\n\r]|\\.)*)" + q).match(self.text, self.pos)
            if not m:
                raise self.error("unterminated string", start)
            raw = m.group(1)
            self.pos = m.end()
        value = _unescape_string(raw, line, col)
        m = _LANGTAG_RE.match(self.text, self.pos)
        if m:
            self.pos = m.end()
            return Literal(value, language=m.group(1))
        if self.text.startswith("^^", self.pos):
            self.pos += 2
            dt = self.iri_or_none()
            if dt is None:
                raise self.error("expected datatype IRI")
            if dt.value == RDF_LANGSTRING:
                raise self.error("rdf:langString requires a language tag")
            return Literal(value, dt.value)
        return Literal(value)

    def numeric(self) -> Literal:
        for regex, dt in ((_DOUBLE_RE, "double"), (_DECIMAL_RE, "decimal"), (_INTEGER_RE, "integer")):
            m = regex.match(self.text, self.pos)
            if m:
                self.pos = m.end()
                return Literal(m.group(0), XSD + dt)
        raise self.error("expected object")


def parse_turtle(text: str, bnode_prefix: str = "b") -> Graph:
    """Parse the supported Turtle subset.

    Blank nodes are relabelled ``<bnode_prefix>0``, ``<bnode_prefix>1``, ...
    in order of first appearance. Pass distinct prefixes when several
    documents will be merged into one graph.
    """
    return _TurtleParser(text, bnode_prefix).parse()


def merge(graphs: Iterable[Graph]) -> Graph:
    out = Graph()
    for g in graphs:
        for label, ns in g.prefixes.items():
            if label not in out.prefixes:
                out.prefixes.bind(label, ns)
        for t in g:
            out.add(*t)
    return out


# --------------------------------------------------------------------------
# Turtle serializer


class _Writer:
    def __init__(self, graph: Graph):
        self.g = graph
        self.pm = graph.prefixes
        self.type_iri = IRI(RDF_TYPE)
        refs: dict[BNode, int] = defaultdict(int)
        for _, _, o in graph._triples:
            if isinstance(o, BNode):
                refs[o] += 1
        subjects = set(graph._spo)
        # blank nodes referenced exactly once can be written inline
        inline = {b for b, n in refs.items() if n == 1}
        for b in list(subjects):
            if isinstance(b, BNode) and b not in refs:
                inline.discard(b)
        self.inline = self._break_cycles(inline)
        self.lists = self._find_lists()

    def _break_cycles(self, inline: set[BNode]) -> set[BNode]:
        parent = {}
        for s, _, o in self.g._triples:
            if o in inline:
                parent[o] = s
        while True:
            unreachable = []
            for b in sorted(inline, key=term_key):
                seen = set()
                node = b
                while node in inline and node not in seen:
                    seen.add(node)
                    node = parent[node]
                if node in inline:
                    unreachable.append(b)
            if not unreachable:
                return inline
            inline = inline - {unreachable[0]}

    def _find_lists(self) -> dict[BNode, list[Term]]:
        first, rest, nil = IRI(RDF_FIRST), IRI(RDF_REST), IRI(RDF_NIL)
        lists: dict[BNode, list[Term]] = {}
        rest_target = set()
        for s, p, o in self.g._triples:
            if p == rest and isinstance(o, BNode):
                rest_target.add(o)
        for head in sorted(self.inline, key=term_key):
            if head in rest_target:
                continue
            items, node, ok, seen = [], head, True, set()
            while node != nil:
                if not isinstance(node, BNode) or node not in self.inline or node in seen:
                    ok = False
                    break
                seen.add(node)
                preds = self.g._spo.get(node, {})
                if set(preds) != {first, rest} or len(preds[first]) != 1 or len(preds[rest]) != 1:
                    ok = False
                    break
                items.append(next(iter(preds[first])))
                node = next(iter(preds[rest]))
            if ok:
                lists[head] = items
        return lists

    def term(self, t: Term, indent: int) -> str:
        if isinstance(t, IRI):
            c = self.pm.compact(t.value)
            return c if c is not None else t.n3()
        if isinstance(t, Literal):
            return t.n3(self.pm)
        if t in self.lists:
            items = [self.term(x, indent) for x in self.lists[t]]
            return "( " + " ".join(items) + " )" if items else "( )"
        if t in self.inline:
            if t not in self.g._spo:
                return "[]"
            body = self.predicate_block(t, indent + 1)
            pad = "  " * indent
            return "[\n" + body + "\n" + pad + "]"
        return t.n3()

    def predicate_block(self, s: Term, indent: int) -> str:
        pad = "  " * indent
        parts = []
        for p in sorted(self.g._spo[s], key=lambda x: (x != self.type_iri, x.value)):
            verb = "a" if p == self.type_iri else self.term(p, indent)
            objs = sorted(self.g._spo[s][p], key=term_key)
            rendered = ", ".join(self.term(o, indent) for o in objs)
            parts.append(f"{pad}{verb} {rendered}")
        return " ;\n".join(parts)

    def write(self) -> str:
        out = []
        for label, ns in self.pm.items():
            out.append(f"@prefix {label}: <{ns}> .\n")
        top = [s for s in sorted(self.g._spo, key=term_key) if s not in self.inline]
        blocks = []
        for s in top:
            blocks.append(self.term(s, 0) + "\n" + self.predicate_block(s, 1) + " .\n")
        if blocks:
            if out:
                out.append("\n")
            out.append("\n".join(blocks))
        return "".join(out)


def serialize_turtle(graph: Graph) -> str:
    """Canonical Turtle: sorted prefixes, subjects in term order, LF endings.

    Blank nodes referenced once are nested as ``[ ... ]`` and well-formed
    collections are written as ``( ... )``.
    """
    for label, _ in graph.prefixes.items():
        if not _PREFIX_SAFE.match(label):
            raise ValueError(f"prefix label cannot be serialized: {label!r}")
    return _Writer(graph).write()


# --------------------------------------------------------------------------
# isomorphism


def isomorphic(g1: Graph, g2: Graph) -> bool:
    """True when the graphs are equal up to a renaming of blank nodes."""
    if len(g1) != len(g2):
        return False
    ground1 = {t for t in g1._triples if not _has_bnode(t)}
    ground2 = {t for t in g2._triples if not _has_bnode(t)}
    if ground1 != ground2:
        return False
    b1, b2 = sorted(g1.blank_nodes(), key=term_key), sorted(g2.blank_nodes(), key=term_key)
    if len(b1) != len(b2):
        return False
    c1, c2 = _refine(g1, b1), _refine(g2, b2)
    if sorted(c1.values()) != sorted(c2.values()):
        return False
    target = g2._triples
    rest1 = [t for t in g1._triples if _has_bnode(t)]
    order = sorted(b1, key=lambda b: (sum(1 for x in c1.values() if x == c1[b]), c1[b]))
    by_colour: dict = defaultdict(list)
    for b in b2:
        by_colour[c2[b]].append(b)

    mapping: dict[BNode, BNode] = {}
    used: set[BNode] = set()

    def check_partial() -> bool:
        for s, p, o in rest1:
            s2 = mapping.get(s, s) if isinstance(s, BNode) else s
            o2 = mapping.get(o, o) if isinstance(o, BNode) else o
            if (isinstance(s, BNode) and s not in mapping) or (isinstance(o, BNode) and o not in mapping):
                continue
            if (s2, p, o2) not in target:
                return False
        return True

    def search(i: int) -> bool:
        if i == len(order):
            return True
        b = order[i]
        for cand in by_colour[c1[b]]:
            if cand in used:
                continue
            mapping[b] = cand
            used.add(cand)
            if check_partial() and search(i + 1):
                return True
            del mapping[b]
            used.discard(cand)
        return False

    return search(0)


def _has_bnode(t: Triple) -> bool:
    return isinstance(t[0], BNode) or isinstance(t[2], BNode)


def _refine(g: Graph, bnodes: list[BNode]) -> dict[BNode, str]:
    colour = {b: "" for b in bnodes}

    def show(t):
        return "#" + colour[t] if isinstance(t, BNode) else repr(term_key(t))

    for _ in range(len(bnodes) + 1):
        new = {}
        for b in bnodes:
            sig = [("o", p.value, show(o)) for p, objs in g._spo.get(b, {}).items() for o in objs]
            sig += [("i", p.value, show(s)) for s, p, o in g._triples if o == b]
            new[b] = str(hash(tuple(sorted(sig))))
        if len(set(new.values())) == len(set(colour.values())):
            colour = new
            break
        colour = new
    return colour
