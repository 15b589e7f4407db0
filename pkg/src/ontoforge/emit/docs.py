"""Markdown documentation tree in mkdocs layout."""

from __future__ import annotations

import posixpath

from ..schema import ClassRef, ContainerKind, Datatype, ExternalIri, PropertyDef, Schema, ValueSetRef, local_name
from .common import FileMap, curie, page_paths

_CONTAINER_TEXT = {
    ContainerKind.NONE: "",
    ContainerKind.ORDERED: "ordered list (`=`)",
    ContainerKind.NUMBERED: "numbered list (`~`)",
}


def _rel(from_path: str, to_path: str) -> str:
    return posixpath.relpath(to_path, posixpath.dirname(from_path))


def _cell(text: str | None) -> str:
    if not text:
        return ""
    return text.replace("|", "\\|").replace("\n", "<br>")


def _type_cell(schema: Schema, pages: dict[str, str], here: str, pd: PropertyDef) -> str:
    vt = pd.value_type
    if isinstance(vt, Datatype):
        return f"`{curie(schema, vt.iri)}`"
    if isinstance(vt, ClassRef):
        return f"[{local_name(vt.iri)}]({_rel(here, pages[vt.iri])})"
    if isinstance(vt, ValueSetRef):
        return f"[{local_name(vt.root)}]({_rel(here, pages[vt.root])}) (value set)"
    assert isinstance(vt, ExternalIri)
    return "IRI"


def _class_page(schema: Schema, pages: dict[str, str], iri: str) -> str:
    here = pages[iri]
    cdef = schema.classes[iri]
    name = local_name(iri)
    lines = [f"# {cdef.label or name}", "", f"IRI: `{iri}`", ""]
    if cdef.description:
        lines += [cdef.description, ""]
    if cdef.parents:
        links = ", ".join(f"[{local_name(p)}]({_rel(here, pages[p])})" for p in cdef.parents)
        lines += [f"Subclass of: {links}", ""]
    children = sorted(c for c, d in schema.classes.items() if iri in d.parents)
    if children:
        links = ", ".join(f"[{local_name(c)}]({_rel(here, pages[c])})" for c in children)
        lines += [f"Subclasses: {links}", ""]
    lines += ["## Properties", ""]
    props = schema.effective[iri]
    if not props:
        lines += ["This class declares no properties.", ""]
        return "\n".join(lines)
    lines += [
        "| Predicate | Type | Multiplicity | Container | Description |",
        "|---|---|---|---|---|",
    ]
    for pd in props:
        owner = schema.declared_by[(iri, pd.predicate)]
        desc = _cell(pd.description)
        if owner != iri:
            note = f"(inherited from [{local_name(owner)}]({_rel(here, pages[owner])}))"
            desc = f"{desc} {note}" if desc else note
        lines.append(
            f"| [{curie(schema, pd.predicate)}]({pd.predicate}) | {_type_cell(schema, pages, here, pd)}"
            f" | {pd.cardinality.token} | {_CONTAINER_TEXT[pd.container]} | {desc} |"
        )
    lines.append("")
    return "\n".join(lines)


def _valueset_page(schema: Schema, pages: dict[str, str], root: str) -> str:
    vs = schema.value_sets[root]
    lines = [f"# {vs.label or local_name(root)}", "", f"IRI: `{root}`", ""]
    if vs.description:
        lines += [vs.description, ""]
    lines += ["Value set. Allowed values:", ""]
    children: dict[str | None, list] = {}
    for m in vs.members:
        children.setdefault(m.parent, []).append(m)

    def walk(parent: str | None, depth: int) -> None:
        for m in sorted(children.get(parent, []), key=lambda x: x.iri):
            label = f" ({m.label})" if m.label else ""
            lines.append(f"{'  ' * depth}- `{curie(schema, m.iri)}`{label}")
            walk(m.iri, depth + 1)

    walk(None, 0)
    if not vs.members:
        lines.append("_(no members)_")
    users = sorted(
        c
        for c, props in schema.effective.items()
        if any(isinstance(pd.value_type, ValueSetRef) and pd.value_type.root == root for pd in props)
    )
    if users:
        here = pages[root]
        links = ", ".join(f"[{local_name(c)}]({_rel(here, pages[c])})" for c in users)
        lines += ["", f"Used by: {links}"]
    lines.append("")
    return "\n".join(lines)


def _index(schema: Schema, pages: dict[str, str], title: str) -> str:
    lines = [f"# {title}", ""]
    if schema.ontology_iri:
        lines += [f"Ontology: `{schema.ontology_iri}`", ""]
    lines += [
        "Multiplicities: `0..1` optional, at most one; `1..1` exactly one;",
        "`0..N` any number; `1..N` at least one.",
        "A leading `=` stores the values as an ordered RDF collection",
        "(rdf:first/rdf:rest); a leading `~` stores them as entry nodes with",
        f"`{curie(schema, schema.vocab.list_index)}` (integer, from 0) and "
        f"`{curie(schema, schema.vocab.list_value)}`.",
        "",
        "## Classes",
        "",
    ]
    for iri in sorted(schema.classes):
        lines.append(f"- [{local_name(iri)}]({_rel('docs/index.md', pages[iri])})")
    if not schema.classes:
        lines.append("_(none)_")
    lines += ["", "## Value sets", ""]
    for iri in sorted(schema.value_sets):
        lines.append(f"- [{local_name(iri)}]({_rel('docs/index.md', pages[iri])})")
    if not schema.value_sets:
        lines.append("_(none)_")
    lines.append("")
    return "\n".join(lines)


def _mkdocs_yml(schema: Schema, pages: dict[str, str], title: str) -> str:
    lines = [f"site_name: {_yaml_str(title)}", "nav:", "  - Home: index.md"]
    for kind, iris in (("Classes", schema.classes), ("Value sets", schema.value_sets)):
        if not iris:
            continue
        lines.append(f"  - {kind}:")
        for iri in sorted(iris):
            lines.append(f"    - {_yaml_str(local_name(iri))}: {pages[iri][len('docs/'):]}")
    lines.append("")
    return "\n".join(lines)


def _yaml_str(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_docs(schema: Schema, title: str | None = None) -> FileMap:
    """Site config, index page, one page per class and per value set."""
    pages = page_paths(schema)
    title = title or schema.ontology_label or (local_name(schema.ontology_iri) if schema.ontology_iri else "Ontology")
    files = FileMap()
    files["mkdocs.yml"] = _mkdocs_yml(schema, pages, title)
    files["docs/index.md"] = _index(schema, pages, title)
    for iri in sorted(schema.classes):
        files[pages[iri]] = _class_page(schema, pages, iri)
    for iri in sorted(schema.value_sets):
        files[pages[iri]] = _valueset_page(schema, pages, iri)
    return files
