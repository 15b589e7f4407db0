"""Helpers shared by the artifact emitters."""

from __future__ import annotations

import posixpath
import re
from typing import Iterator

from ..errors import EmitError
from ..schema import ClassRef, Datatype, ExternalIri, PropertyDef, Schema, ValueSetRef, local_name

_NON_IDENT = re.compile(r"[^A-Za-z0-9_]")


class FileMap:
    """Relative POSIX path -> UTF-8 text, iterated in path order."""

    def __init__(self, entries: dict[str, str] | None = None):
        self._entries: dict[str, str] = {}
        for path, content in (entries or {}).items():
            self[path] = content

    def __setitem__(self, path: str, content: str) -> None:
        norm = posixpath.normpath(path)
        if norm != path or path.startswith("/") or norm.startswith(".."):
            raise ValueError(f"not a normalized relative path: {path!r}")
        if path in self._entries:
            raise ValueError(f"duplicate path: {path!r}")
        self._entries[path] = content

    def __getitem__(self, path: str) -> str:
        return self._entries[path]

    def __contains__(self, path: str) -> bool:
        return path in self._entries

    def __iter__(self) -> Iterator[str]:
        return iter(sorted(self._entries))

    def __len__(self) -> int:
        return len(self._entries)

    def items(self) -> list[tuple[str, str]]:
        return sorted(self._entries.items())

    def update(self, other: FileMap, under: str = "") -> None:
        for path, content in other.items():
            self[posixpath.join(under, path) if under else path] = content


def accessor_name(predicate: str) -> str:
    name = _NON_IDENT.sub("_", local_name(predicate))
    if not name or name[0].isdigit():
        name = "_" + name
    return name


def accessor_names(schema: Schema, class_iri: str) -> dict[str, str]:
    """predicate -> accessor name for one class; raises on collisions."""
    names: dict[str, str] = {}
    taken: dict[str, str] = {}
    for pd in schema.effective[class_iri]:
        name = accessor_name(pd.predicate)
        if name in taken:
            raise EmitError(
                "accessor-collision",
                f"<{taken[name]}> and <{pd.predicate}> on <{class_iri}> both map to '{name}'",
            )
        taken[name] = pd.predicate
        names[pd.predicate] = name
    return names


def value_kind(pd: PropertyDef) -> str:
    vt = pd.value_type
    if isinstance(vt, Datatype):
        return "datatype"
    if isinstance(vt, ClassRef):
        return "class"
    if isinstance(vt, ValueSetRef):
        return "valueset"
    assert isinstance(vt, ExternalIri)
    return "iri"


def value_target(pd: PropertyDef) -> str | None:
    vt = pd.value_type
    if isinstance(vt, (Datatype, ClassRef)):
        return vt.iri
    if isinstance(vt, ValueSetRef):
        return vt.root
    return None


def curie(schema: Schema, iri: str) -> str:
    return schema.prefixes.compact(iri) or f"<{iri}>"


def page_paths(schema: Schema) -> dict[str, str]:
    """IRI -> docs page path for every class and value set."""
    paths: dict[str, str] = {}
    owners: dict[str, str] = {}
    for kind, iris in (("classes", schema.classes), ("valuesets", schema.value_sets)):
        for iri in sorted(iris):
            path = f"docs/{kind}/{local_name(iri)}.md"
            if path.lower() in owners:
                raise EmitError(
                    "name-collision",
                    f"<{owners[path.lower()]}> and <{iri}> both map to {path}",
                )
            owners[path.lower()] = iri
            paths[iri] = path
    return paths
