"""Language-neutral API descriptor and the template hook that consumes it."""

from __future__ import annotations

import json
from pathlib import Path

from ..schema import Schema, local_name
from .common import FileMap, accessor_names, value_kind, value_target
from .frame import canonical_json


def api_descriptor(schema: Schema) -> dict:
    classes = []
    for iri in sorted(schema.classes):
        cdef = schema.classes[iri]
        names = accessor_names(schema, iri)
        props = []
        for pd in schema.effective[iri]:
            card = pd.cardinality
            if card.max_one:
                accessors, nullable = ["get", "set"], card.min == 0
            else:
                accessors, nullable = ["get_all", "add", "remove"], False
            props.append(
                {
                    "predicate": pd.predicate,
                    "accessorName": names[pd.predicate],
                    "valueKind": value_kind(pd),
                    "target": value_target(pd),
                    "cardinality": card.token,
                    "container": pd.container.label,
                    "accessors": accessors,
                    "nullable": nullable,
                    "declaredBy": schema.declared_by[(iri, pd.predicate)],
                    "description": pd.description,
                }
            )
        classes.append(
            {
                "iri": iri,
                "name": local_name(iri),
                "parents": list(cdef.parents),
                "properties": props,
            }
        )
    value_sets = [
        {"iri": root, "name": local_name(root), "members": sorted(schema.value_sets[root].member_iris)}
        for root in sorted(schema.value_sets)
    ]
    return {
        "ontology": schema.ontology_iri,
        "prefixes": dict(schema.prefixes.items()),
        "listVocabulary": {"index": schema.vocab.list_index, "value": schema.vocab.list_value},
        "classes": classes,
        "valueSets": value_sets,
    }


def emit_api_descriptor(schema: Schema) -> str:
    return canonical_json(api_descriptor(schema))


def render_templates(descriptor: dict | str, template_dir: str | Path) -> FileMap:
    """Render a directory of Jinja2 templates against the descriptor.

    ``<name>.j2`` renders once with the whole descriptor as ``api``.
    ``<name>.class.j2`` renders once per class with ``cls`` and ``api``;
    the output path is ``<name>`` with ``{name}`` replaced by the class name.
    """
    import jinja2

    if isinstance(descriptor, str):
        descriptor = json.loads(descriptor)
    template_dir = Path(template_dir)
    env = jinja2.Environment(
        loader=jinja2.FileSystemLoader(str(template_dir)),
        keep_trailing_newline=True,
        undefined=jinja2.StrictUndefined,
    )
    files = FileMap()
    for path in sorted(template_dir.rglob("*.j2")):
        rel = path.relative_to(template_dir).as_posix()
        template = env.get_template(rel)
        if rel.endswith(".class.j2"):
            pattern = rel[: -len(".class.j2")]
            for cls in descriptor["classes"]:
                files[pattern.replace("{name}", cls["name"])] = template.render(cls=cls, api=descriptor)
        else:
            files[rel[: -len(".j2")]] = template.render(api=descriptor)
    return files
