"""Developer-facing outputs: JSON-LD frames, the API descriptor and templates.

A frame nests referenced resources up to a chosen depth. The API
descriptor lists every accessor a generated client should have; Jinja2
templates turn it into code.
"""

from __future__ import annotations

import json
import tempfile
from pathlib import Path

from _common import heading, load

from ontoforge import emit_api_descriptor, emit_jsonld_frame, render_templates

G = "http://gbol.life/0.1/"
schema = load()

heading("Gene frame at depth 1")
print(emit_jsonld_frame(schema, G + "Gene", depth=1))

heading("Region accessors")
doc = json.loads(emit_api_descriptor(schema))
region = next(c for c in doc["classes"] if c["iri"] == G + "Region")
for prop in region["properties"]:
    print(f"  {prop['accessorName']:<18} {prop['cardinality']:<5} {', '.join(prop['accessors'])}")

heading("a Python stub rendered from a template")
with tempfile.TemporaryDirectory() as tmp:
    template = Path(tmp) / "{name}.py.class.j2"
    template.write_text(
        "class {{ cls.name }}:\n"
        '    """{{ cls.iri }}"""\n'
        "{% for p in cls.properties %}"
        "    {{ p.accessorName }}: {{ 'list' if 'N' in p.cardinality else 'object' }}\n"
        "{% endfor %}"
    )
    files = render_templates(emit_api_descriptor(schema), tmp)
    print(files["Region.py"])
