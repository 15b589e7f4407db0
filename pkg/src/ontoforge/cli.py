"""Command-line entry point: ``ontoforge <command> [flags]``.

Exit status: 0 success or conformant, 1 validation errors or a blocking
diff, 2 usage, parse, schema or emitter failure.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from pathlib import Path

from .config import ENV_VAR, load_config
from .emit import (
    FileMap,
    emit_api_descriptor,
    emit_docs,
    emit_jsonld_frame,
    emit_owl,
    emit_shex,
    emit_viz,
    render_templates,
)
from .errors import EmitError, OntoforgeError, RdfSyntaxError, SchemaCompileError
from .rdf import Graph, merge, parse_ntriples, parse_turtle, serialize_turtle
from .recover import diff_schema, recover_structure
from .schema import Schema, Vocab, compile_schema, local_name
from .validate import validate_graph

COMMANDS = ("compile", "validate", "recover", "diff", "docs", "frame", "viz", "apigen")
VIZ_SUFFIX = {"cytoscape-json": "viz.cyjs", "graphml": "viz.graphml"}


class UsageError(Exception):
    pass


def read_graph(path: str | Path, bnode_prefix: str = "b") -> Graph:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    try:
        if path.suffix == ".nt":
            return parse_ntriples(text, bnode_prefix)
        return parse_turtle(text, bnode_prefix)
    except RdfSyntaxError as exc:
        raise RdfSyntaxError(f"{path}: {exc.message}", exc.line, exc.column) from None


def write_files(out_dir: Path, files: FileMap) -> None:
    """Write every file via a temporary sibling and an atomic rename."""
    for rel, content in files.items():
        target = out_dir / rel
        target.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(prefix=f".{target.name}.", dir=target.parent)
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(content)
            os.replace(tmp, target)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--definition", metavar="PATH", help="ontology definition (Turtle)")
    common.add_argument("--data", metavar="PATH", action="append", default=[], help="instance data; repeatable")
    common.add_argument("--out", metavar="DIR", help="output directory")
    common.add_argument("--config", metavar="PATH", help=f"configuration file (default: ${ENV_VAR})")
    common.add_argument("--vocab-propdefs", metavar="IRI", help="annotation property holding property definitions")
    common.add_argument("--vocab-enumroot", metavar="IRI", help="root class of the value sets")
    common.add_argument("--report", choices=("text", "json"), help="report format")
    common.add_argument("--frame-depth", type=int, metavar="N", help="nesting depth of JSON-LD frames (default 1)")
    common.add_argument("--viz-format", choices=tuple(VIZ_SUFFIX), help="visualization format")
    common.add_argument("--class", dest="class_iri", metavar="IRI", help="frame only this class")
    common.add_argument("--templates", metavar="DIR", help="apigen: render Jinja2 templates from DIR")

    parser = argparse.ArgumentParser(prog="ontoforge", description="Ontology schema compiler and data gatekeeper")
    sub = parser.add_subparsers(dest="command", metavar="command")
    helps = {
        "compile": "write ShEx, OWL, docs, frames, visualization and API descriptor",
        "validate": "check instance data against the schema",
        "recover": "report the structure the data actually has",
        "diff": "compare recovered structure with the schema",
        "docs": "write the Markdown documentation tree",
        "frame": "write JSON-LD frames",
        "viz": "write the class diagram",
        "apigen": "write the API descriptor",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


class _Run:
    def __init__(self, args: argparse.Namespace):
        self.args = args
        cfg = load_config(args.config)
        vocab = cfg.vocab
        if args.vocab_propdefs or args.vocab_enumroot:
            from dataclasses import replace

            vocab = replace(
                vocab,
                property_definitions=args.vocab_propdefs or vocab.property_definitions,
                enumerated_root=args.vocab_enumroot or vocab.enumerated_root,
            )
        self.vocab: Vocab = vocab
        self.prefixes = cfg.prefixes
        out = cfg.output
        self.report = args.report or out.get("report", "text")
        self.frame_depth = args.frame_depth if args.frame_depth is not None else int(out.get("frame_depth", 1))
        self.viz_format = args.viz_format or out.get("viz_format", "cytoscape-json")
        if self.report not in ("text", "json"):
            raise UsageError(f"unknown report format '{self.report}'")
        if self.frame_depth < 0:
            raise UsageError("--frame-depth must be >= 0")

        cmd = args.command
        if cmd != "recover" and not args.definition:
            raise UsageError(f"{cmd}: --definition is required")
        if cmd in ("validate", "recover", "diff") and not args.data:
            raise UsageError(f"{cmd}: at least one --data is required")
        if cmd in ("compile", "docs", "frame", "viz", "apigen") and not args.out:
            raise UsageError(f"{cmd}: --out is required")

    def schema(self) -> Schema:
        return compile_schema(read_graph(self.args.definition), self.vocab, self.prefixes)

    def data(self) -> Graph:
        return merge(read_graph(p, f"d{i}_") for i, p in enumerate(self.args.data))

    def frames(self, schema: Schema) -> FileMap:
        files = FileMap()
        classes = [self.args.class_iri] if self.args.class_iri else sorted(schema.classes)
        for cls in classes:
            files[f"frames/{local_name(cls)}.jsonld"] = emit_jsonld_frame(schema, cls, self.frame_depth)
        return files

    def run(self) -> int:
        cmd = self.args.command
        if cmd == "recover":
            observed = recover_structure(self.data(), self.vocab)
            return self.emit_payload(observed.to_json(), "observed.json")
        schema = self.schema()
        if cmd == "validate":
            report = validate_graph(schema, self.data())
            self.emit_payload(report.to_json() if self.report == "json" else report.to_text(), None)
            return 0 if report.conformant else 1
        if cmd == "diff":
            diff = diff_schema(schema, recover_structure(self.data(), schema.vocab))
            self.emit_payload(diff.to_json() if self.report == "json" else diff.to_markdown(), None)
            return 1 if diff.blocking else 0

        files = FileMap()
        if cmd == "compile":
            files["schema.shex"] = emit_shex(schema)
            files["ontology.ttl"] = serialize_turtle(emit_owl(schema))
            files.update(emit_docs(schema), under="docs")
            files.update(self.frames(schema))
            files[VIZ_SUFFIX[self.viz_format]] = emit_viz(schema, self.viz_format)
            files["api.json"] = emit_api_descriptor(schema)
        elif cmd == "docs":
            files.update(emit_docs(schema), under="docs")
        elif cmd == "frame":
            files.update(self.frames(schema))
        elif cmd == "viz":
            files[VIZ_SUFFIX[self.viz_format]] = emit_viz(schema, self.viz_format)
        elif cmd == "apigen":
            descriptor = emit_api_descriptor(schema)
            files["api.json"] = descriptor
            if self.args.templates:
                files.update(render_templates(descriptor, self.args.templates), under="api")
        write_files(Path(self.args.out), files)
        return 0

    def emit_payload(self, text: str, filename: str | None) -> int:
        if filename and self.args.out:
            write_files(Path(self.args.out), FileMap({filename: text}))
        else:
            sys.stdout.write(text)
        return 0


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    if not args.command:
        parser.print_usage(sys.stderr)
        return 2
    try:
        return _Run(args).run()
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"ontoforge: error: {exc}", file=sys.stderr)
        return 2
    except SchemaCompileError as exc:
        for err in exc.errors:
            print(err.format(), file=sys.stderr)
        return 2
    except EmitError as exc:
        print(f"ERROR {exc.code}: {exc}", file=sys.stderr)
        return 2
    except RdfSyntaxError as exc:
        print(f"ERROR syntax {exc}", file=sys.stderr)
        return 2
    except (OntoforgeError, OSError, ValueError) as exc:
        print(f"ERROR {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
