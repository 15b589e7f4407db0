"""Shared helpers for the demo scripts."""

from __future__ import annotations

from pathlib import Path

from ontoforge import compile_schema, parse_turtle

ROOT = Path(__file__).resolve().parent.parent
DEFINITION = ROOT / "tests" / "fixtures" / "gbol_mini.ttl"


def load():
    return compile_schema(parse_turtle(DEFINITION.read_text(encoding="utf-8")))


def heading(text: str) -> None:
    print(f"\n== {text} ==")
