"""
Optional configuration file (INI syntax, read with :mod:`configparser`)::

    [vocab]
    property_definitions = http://empusa.org/0.1#propertyDefinitions
    enumerated_root = http://empusa.org/0.1#EnumeratedValueClass
    list_index = http://empusa.org/0.1#index
    list_value = http://empusa.org/0.1#value

    [prefixes]
    gbol = http://gbol.life/0.1/

    [output]
    frame_depth = 1
    viz_format = cytoscape-json
    report = text

All sections and keys are optional. Command-line flags take precedence.
"""

from __future__ import annotations

import configparser
import os
from dataclasses import dataclass, field, replace
from pathlib import Path

from .rdf import IRI, PrefixMap
from .schema import Vocab

ENV_VAR = "ONTOFORGE_CONFIG"

_VOCAB_KEYS = ("property_definitions", "enumerated_root", "list_index", "list_value")


@dataclass
class FileConfig:
    vocab: Vocab = field(default_factory=Vocab)
    prefixes: PrefixMap = field(default_factory=PrefixMap)
    output: dict[str, str] = field(default_factory=dict)


def load_config(path: str | Path | None = None) -> FileConfig:
    """Read ``path`` or the file named by ``$ONTOFORGE_CONFIG``; defaults otherwise."""
    if path is None:
        path = os.environ.get(ENV_VAR) or None
    cfg = FileConfig()
    if path is None:
        return cfg
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str  # keep prefix labels case-sensitive
    with open(path, encoding="utf-8") as fh:
        parser.read_file(fh)
    if parser.has_section("vocab"):
        overrides = {}
        for key, value in parser.items("vocab"):
            if key not in _VOCAB_KEYS:
                raise ValueError(f"{path}: unknown vocab key '{key}'")
            IRI(value)
            overrides[key] = value
        cfg.vocab = replace(cfg.vocab, **overrides)
    if parser.has_section("prefixes"):
        for label, ns in parser.items("prefixes"):
            IRI(ns)
            cfg.prefixes.bind(label, ns, replace=True)
    if parser.has_section("output"):
        cfg.output = dict(parser.items("output"))
    return cfg
