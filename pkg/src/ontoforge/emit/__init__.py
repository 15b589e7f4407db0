"""Artifact emitters; each is a pure function of a resolved schema."""

from .api import api_descriptor, emit_api_descriptor, render_templates
from .common import FileMap, accessor_name
from .docs import emit_docs
from .frame import canonical_json, emit_jsonld_frame
from .owl import emit_owl
from .shex import emit_shex
from .viz import emit_viz

__all__ = [
    "FileMap",
    "accessor_name",
    "api_descriptor",
    "canonical_json",
    "emit_api_descriptor",
    "emit_docs",
    "emit_jsonld_frame",
    "emit_owl",
    "emit_shex",
    "emit_viz",
    "render_templates",
]
