"""Schema compiler and gatekeeper for ontology-defined RDF resources."""

from .errors import (
    CardinalityError,
    EmitError,
    MalformedListError,
    OntoforgeError,
    RdfSyntaxError,
    SchemaCompileError,
    SchemaError,
    UnknownClassError,
    UnknownPrefixError,
    UnknownValueSetError,
)
from .emit import (
    FileMap,
    api_descriptor,
    emit_api_descriptor,
    emit_docs,
    emit_jsonld_frame,
    emit_owl,
    emit_shex,
    emit_viz,
    render_templates,
)
from .rdf import (
    IRI,
    BNode,
    Graph,
    Literal,
    PrefixMap,
    instances_of,
    isomorphic,
    list_members,
    objects_of,
    parse_ntriples,
    parse_turtle,
    serialize_ntriples,
    serialize_turtle,
)
from .recover import ObservedProperty, ObservedSchema, SchemaDiff, diff_schema, infer_cardinality, recover_structure
from .sample import sample_conforming
from .schema import (
    Cardinality,
    ClassRef,
    ContainerKind,
    Datatype,
    ExternalIri,
    PropertyDef,
    Schema,
    ValueSetRef,
    Vocab,
    compile_schema,
    effective_properties,
    load_schema,
    parse_cardinality,
    parse_property_block,
    resolve_schema,
    valueset_members,
)
from .validate import Code, Severity, ValidationReport, Violation, check_node, classify_term, validate_graph

__version__ = "0.1.0"
