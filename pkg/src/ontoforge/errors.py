"""Exception types shared across the toolchain."""

from __future__ import annotations

from dataclasses import dataclass


class OntoforgeError(Exception):
    """Base class for every error raised by ontoforge."""


class RdfSyntaxError(OntoforgeError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            where += ": "
        super().__init__(where + message)


class UnknownPrefixError(RdfSyntaxError):
    def __init__(self, prefix: str, line: int | None = None, column: int | None = None):
        self.prefix = prefix
        super().__init__(f"unknown prefix '{prefix}'", line, column)


class MalformedListError(OntoforgeError):
    """An RDF collection could not be traversed."""


class CardinalityError(OntoforgeError, ValueError):
    def __init__(self, token: str):
        self.token = token
        super().__init__(f"malformed cardinality '{token}'")


@dataclass(frozen=True)
class SchemaError:
    """One diagnostic produced while compiling a definition."""

    code: str
    message: str
    class_iri: str | None = None
    predicate: str | None = None
    line: int | None = None
    severity: str = "ERROR"

    def format(self) -> str:
        parts = [self.severity, self.code, f"class=<{self.class_iri or ''}>"]
        if self.predicate:
            parts.append(f"predicate=<{self.predicate}>")
        if self.line is not None:
            parts.append(f"line={self.line}")
        return " ".join(parts) + f": {self.message}"

    def sort_key(self):
        return (self.class_iri or "", self.line or 0, self.predicate or "", self.code, self.message)


class SchemaCompileError(OntoforgeError):
    """Raised with every diagnostic collected during loading or resolution."""

    def __init__(self, errors: list[SchemaError]):
        self.errors = sorted(errors, key=SchemaError.sort_key)
        super().__init__("\n".join(e.format() for e in self.errors))


class UnknownValueSetError(OntoforgeError, KeyError):
    def __init__(self, iri: str):
        self.iri = iri
        super().__init__(f"unknown value set <{iri}>")

    def __str__(self) -> str:
        return self.args[0]


class UnknownClassError(OntoforgeError, KeyError):
    def __init__(self, iri: str):
        self.iri = iri
        super().__init__(f"unknown class <{iri}>")

    def __str__(self) -> str:
        return self.args[0]


class EmitError(OntoforgeError):
    """An emitter refused the schema; ``code`` names the failure."""

    def __init__(self, code: str, message: str):
        self.code = code
        super().__init__(f"{code}: {message}")
