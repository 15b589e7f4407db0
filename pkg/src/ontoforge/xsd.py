"""Lexical-space checks for the XSD datatypes with decidable lexical forms."""

from __future__ import annotations

import calendar
import re

from .rdf import XSD

_INT = re.compile(r"^[+-]?\d+$")
_DECIMAL = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)$")
_FLOAT = re.compile(r"^([+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?|[+-]?INF|NaN)$")
_TZ = r"(Z|[+-](\d{2}):(\d{2}))?"
_DATE = re.compile(r"^(-?\d{4,})-(\d{2})-(\d{2})" + _TZ + "$")
_DATETIME = re.compile(r"^(-?\d{4,})-(\d{2})-(\d{2})T(\d{2}):(\d{2}):(\d{2})(\.\d+)?" + _TZ + "$")

# name -> (low, high) inclusive bounds; None for unbounded
_INTEGER_RANGES: dict[str, tuple[int | None, int | None]] = {
    "integer": (None, None),
    "nonNegativeInteger": (0, None),
    "positiveInteger": (1, None),
    "nonPositiveInteger": (None, 0),
    "negativeInteger": (None, -1),
    "long": (-(2**63), 2**63 - 1),
    "int": (-(2**31), 2**31 - 1),
    "short": (-(2**15), 2**15 - 1),
    "byte": (-128, 127),
    "unsignedLong": (0, 2**64 - 1),
    "unsignedInt": (0, 2**32 - 1),
    "unsignedShort": (0, 2**16 - 1),
    "unsignedByte": (0, 255),
}


def _valid_tz(hh: str | None, mm: str | None) -> bool:
    if hh is None:
        return True
    h, m = int(hh), int(mm)
    return m < 60 and (h < 14 or (h == 14 and m == 0))


def _valid_ymd(year: str, month: str, day: str) -> bool:
    y, mo, d = int(year), int(month), int(day)
    if y == 0 or not 1 <= mo <= 12:
        return False
    days = [31, 29 if calendar.isleap(y) else 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31]
    return 1 <= d <= days[mo - 1]


def _check_date(text: str) -> bool:
    m = _DATE.match(text)
    return bool(m) and _valid_ymd(*m.group(1, 2, 3)) and _valid_tz(m.group(5), m.group(6))


def _check_datetime(text: str) -> bool:
    m = _DATETIME.match(text)
    if not m or not _valid_ymd(*m.group(1, 2, 3)):
        return False
    h, mi, s = int(m.group(4)), int(m.group(5)), int(m.group(6))
    if h == 24:
        if mi or s or (m.group(7) and set(m.group(7)[1:]) != {"0"}):
            return False
    elif h > 23 or mi > 59 or s > 59:
        return False
    return _valid_tz(m.group(9), m.group(10))


def _check_integer(name: str, text: str) -> bool:
    if not _INT.match(text):
        return False
    lo, hi = _INTEGER_RANGES[name]
    v = int(text)
    return (lo is None or v >= lo) and (hi is None or v <= hi)


def checks_lexical_form(datatype: str) -> bool:
    """Whether :func:`is_valid_lexical` inspects the lexical form of ``datatype``."""
    if not datatype.startswith(XSD):
        return False
    name = datatype[len(XSD):]
    return name in _INTEGER_RANGES or name in ("boolean", "decimal", "float", "double", "date", "dateTime", "anyURI")


def is_valid_lexical(datatype: str, text: str) -> bool:
    """Lexical validity for checked XSD types; ``True`` for everything else."""
    if not checks_lexical_form(datatype):
        return True
    name = datatype[len(XSD):]
    if name in _INTEGER_RANGES:
        return _check_integer(name, text)
    if name == "boolean":
        return text in ("true", "false", "1", "0")
    if name == "decimal":
        return bool(_DECIMAL.match(text))
    if name in ("float", "double"):
        return bool(_FLOAT.match(text))
    if name == "date":
        return _check_date(text)
    if name == "dateTime":
        return _check_datetime(text)
    # anyURI: anything without whitespace or control characters
    return not re.search(r"[\s\x00-\x1f\x7f]", text)


SAMPLE_VALUES: dict[str, list[str]] = {
    "string": ["alpha", "beta", "gamma"],
    "integer": ["0", "7", "-3"],
    "nonNegativeInteger": ["0", "12"],
    "positiveInteger": ["1", "42"],
    "long": ["5", "-9"],
    "int": ["3", "11"],
    "short": ["2", "-8"],
    "byte": ["1", "100"],
    "nonPositiveInteger": ["0", "-4"],
    "negativeInteger": ["-1", "-20"],
    "unsignedLong": ["6", "0"],
    "unsignedInt": ["9", "1"],
    "unsignedShort": ["4", "65535"],
    "unsignedByte": ["255", "8"],
    "decimal": ["1.5", "0.25"],
    "float": ["1.0", "2.5E3"],
    "double": ["3.14", "-1.0E-2"],
    "boolean": ["true", "false"],
    "date": ["2019-04-01", "2020-02-29"],
    "dateTime": ["2019-04-01T12:30:00", "2020-02-29T00:00:00Z"],
    "anyURI": ["http://example.org/a", "urn:x"],
}


def sample_lexical(datatype: str, index: int = 0) -> str:
    """A valid lexical form for ``datatype`` (any text for unchecked types)."""
    name = datatype[len(XSD):] if datatype.startswith(XSD) else ""
    values = SAMPLE_VALUES.get(name, SAMPLE_VALUES["string"])
    return values[index % len(values)]
