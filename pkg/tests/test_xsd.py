from __future__ import annotations

import datetime

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gen import LITERALS
from ontoforge.xsd import SAMPLE_VALUES, XSD, checks_lexical_form, is_valid_lexical, sample_lexical


@pytest.mark.parametrize(("lexical", "name", "valid"), LITERALS)
def test_labelled_literals(lexical, name, valid):
    assert is_valid_lexical(XSD + name, lexical) is valid


@pytest.mark.parametrize(
    ("name", "lexical", "valid"),
    [
        ("byte", "127", True),
        ("byte", "128", False),
        ("unsignedByte", "255", True),
        ("unsignedByte", "256", False),
        ("positiveInteger", "0", False),
        ("negativeInteger", "-1", True),
        ("dateTime", "2020-01-01T24:00:00", True),
        ("dateTime", "2020-01-01T24:00:01", False),
        ("dateTime", "2020-01-01T10:00:00+05:30", True),
        ("date", "2020-13-01", False),
        ("anyURI", "has space", False),
        ("float", "NaN", True),
    ],
)
def test_ranges_and_calendar(name, lexical, valid):
    assert is_valid_lexical(XSD + name, lexical) is valid


def test_unchecked_types_accept_anything():
    assert not checks_lexical_form("http://example.org/dt")
    assert is_valid_lexical("http://example.org/dt", "anything at all")
    assert is_valid_lexical(XSD + "string", "")


@given(st.integers())
def test_every_python_int_is_an_integer(n):
    assert is_valid_lexical(XSD + "integer", str(n))
    assert is_valid_lexical(XSD + "nonNegativeInteger", str(n)) is (n >= 0)


@given(st.dates())
def test_iso_dates_are_dates(d: datetime.date):
    text = f"{d.year:04d}-{d.month:02d}-{d.day:02d}"
    assert is_valid_lexical(XSD + "date", text)


@pytest.mark.parametrize("name", sorted(SAMPLE_VALUES))
def test_sample_values_are_valid(name):
    for i in range(3):
        assert is_valid_lexical(XSD + name, sample_lexical(XSD + name, i))
