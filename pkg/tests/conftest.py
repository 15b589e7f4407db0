from __future__ import annotations

import contextlib
import time
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"
FIXTURE_DEF = FIXTURES / "gbol_mini.ttl"

# criterion number -> (passed, title, detail)
ACCEPTANCE: dict[int, tuple[bool, str, str]] = {}


@pytest.fixture
def criterion():
    """``with criterion(n, title) as note:`` records a pass/fail line."""

    @contextlib.contextmanager
    def record(number: int, title: str):
        notes: list[str] = []
        start = time.perf_counter()
        try:
            yield notes
        except BaseException as exc:
            ACCEPTANCE[number] = (False, title, f"{type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''}")
            raise
        elapsed = time.perf_counter() - start
        ACCEPTANCE[number] = (True, title, "; ".join(notes + [f"{elapsed:.2f}s"]))

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, title, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} ({detail})")


@pytest.fixture(scope="session")
def fixture_schema():
    from ontoforge import compile_schema, parse_turtle

    return compile_schema(parse_turtle(FIXTURE_DEF.read_text(encoding="utf-8")))
