from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"
CORPORA = FIXTURES / "corpora"


def read_fixture(*parts):
    return FIXTURES.joinpath(*parts).read_text(encoding="utf-8")


@pytest.fixture
def fixtures():
    return FIXTURES


@pytest.fixture
def corpora():
    return CORPORA


_CRITERIA = {}


def record_criterion(n, ok, detail):
    _CRITERIA[n] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        ok, detail = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
