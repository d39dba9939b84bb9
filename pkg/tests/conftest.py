from pathlib import Path

import pytest

from bianchidim.arith import QuadField

ROOT = Path(__file__).resolve().parent.parent
FIXTURE = ROOT / "data" / "fixtures" / "published_genuine.csv"

# filled by tests/test_acceptance.py, printed once at the end of the run
ACCEPTANCE_LINES = {}


@pytest.fixture(scope="session")
def fixture_path():
    return FIXTURE


@pytest.fixture(scope="session")
def fields():
    return {d: QuadField.from_disc(d) for d in (-7, -11, -19, -43, -67, -163, -23, -31)}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
