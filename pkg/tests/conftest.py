import numpy as np
import pytest

from pcmtree import parse_matrix

from helpers import REFERENCE, INCOMPLETE, ALMOST


@pytest.fixture
def reference():
    return parse_matrix(REFERENCE)


@pytest.fixture
def incomplete():
    return parse_matrix(INCOMPLETE)


@pytest.fixture
def almost():
    return parse_matrix(ALMOST)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# one line per acceptance criterion, printed after the run
ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
