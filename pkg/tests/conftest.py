import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from polymut.laurent import LaurentPolynomial  # noqa: E402

DATA = Path(__file__).parent / "data"


@pytest.fixture
def data_dir() -> Path:
    return DATA


def poly(text: str, variables: str = "xyz") -> LaurentPolynomial:
    return LaurentPolynomial.from_string(text, variables)


_criteria: dict[int, tuple[str, str]] = {}


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    n, title = marker.args
    if call.when == "call" or (call.when == "setup" and call.excinfo is not None):
        if call.excinfo is None:
            status = "PASS"
        elif call.excinfo.errisinstance(pytest.skip.Exception):
            status = "SKIP"
        else:
            status = "FAIL"
        _criteria[n] = (status, title)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        status, title = _criteria[n]
        terminalreporter.write_line(f"{status} criterion {n}: {title}")
