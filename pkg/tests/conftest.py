import sys
from pathlib import Path

import mpmath
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gsop.numerics import DEFAULT_DIGITS  # noqa: E402

ACCEPTANCE_LINES = []


@pytest.fixture(autouse=True)
def _precision():
    with mpmath.workdps(DEFAULT_DIGITS):
        yield


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
