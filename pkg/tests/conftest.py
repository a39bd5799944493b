import pytest
from mpmath import mp

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(autouse=True)
def _restore_precision():
    saved = mp.prec
    yield
    mp.prec = saved


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
