import pytest

from lhrkit.syntax import parse_term

M0_TEXT = r"(\f:o->o.\x:o. f (f x)) (\y:o.y) *:o"


@pytest.fixture
def m0():
    return parse_term(M0_TEXT)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import LINES

    if not LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(LINES):
        terminalreporter.write_line(LINES[k])
