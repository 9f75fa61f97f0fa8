import sys

import pytest

from pardec.syntax import parse_expr


@pytest.fixture
def P():
    return parse_expr("a*tau.b.0")


@pytest.fixture
def Q():
    return parse_expr("b.0")


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.summary_lines():
        terminalreporter.write_line(line)
