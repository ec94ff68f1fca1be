import sys

import pytest

from qgr.quiver import kronecker, quiver_from_alias


@pytest.fixture(scope="session")
def kq():
    return kronecker()


@pytest.fixture(scope="session")
def a21():
    return quiver_from_alias("a21")


@pytest.fixture(scope="session")
def a31():
    return quiver_from_alias("a31")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for i in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.format_line(i))
