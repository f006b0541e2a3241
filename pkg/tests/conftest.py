import pytest

from matroidkit import catalog
from matroidkit.core import uniform


@pytest.fixture(scope="session")
def fano():
    return catalog.fano()


@pytest.fixture(scope="session")
def u24():
    return uniform(2, 4)


@pytest.fixture(scope="session")
def u12xy():
    return uniform(1, 2, ["x", "y"])


@pytest.fixture(scope="session")
def small_catalog():
    return catalog.small_catalog(max_n=7)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for num in sorted(mod.RESULTS):
            terminalreporter.write_line(mod.RESULTS[num])
