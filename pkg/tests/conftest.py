import pytest

from hypercolor import kernels
from hypercolor.hypergraph import Hypergraph
from hypercolor.listcolor import Assignment

_ACCEPTANCE: list[tuple[str, bool, str]] = []


@pytest.fixture
def two_edge():
    return Hypergraph(4, [[0, 1, 2], [0, 1, 3]])


@pytest.fixture
def path_pair():
    return Hypergraph(5, [[0, 1, 2], [2, 3, 4]])


@pytest.fixture
def triple_edge():
    return Hypergraph(4, [[0, 1, 2], [0, 1, 3], [0, 2, 3]])


@pytest.fixture
def example_L():
    return Assignment(2, [[1, 2], [1, 2], [1, 3], [1, 4]])


@pytest.fixture(params=kernels.available())
def backend(request):
    previous = kernels.set_backend(request.param)
    yield kernels.active
    kernels.active = previous


@pytest.fixture
def acceptance():
    """Record one criterion outcome; all outcomes are printed at the end of the run."""

    def record(label: str, passed: bool, detail: str = ""):
        _ACCEPTANCE.append((label, passed, detail))
        print(f"{label}: {'PASS' if passed else 'FAIL'} {detail}")

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}  {detail}")
