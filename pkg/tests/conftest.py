import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from alladi.graph import GraphSemigroup, named_graph  # noqa: E402
from alladi.integers import GaussianSemigroup, IntegerSemigroup  # noqa: E402
from alladi.poly import PolySemigroup  # noqa: E402

ACCEPTANCE: dict[int, str] = {}


@pytest.fixture(scope="session")
def f2():
    return PolySemigroup(2, 12)


@pytest.fixture(scope="session")
def f3():
    return PolySemigroup(3, 6)


@pytest.fixture(scope="session")
def ints():
    return IntegerSemigroup(10 ** 4)


@pytest.fixture(scope="session")
def gauss():
    return GaussianSemigroup(10 ** 4)


@pytest.fixture(scope="session")
def k4():
    return GraphSemigroup(named_graph("k4"), 12)


@pytest.fixture(scope="session")
def c5():
    return GraphSemigroup(named_graph("c5"), 12)


@pytest.fixture(scope="session")
def acceptance():
    def record(number: int, ok: bool, detail: str):
        ACCEPTANCE[number] = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
