import sys

import numpy as np
import pytest

from secondkind.models import random_kahler


@pytest.fixture(scope="session")
def kahler2():
    return [random_kahler(2, (11, s)) for s in range(10)]


@pytest.fixture(scope="session")
def kahler3():
    return [random_kahler(3, (12, s)) for s in range(10)]


@pytest.fixture
def rng():
    return np.random.default_rng(20261017)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(results):
        terminalreporter.write_line(results[k])
