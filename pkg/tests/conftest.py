import numpy as np
import pytest

from parastat.young import YoungTableau

ALPHA1 = YoungTableau(((1, 2), (3,)))
ALPHA2 = YoungTableau(((1, 3), (2,)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def cvec(rng, n):
    return rng.normal(size=n) + 1j * rng.normal(size=n)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
