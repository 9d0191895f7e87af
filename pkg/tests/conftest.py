import numpy as np
import pytest

from curtangent.dense import compact_svd
from curtangent.experiment import ExperimentConfig, build_test_problem
from curtangent.sampling import SelectionPair


@pytest.fixture
def example_m():
    """Rank-one M = ones(3,3)/3 with the first row and column sampled."""
    M = np.full((3, 3), 1.0 / 3.0)
    sel = SelectionPair([0], [0], 3, 3)
    E = np.zeros((3, 3))
    E[2, 2] = 1.0
    return M, sel, E, compact_svd(M)


@pytest.fixture(scope="session")
def default_problem():
    return build_test_problem(ExperimentConfig(seed=0))


def problem(seed, **kw):
    return build_test_problem(ExperimentConfig(seed=1000 * seed, **kw))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
