import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from vesprod.core import CASE_1, CASE_2, random_params  # noqa: E402

ACCEPTANCE_LINES = []


@pytest.fixture(params=[1, 2], ids=["case1", "case2"])
def case(request):
    return {1: CASE_1, 2: CASE_2}[request.param]


def draws(n, seed=0):
    rng = np.random.default_rng(seed)
    return [random_params(rng) for _ in range(n)]


@pytest.fixture(scope="session")
def draws_1k():
    return draws(1000, seed=20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
