import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from spinqsde import PhysicalParams  # noqa: E402


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def dephasing():
    return PhysicalParams([0, 0, 0], [0, 0, 1j])


@pytest.fixture
def decay_x():
    return PhysicalParams([0, 0, 0], [1, 0, 0])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
