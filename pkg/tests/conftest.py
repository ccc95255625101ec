from pathlib import Path

import numpy as np
import pytest

from lorenz_hb import CLASSICAL, NewtonConfig, run_continuation
from lorenz_hb.io import read_coefficients

DATA = Path(__file__).parent / "data"
REFERENCE_FILE = DATA / "reference_h35.txt"

# outcome lines collected by the acceptance module
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def reference_h35():
    """Reference h=35 amplitudes (16 significant digits) as an HBState."""
    state, _ = read_coefficients(REFERENCE_FILE)
    return state


@pytest.fixture(scope="session")
def reference_cycle(reference_h35):
    """h=35 cycle from the reference amplitudes truncated to h=5, then the default 5..35 ladder."""
    return run_continuation(seed=reference_h35.padded(5), p=CLASSICAL, cfg=NewtonConfig(tol=1e-8))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
