import math
from pathlib import Path

import numpy as np
import pytest

from pwshape.geometry import helmert_submatrix, pw_coordinates
from pwshape.synthetic import VERTEBRA_TEMPLATE

DATA = Path(__file__).parent / "data"
FIXTURE = DATA / "synthetic_mouse.tsv"
SIGMA2 = 50.0
MU = helmert_submatrix(6) @ (VERTEBRA_TEMPLATE * 0.5)


def mouse_scale_shapes(count, seed, *, scale="frobenius", mu=MU):
    """Preshapes ``mu + sqrt(50) Z`` at the size of the fixture data."""
    rng = np.random.default_rng(seed)
    return [
        pw_coordinates(mu + math.sqrt(SIGMA2) * rng.standard_normal(mu.shape), scale=scale,
                       specimen_id=f"s{i}")
        for i in range(count)
    ]


def rel_log_diff(a, b):
    a = getattr(a, "log_magnitude", a)
    b = getattr(b, "log_magnitude", b)
    return abs(a - b) / max(abs(b), 1.0)


@pytest.fixture(scope="session")
def fixture_path():
    return FIXTURE


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
