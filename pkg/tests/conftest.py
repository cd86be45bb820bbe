import math

import numpy as np
import pytest

from farpoint.surface import make_klein_spec, make_torus_spec


def random_torus(rng, ratio=(1.0, 2.0), alpha_margin=1e-3):
    """Random canonical torus: ``a <= b <= ratio*a`` and ``2 b cos(alpha) <= a``."""
    a = rng.uniform(0.5, 2.0)
    b = a * rng.uniform(*ratio)
    lo = math.acos(a / (2.0 * b))
    alpha = rng.uniform(lo, math.pi / 2 - alpha_margin)
    return make_torus_spec(a, b, alpha)


def random_klein(rng):
    return make_klein_spec(rng.uniform(0.5, 2.0), rng.uniform(0.5, 6.0))


@pytest.fixture
def rng():
    return np.random.default_rng(20261019)


@pytest.fixture
def square():
    return make_torus_spec(1, 1, math.pi / 2)


@pytest.fixture
def hexagonal():
    return make_torus_spec(1, 1, math.pi / 3)


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
