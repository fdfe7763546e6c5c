import numpy as np
import pytest
from hypothesis import strategies as st

from warmqaoa.graphs import generate_u3r


def cubic_graphs(sizes=(4, 6, 8, 10, 12)):
    """Random simple 3-regular graphs drawn through a seed, so shrinking stays meaningful."""
    return st.tuples(st.sampled_from(sizes), st.integers(0, 2**32 - 1)).map(lambda t: generate_u3r(*t))


angles = st.floats(-2 * np.pi, 2 * np.pi, allow_nan=False)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
