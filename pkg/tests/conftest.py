import numpy as np
import pytest
from hypothesis import strategies as st

from ppimetric.core import Dataset

FOUR = Dataset.from_pairs([(0.9, 1), (0.7, 0), (0.6, 1), (0.2, 0)])
PERFECT = Dataset.from_pairs([(1.0, 1), (1.0, 1), (0.0, 0), (0.0, 0)])

ACCEPTANCE_LINES: list[str] = []


@st.composite
def datasets(draw, max_size=200, min_size=2):
    """Both classes present; scores drawn from a small grid so ties are common."""
    n = draw(st.integers(min_size, max_size))
    n_levels = draw(st.integers(1, max(1, n)))
    levels = draw(st.lists(st.integers(0, n_levels), min_size=n, max_size=n))
    labels = draw(st.lists(st.booleans(), min_size=n, max_size=n))
    labels[0], labels[-1] = True, False
    scale = draw(st.sampled_from([1.0, 1 / 7, 0.01]))
    return Dataset(np.asarray(levels, dtype=float) * scale, np.asarray(labels))


@pytest.fixture
def four():
    return FOUR


@pytest.fixture
def perfect():
    return PERFECT


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
