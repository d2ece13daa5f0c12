import random

import pytest
from hypothesis import strategies as st

from brunnian.braid import BraidWord


def braid_words(strands=st.integers(2, 4), max_len=10):
    """Hypothesis strategy for random braid words."""
    @st.composite
    def build(draw):
        m = draw(strands)
        if m == 1:
            return BraidWord(1)
        letters = draw(st.lists(
            st.tuples(st.integers(1, m - 1), st.sampled_from([1, -1])), max_size=max_len))
        return BraidWord(m, tuple(letters))
    return build()


@pytest.fixture
def rng():
    return random.Random(20261017)


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
