import random

import pytest
from hypothesis import strategies as st

from gallai import ColoredKn


@st.composite
def colorings(draw, max_order=8, max_colors=4):
    """Arbitrary (not necessarily Gallai) colorings."""
    n = draw(st.integers(1, max_order))
    k = draw(st.integers(1, max_colors))
    tri = draw(st.lists(st.integers(1, k), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))
    return ColoredKn(n, k, tri)


@pytest.fixture
def rng():
    return random.Random(20241017)


ACCEPTANCE_LINES: dict[int, str] = {}


def record_criterion(number: int, ok: bool, text: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {text}"
    ACCEPTANCE_LINES[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[number])
