import random

import pytest
from hypothesis import strategies as st

from cdcpipe.graph import from_pairs

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record(criterion: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[criterion] = (ok, detail)
    print(f"criterion {criterion}: {'PASS' if ok else 'FAIL'} - {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")


@st.composite
def multigraphs(draw, max_vertices=8, max_edges=16, loops=True):
    n = draw(st.integers(1, max_vertices))
    vertex = st.integers(0, n - 1)
    pairs = draw(st.lists(st.tuples(vertex, vertex), max_size=max_edges))
    if not loops:
        pairs = [(a, b) for a, b in pairs if a != b]
    return from_pairs(pairs, range(n))


def random_multigraph(rng: random.Random, n: int, m: int, loops: bool = False):
    pairs = [(rng.randrange(n), rng.randrange(n)) for _ in range(m)]
    if not loops:
        pairs = [(a, b) for a, b in pairs if a != b]
    return from_pairs(pairs, range(n))


@pytest.fixture
def rng():
    return random.Random(12345)
