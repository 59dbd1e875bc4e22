import pytest
from hypothesis import strategies as st

from cdoracle.boolean import BooleanFunction

ACCEPTANCE_LINES: list[str] = []


@st.composite
def esop_functions(draw, max_vars=6, max_clauses=8, max_clause_size=4, allow_empty=True):
    n = draw(st.integers(1, max_vars))
    size = st.integers(0 if allow_empty else 1, min(n, max_clause_size))
    clauses = draw(st.lists(
        size.flatmap(lambda k: st.lists(st.integers(1, n), min_size=k, max_size=k, unique=True)),
        min_size=0, max_size=max_clauses))
    return BooleanFunction(n, tuple(tuple(c) for c in clauses))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def f4_text():
    pairs = ["1 2", "1 3", "1 4", "2 3", "2 4", "3 4"]
    return "vars 4\n" + "".join(f"term {p}\n" for p in pairs)
