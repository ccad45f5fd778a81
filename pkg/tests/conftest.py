"""Shared hypothesis strategies and helpers."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from posspan.exact import Mat


def small_ints(lo: int = -2, hi: int = 2):
    return st.integers(min_value=lo, max_value=hi)


def rationals(lo: int = -3, hi: int = 3, max_den: int = 4):
    return st.builds(Fraction, small_ints(lo, hi), st.integers(min_value=1, max_value=max_den))


@st.composite
def matrices(draw, rows=(1, 4), cols=(1, 6), entries=None):
    n = draw(st.integers(*rows))
    m = draw(st.integers(*cols))
    ent = entries if entries is not None else small_ints()
    grid = draw(st.lists(st.lists(ent, min_size=m, max_size=m), min_size=n, max_size=n))
    return Mat(grid, m)


def nonzero(strategy):
    return strategy.filter(lambda M: not M.is_zero())


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def record_criterion(number: int, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
