"""Exact Phase-1 simplex for ``A x = b, x >= 0``.

Every answer carries a certificate: a nonnegative solution ``x`` or a Farkas
vector ``y`` with ``y^T A >= 0`` and ``y^T b < 0``. Bland's rule (lowest index
entering, lowest basic index on ratio ties) guarantees termination.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Sequence

from .exact import ONE, ZERO, Mat, dot, vec


class Feasibility(NamedTuple):
    feasible: bool
    x: tuple[Fraction, ...] | None
    y: tuple[Fraction, ...] | None


def _pivot(rows: list[list[Fraction]], cost: list[Fraction], r: int, e: int) -> None:
    prow = rows[r]
    piv = prow[e]
    if piv != 1:
        prow = [a / piv for a in prow]
        rows[r] = prow
    nz = [(j, a) for j, a in enumerate(prow) if a]
    for i, row in enumerate(rows):
        f = row[e]
        if i != r and f:
            for j, a in nz:
                row[j] -= f * a
    f = cost[e]
    if f:
        for j, a in nz:
            cost[j] -= f * a


def solve(A: Mat, b: Sequence) -> Feasibility:
    """Decide feasibility of ``A x = b, x >= 0`` exactly."""
    n, m = A.shape
    b = vec(b)
    if len(b) != n:
        raise ValueError("right-hand side length mismatch")
    sign = [(-ONE if bi < 0 else ONE) for bi in b]
    width = m + n + 1
    rows: list[list[Fraction]] = []
    for i in range(n):
        s = sign[i]
        row = [s * a for a in A.row(i)] + [ZERO] * n + [s * b[i]]
        row[m + i] = ONE
        rows.append(row)
    cost = [ZERO] * width
    for j in range(width):
        if m <= j < m + n:
            cost[j] = ZERO
        else:
            cost[j] = -sum((row[j] for row in rows), ZERO)
    basis = [m + i for i in range(n)]
    last = width - 1

    while True:
        entering = next((j for j in range(last) if cost[j] < 0), None)
        if entering is None:
            break
        leave = None
        best = None
        for i, row in enumerate(rows):
            a = row[entering]
            if a > 0:
                ratio = row[last] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            # phase-1 objective is bounded below by 0
            raise AssertionError("unbounded phase-1 problem")
        _pivot(rows, cost, leave, entering)
        basis[leave] = entering

    if cost[last] == 0:
        x = [ZERO] * m
        for i, var in enumerate(basis):
            if var < m:
                x[var] = rows[i][last]
        x = tuple(x)
        assert A @ x == b and all(v >= 0 for v in x)
        return Feasibility(True, x, None)

    # dual multipliers of the phase-1 problem: pi_i = 1 - reduced cost of artificial i
    y = tuple(-(ONE - cost[m + i]) * sign[i] for i in range(n))
    assert all(v >= 0 for v in y @ A) and dot(y, b) < 0
    return Feasibility(False, None, y)
