from hypothesis import given, settings

from conftest import matrices, rationals, small_ints
from hypothesis import strategies as st
from posspan.exact import Mat, dot
from posspan.simplex import solve


def test_feasible_simple():
    res = solve(Mat([[1, 1]]), (2,))
    assert res.feasible and sum(res.x) == 2


def test_infeasible_gives_farkas_vector():
    A = Mat([[1, 1]])
    res = solve(A, (-1,))
    assert not res.feasible
    assert all(v >= 0 for v in res.y @ A) and dot(res.y, (-1,)) < 0


def test_degenerate_rows():
    A = Mat([[1, -1, 0], [2, -2, 0], [0, 0, 1]])
    res = solve(A, (0, 0, 3))
    assert res.feasible and A @ res.x == (0, 0, 3)


@given(
    matrices(rows=(1, 4), cols=(1, 6)),
    st.lists(small_ints(-3, 3), min_size=4, max_size=4),
)
@settings(max_examples=150, deadline=None)
def test_certificate_always_verifies(A, b):
    b = tuple(b[: A.nrows])
    res = solve(A, b)
    if res.feasible:
        assert A @ res.x == b and all(v >= 0 for v in res.x)
    else:
        assert all(v >= 0 for v in res.y @ A) and dot(res.y, b) < 0


@given(matrices(rows=(2, 3), cols=(2, 5), entries=rationals()))
@settings(max_examples=80, deadline=None)
def test_feasible_when_built_from_solution(A):
    x = tuple(range(1, A.ncols + 1))
    res = solve(A, A @ x)
    assert res.feasible
