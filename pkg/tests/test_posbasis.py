import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import matrices
from posspan.errors import (
    BadDimensions,
    BadParameters,
    DimensionTooSmall,
    MalformedInForm,
    NotPositiveBasis,
    UnsupportedDimension,
)
from posspan.exact import Mat, apply_equiv, hstack, verify_equiv
from posspan.fixtures import D58
from posspan.posbasis import (
    critical_structure,
    gen_maximal_pb,
    gen_minimal_pb,
    gen_pb_2l_minus_1,
    gen_pb_l_plus_2,
    is_critical_matrix_low_dim,
    is_critical_vector,
    is_positive_basis,
    normalize_two_row_blocks,
    reduce_to_near_extreme_form,
    removal_oracle,
    replacement_oracle,
    span_coordinates,
    two_row_cone,
)
from posspan.pss import InForm, decompose_in_ina


def frame(n):
    return hstack(Mat.identity(n), Mat.from_columns([[-1] * n]))


def in_form(N: Mat) -> InForm:
    form = decompose_in_ina(hstack(Mat.identity(N.nrows), N))
    assert isinstance(form, InForm)
    return form


class TestCriticalVectors:
    @pytest.mark.parametrize(
        "v,critical,label",
        [
            ((-1, 0), True, "K2"),
            ((2, 2, -1), True, "K1,2"),
            ((3, 1), False, "none"),
            ((0, 0), True, "K1"),
            ((-1, -2, -3), False, "none"),
            ((1, -1, 1), True, "K1,3"),
        ],
    )
    def test_examples(self, v, critical, label):
        res = is_critical_vector(v)
        assert res.is_critical == critical and res.label == label

    def test_dimension_too_small(self):
        with pytest.raises(DimensionTooSmall):
            is_critical_vector((0,))

    @pytest.mark.parametrize("v,expected", [((3, 1), False), ((-1, 0), True), ((0, 0), True)])
    def test_replacement_oracle_examples(self, v, expected):
        assert replacement_oracle(v) == expected

    def test_argmax_replacement_construction(self):
        # 0 = v - 3*1 + 2*e2 for v = (3, 1): replacing e1 by v keeps a PSS
        assert oracles.pss_full(Mat.from_columns([(3, 1), (0, 1), (-1, -1)]))

    @given(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=4), min_size=2, max_size=3))
    @settings(max_examples=150, deadline=None)
    def test_matches_replacement_oracle(self, v):
        assert is_critical_vector(v).is_critical == replacement_oracle(v)


class TestCriticalStructure:
    def test_trivial_structure(self):
        cs = critical_structure(in_form(Mat.from_columns([[-1] * 3])))
        assert cs.block_sizes == (3,) and cs.blocks == ()

    def test_2l_minus_1_form(self):
        form = in_form(gen_pb_2l_minus_1(4, 4, (0, -1)).block(range(4), range(4, 7)))
        cs = critical_structure(form)
        assert cs.block_sizes == (2, 1, 1)
        assert cs.blocks[0] == Mat([[0, 0], [0, -1]])

    def test_l_plus_2_form(self):
        form = in_form(gen_pb_l_plus_2(3, 3, 2, (0, -1)).block(range(3), range(3, 5)))
        cs = critical_structure(form)
        assert cs.block_sizes == (2, 1) and cs.blocks[0] == Mat([[0], [-1]])

    def test_reassemble(self):
        form = decompose_in_ina(D58)
        cs = critical_structure(form)
        assert cs.reassemble() == form.canonical
        assert sum(cs.block_sizes) == 5

    def test_malformed(self):
        with pytest.raises(MalformedInForm):
            critical_structure(decompose_in_ina(hstack(frame(2), Mat.from_columns([(1, 0)]))))


class TestCriticalMatrix:
    def test_zero_row(self):
        assert is_critical_matrix_low_dim(Mat.zeros(1, 3))
        assert not is_critical_matrix_low_dim(Mat([[0, -1]]))

    def test_cone_k1(self):
        assert is_critical_matrix_low_dim(Mat([[0, 0], [-1, -2]]))

    def test_mixed_cones(self):
        assert not is_critical_matrix_low_dim(Mat([[0, -1], [-1, 0]]))

    def test_cones(self):
        assert two_row_cone(Mat([[-1, -2], [0, 0]])) == "K2"
        assert two_row_cone(Mat([[1, 3], [1, 3]])) == "K12"
        assert two_row_cone(Mat([[1], [2]])) is None

    def test_unsupported(self):
        with pytest.raises(UnsupportedDimension):
            is_critical_matrix_low_dim(Mat.zeros(3, 1))


class TestRecognition:
    @pytest.mark.parametrize("n", [1, 2, 4])
    def test_minimal(self, n):
        rep = is_positive_basis(frame(n))
        assert rep.verdict and rep.verify(frame(n))

    def test_removable_column(self):
        D = hstack(Mat.identity(2), Mat.from_columns([(-1, 0), (-1, -1)]))
        rep = is_positive_basis(D)
        assert not rep.verdict and rep.verify(D)
        # only -e1 is removable; dropping -1 loses -e2
        assert rep.removable == 2
        assert not oracles.pss_full(D.drop_column(3))

    def test_d58(self):
        rep = is_positive_basis(D58)
        assert rep.verdict and rep.verify(D58)

    def test_not_pss(self):
        rep = is_positive_basis(Mat.identity(2))
        assert not rep.verdict and rep.method == "not-pss" and rep.verify(Mat.identity(2))

    def test_lower_dimensional_span(self):
        D = gen_minimal_pb(2, 4)
        assert is_positive_basis(D).verdict
        assert not is_positive_basis(hstack(D, D.select_columns([0]))).verdict

    def test_span_coordinates(self):
        D = gen_maximal_pb(2, 3)
        P, C, ell = span_coordinates(D)
        assert ell == 2
        assert C.select_columns(range(ell)) @ P == D

    @given(matrices(rows=(1, 3), cols=(1, 6)))
    @settings(max_examples=200, deadline=None)
    def test_matches_brute_force(self, D):
        rep = is_positive_basis(D)
        assert rep.verdict == oracles.positive_basis(D)
        assert rep.verdict == removal_oracle(D)[0]
        assert rep.verify(D)

    @given(matrices(rows=(1, 3), cols=(1, 7)))
    @settings(max_examples=100, deadline=None)
    def test_size_bounds(self, D):
        rep = is_positive_basis(D)
        if rep.verdict and rep.rank:
            assert rep.rank + 1 <= D.ncols <= 2 * rep.rank


class TestNormalization:
    def test_k2_block(self):
        N = Mat([[-1, -1], [-1, 0], [0, -1]])
        form = in_form(N)
        cs = critical_structure(form)
        assert two_row_cone(cs.blocks[0]) == "K2"
        out, cs2 = normalize_two_row_blocks(form, cs)
        assert two_row_cone(cs2.blocks[0]) == "K1"
        assert verify_equiv(hstack(Mat.identity(3), N), out.canonical, out.witness)

    def test_k12_block(self):
        N = Mat([[-1, 2], [-1, 2], [0, -1]])
        form = in_form(N)
        cs = critical_structure(form)
        assert two_row_cone(cs.blocks[0]) == "K12"
        out, cs2 = normalize_two_row_blocks(form, cs)
        assert two_row_cone(cs2.blocks[0]) == "K1"
        assert verify_equiv(hstack(Mat.identity(3), N), out.canonical, out.witness)

    def test_k1_unchanged(self):
        N = Mat([[-1, 0], [-1, -3], [0, -1]])
        form = in_form(N)
        out, _ = normalize_two_row_blocks(form, critical_structure(form))
        assert out.canonical == form.canonical

    def test_non_critical(self):
        N = Mat([[-1, 1], [-1, 0], [0, -1]])
        form = in_form(N)
        with pytest.raises(NotPositiveBasis):
            normalize_two_row_blocks(form, critical_structure(form))

    @given(st.integers(0, 10**6))
    @settings(max_examples=60, deadline=None)
    def test_random_nested_blocks(self, seed):
        rng = random.Random(seed)
        sizes = [rng.choice((1, 2)) for _ in range(rng.randint(2, 4))]
        D = random_in_matrix(sizes, rng, critical_only=True)
        form = in_form(D.block(range(D.nrows), range(D.nrows, D.ncols)))
        out, cs = normalize_two_row_blocks(form, critical_structure(form))
        assert verify_equiv(D, out.canonical, out.witness)
        assert all(two_row_cone(X) == "K1" for X, s in zip(cs.blocks, cs.block_sizes) if s == 2)


def random_in_matrix(sizes, rng, critical_only=False) -> Mat:
    """``[I N]`` with NEM blocks of the given sizes and cone-biased free blocks."""
    n, s = sum(sizes), len(sizes)
    rows, r = [], 0
    for i, size in enumerate(sizes):
        width = s - 1 - i
        if size == 1:
            free = [[0] * width] if critical_only or rng.random() < 0.6 else [
                [rng.randint(-2, 2) for _ in range(width)]
            ]
        else:
            cone = rng.choice(("K1", "K2", "K12") if critical_only else ("K1", "K2", "K12", "mix"))
            a = [rng.randint(0, 3) for _ in range(width)]
            if cone == "K1":
                free = [[0] * width, [-t for t in a]]
            elif cone == "K2":
                free = [[-t for t in a], [0] * width]
            elif cone == "K12":
                free = [a, list(a)]
            else:
                free = [[rng.randint(-2, 2) for _ in range(width)] for _ in range(2)]
        for q in range(size):
            row = [0] * s
            row[i] = -1
            row[i + 1 :] = free[q]
            rows.append(row)
        r += size
    return hstack(Mat.identity(n), Mat(rows, s))


class TestGenerators:
    def test_minimal_and_maximal(self):
        assert gen_minimal_pb(3, 3) == frame(3)
        assert gen_maximal_pb(2, 2) == Mat([[1, 0, -1, 0], [0, 1, 0, -1]])
        D = gen_minimal_pb(2, 3)
        assert D.shape == (3, 3) and D.select_rows([2]).is_zero()

    def test_2l_minus_1_smallest(self):
        assert gen_pb_2l_minus_1(2, 2, ()) == frame(2)

    @pytest.mark.parametrize("ell,x", [(4, (0, -1)), (3, (-2,)), (5, (0, 0, -3))])
    def test_2l_minus_1(self, ell, x):
        D = gen_pb_2l_minus_1(ell, ell, x)
        assert D.ncols == 2 * ell - 1 and removal_oracle(D)[0]

    @pytest.mark.parametrize("ell,k,x", [(2, 1, (0,)), (3, 2, (0, -1)), (4, 3, (0, -1, 0))])
    def test_l_plus_2(self, ell, k, x):
        D = gen_pb_l_plus_2(ell, ell, k, x)
        assert D.ncols == ell + 2 and removal_oracle(D)[0]

    def test_bad_parameters(self):
        with pytest.raises(BadParameters):
            gen_pb_l_plus_2(2, 2, 1, (1,))
        with pytest.raises(BadParameters):
            gen_pb_2l_minus_1(3, 3, (1,))
        with pytest.raises(BadDimensions):
            gen_minimal_pb(3, 2)
        with pytest.raises(BadDimensions):
            gen_pb_2l_minus_1(1, 1, ())


class TestNearExtreme:
    def test_round_trip_2l_minus_1(self):
        forms = reduce_to_near_extreme_form(gen_pb_2l_minus_1(3, 3, (-2,)))
        fam = {f.family: f for f in forms}
        assert fam["2l-1"].x == (-2,)

    def test_round_trip_l_plus_2(self):
        forms = reduce_to_near_extreme_form(gen_pb_l_plus_2(3, 3, 2, (0, -1)))
        fam = {f.family: f for f in forms}
        assert fam["l+2"].k == 2 and sorted(fam["l+2"].x) == [-1, 0]

    def test_size_mismatch(self):
        assert reduce_to_near_extreme_form(frame(3)) is None

    def test_not_a_basis(self):
        assert reduce_to_near_extreme_form(hstack(frame(2), Mat.from_columns([(1, 0)]))) is None

    @given(st.integers(0, 10**6))
    @settings(max_examples=50, deadline=None)
    def test_scrambled_generator_output(self, seed):
        rng = random.Random(seed)
        ell = rng.randint(2, 4)
        n = ell + rng.randint(0, 1)
        if rng.random() < 0.5:
            D = gen_pb_2l_minus_1(ell, n, [-rng.randint(0, 2) for _ in range(ell - 2)])
        else:
            k = rng.randint(1, ell - 1)
            D = gen_pb_l_plus_2(ell, n, k, [0] + [-rng.randint(0, 2) for _ in range(k - 1)])
        B = random_unimodular(n, rng)
        perm = list(range(D.ncols))
        rng.shuffle(perm)
        scale = [Fraction(rng.randint(1, 3), rng.randint(1, 2)) for _ in perm]
        scrambled = (B @ D).select_columns(perm).scale_columns(scale)
        forms = reduce_to_near_extreme_form(scrambled)
        assert forms
        for f in forms:
            assert apply_equiv(scrambled, f.witness) == f.canonical


def random_unimodular(n, rng) -> Mat:
    rows = Mat.identity(n).to_lists()
    for _ in range(3 * n):
        a, b = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if a != b:
            c = rng.randint(-1, 1)
            rows[a] = [x + c * y for x, y in zip(rows[a], rows[b])]
    return Mat(rows, n)
