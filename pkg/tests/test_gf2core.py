from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from detperm_pcw.algebra.codegen import dumbbell
from detperm_pcw.algebra.errors import ContractError, ShapeError
from detperm_pcw.algebra.gf2core import (
    BinaryMatrix,
    IntMatrix,
    code_parameters,
    det_int,
    integer_rref,
    nullspace_gf2,
    nullspace_rational,
    perm_int,
    rank_gf2,
    rank_rational,
    submatrix,
)

from strategies import square_matrices, wide_matrices


def brute_permanent(rows) -> int:
    n = len(rows)
    return sum(math.prod(rows[r][p[r]] for r in range(n)) for p in itertools.permutations(range(n)))


class TestBinaryMatrix:
    def test_rejects_non_binary(self):
        with pytest.raises(ContractError) as exc:
            BinaryMatrix([[1, 2], [0, 1]])
        assert exc.value.code == "matrix.not_binary"

    def test_supports(self, h422):
        assert h422.shape == (2, 4)
        assert h422.row_support(1) == [1, 2, 3]
        assert h422.column_support(1) == [0, 1]
        assert h422.column_support(0) == [0]

    def test_read_only_and_hashable(self, h422):
        with pytest.raises(ValueError):
            h422.bits[0, 0] = 0
        assert {h422: 1}[BinaryMatrix([[1, 1, 1, 0], [0, 1, 1, 1]])] == 1

    def test_empty(self):
        assert BinaryMatrix([], n_cols=3).shape == (0, 3)


class TestSubmatrix:
    def test_selects_rows_and_columns(self, h422):
        assert submatrix(h422, [1], [1, 3]).rows() == [(1, 1)]
        assert submatrix(h422, None, [3, 0]).rows() == [(1, 0), (0, 1)]

    def test_out_of_range(self, h422):
        with pytest.raises(ShapeError) as exc:
            submatrix(h422, None, [4])
        assert exc.value.code == "index.out_of_range"

    def test_int_matrix(self):
        M = IntMatrix([[1, -2, 3], [4, 5, -6]])
        assert submatrix(M, [1], [0, 2]).rows == ((4, -6),)


class TestDeterminant:
    def test_known_values(self):
        assert det_int(IntMatrix([[2, 0], [0, 3]])) == 6
        assert det_int(IntMatrix([[0, 1], [1, 0]])) == -1
        assert det_int(IntMatrix([[1, 1], [1, 1]])) == 0
        assert det_int(IntMatrix([], n_cols=0)) == 1

    def test_needs_pivot_swap(self):
        assert det_int(IntMatrix([[0, 0, 1], [0, 1, 0], [1, 0, 0]])) == -1

    def test_big_integers_stay_exact(self):
        big = 10**30
        assert det_int(IntMatrix([[big, 1], [1, big]])) == big * big - 1

    def test_not_square(self, h422):
        with pytest.raises(ShapeError) as exc:
            det_int(h422)
        assert exc.value.code == "shape.not_square"

    @given(square_matrices(max_dim=7))
    @settings(max_examples=150, deadline=None)
    def test_matches_numpy(self, M):
        expected = int(round(np.linalg.det(M.bits.astype(float)))) if M.n else 1
        assert det_int(M) == expected


class TestPermanent:
    def test_all_ones(self):
        for d in range(1, 6):
            assert perm_int(IntMatrix([[1] * d] * d)) == math.factorial(d)

    def test_signed_entries(self):
        assert perm_int(IntMatrix([[1, -1], [2, 3]])) == 1

    def test_cap(self):
        with pytest.raises(ContractError) as exc:
            perm_int(IntMatrix([[1] * 5] * 5), max_dim=4)
        assert exc.value.code == "perm.too_large"

    @given(square_matrices(max_dim=6))
    @settings(max_examples=150, deadline=None)
    def test_matches_definition(self, M):
        assert perm_int(M) == brute_permanent([list(r) for r in M.rows()])


class TestParityAndSymmetry:
    @given(square_matrices(max_dim=7))
    @settings(max_examples=150, deadline=None)
    def test_det_and_perm_agree_mod_2(self, M):
        assert det_int(M) % 2 == perm_int(M) % 2

    @given(square_matrices(max_dim=7).filter(lambda M: M.n >= 2), st.data())
    @settings(max_examples=100, deadline=None)
    def test_row_swap_flips_det(self, M, data):
        a, b = data.draw(st.lists(st.integers(0, M.n - 1), min_size=2, max_size=2, unique=True))
        order = list(range(M.n))
        order[a], order[b] = order[b], order[a]
        assert det_int(BinaryMatrix(M.bits[order])) == -det_int(M)

    @given(square_matrices(max_dim=7), st.data())
    @settings(max_examples=100, deadline=None)
    def test_perm_ignores_row_and_column_order(self, M, data):
        rows = np.array(data.draw(st.permutations(range(M.n))), dtype=np.intp)
        cols = np.array(data.draw(st.permutations(range(M.n))), dtype=np.intp)
        shuffled = BinaryMatrix(M.bits[np.ix_(rows, cols)], n_cols=M.n)
        assert perm_int(shuffled) == perm_int(M)
        assert abs(det_int(shuffled)) == abs(det_int(M))


class TestGf2:
    def test_dumbbell_rank(self, dumbbell3, dumbbell4):
        assert rank_gf2(dumbbell3) == 5
        assert rank_gf2(dumbbell4) == 7

    @pytest.mark.parametrize("k", range(3, 9))
    def test_dumbbell_rank_family(self, k):
        assert rank_gf2(dumbbell(k)) == 2 * k - 1

    @pytest.mark.parametrize(
        "fixture,params",
        [("h422", (4, 2, 2)), ("dumbbell3", (7, 2, 3)), ("dumbbell4", (9, 2, 4))],
    )
    def test_code_parameters(self, request, fixture, params):
        assert code_parameters(request.getfixturevalue(fixture)) == params

    def test_trivial_code(self):
        assert code_parameters(BinaryMatrix([[1, 0], [0, 1]])) == (2, 0, 0)

    @given(wide_matrices(max_m=6, max_extra=4))
    @settings(max_examples=100, deadline=None)
    def test_nullspace_is_the_code(self, H):
        basis = nullspace_gf2(H)
        assert len(basis) == H.n - rank_gf2(H)
        for c in basis:
            assert not (H.bits.astype(int) @ np.array(c) % 2).any()


class TestRational:
    @given(wide_matrices(max_m=6, max_extra=4))
    @settings(max_examples=100, deadline=None)
    def test_rank_matches_numpy(self, H):
        assert rank_rational(H) == np.linalg.matrix_rank(H.bits.astype(float))

    @given(wide_matrices(max_m=6, max_extra=4))
    @settings(max_examples=100, deadline=None)
    def test_kernel_basis(self, H):
        basis = nullspace_rational(H)
        assert len(basis) == H.n - rank_rational(H)
        for v in basis:
            assert math.gcd(*v) == 1
            assert not (H.bits.astype(object) @ np.array(v, dtype=object)).any()

    def test_rref_rows_are_primitive(self):
        rows, pivots = integer_rref([[2, 4, 6], [1, 1, 1]])
        assert pivots == [0, 1]
        assert all(math.gcd(*r) == 1 for r in rows)

    def test_fractions(self):
        assert rank_rational([[Fraction(1, 2), Fraction(1, 3)], [3, 2]]) == 1
