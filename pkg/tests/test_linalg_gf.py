"""Tests for exact linear algebra over GF(p)."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from algebra.linalg_gf import (
    FieldPrime,
    MatrixGF,
    kernel_basis,
    left_kernel_basis,
    matmul_mod,
    null_space,
    reduce_modulo,
    row_reduce,
    rref,
    solve,
    subspace_contains,
    subspace_intersect,
    subspace_sum,
)
from errors import DimensionError, IdealInputError

SMALL_PRIMES = st.sampled_from([2, 3, 5, 7, 101, 32003])


def matrices(max_rows=5, max_cols=5):
    """(p, entries) pairs of small random matrices."""
    return SMALL_PRIMES.flatmap(
        lambda p: st.tuples(st.integers(0, max_rows), st.integers(1, max_cols)).flatmap(
            lambda shape: st.tuples(
                st.just(p),
                st.lists(
                    st.lists(st.integers(0, p - 1), min_size=shape[1], max_size=shape[1]),
                    min_size=shape[0],
                    max_size=shape[0],
                ),
                st.just(shape[1]),
            )
        )
    )


class TestFieldPrime:
    def test_rejects_composite(self):
        with pytest.raises(IdealInputError):
            FieldPrime(32004)

    def test_rejects_non_integer(self):
        with pytest.raises(IdealInputError):
            FieldPrime(2.5)

    def test_rejects_too_large(self):
        with pytest.raises(IdealInputError):
            FieldPrime(2 ** 31 + 11)

    def test_inverse(self):
        field = FieldPrime(7)
        assert (3 * field.inverse(3)) % 7 == 1
        with pytest.raises(ZeroDivisionError):
            field.inverse(14)

    def test_str(self):
        assert str(FieldPrime(5)) == "GF(5)"


class TestMatrixGF:
    def test_entries_are_reduced(self):
        m = MatrixGF([[7, -1], [10, 3]], FieldPrime(7))
        assert m.tolist() == [[0, 6], [3, 3]]

    def test_entries_are_read_only(self):
        m = MatrixGF([[1, 2]], FieldPrime(5))
        with pytest.raises(ValueError):
            m.entries[0, 0] = 3

    def test_empty_matrix_keeps_width(self):
        m = MatrixGF(np.zeros((0, 4), dtype=np.int64), FieldPrime(5), cols=4)
        assert m.shape == (0, 4)
        assert m.rank == 0

    def test_wrong_width(self):
        with pytest.raises(DimensionError):
            MatrixGF([[1, 2, 3]], FieldPrime(5), cols=2)

    def test_matmul_shape_mismatch(self):
        field = FieldPrime(5)
        with pytest.raises(DimensionError):
            MatrixGF([[1, 2]], field) @ MatrixGF([[1, 2]], field)

    def test_identity_rank(self):
        assert MatrixGF.identity(4, FieldPrime(3)).rank == 4


class TestRowReduction:
    def test_rank_over_gf2(self):
        """Rows summing to zero mod 2 are dependent."""
        m = MatrixGF([[1, 1, 0], [0, 1, 1], [1, 0, 1]], FieldPrime(2))
        rank, reduced = row_reduce(m)
        assert rank == 2
        assert reduced.tolist() == [[1, 0, 1], [0, 1, 1]]

    def test_same_matrix_full_rank_over_gf3(self):
        m = MatrixGF([[1, 1, 0], [0, 1, 1], [1, 0, 1]], FieldPrime(3))
        assert m.rank == 3

    def test_pivots_are_increasing(self):
        reduced, pivots = rref(np.array([[0, 0, 2], [0, 3, 1], [0, 0, 0]]), 5)
        assert pivots == [1, 2]
        assert reduced.shape == (2, 3)

    def test_reduce_modulo_kills_row_space(self):
        basis, pivots = rref(np.array([[1, 2, 3], [0, 1, 4]]), 7)
        v = np.array([[2, 5, 3]])  # 2*(1,2,3) + (0,1,4) mod 7
        assert not reduce_modulo(v, basis, pivots, 7).any()

    def test_solve(self):
        field = FieldPrime(11)
        m = MatrixGF([[1, 2], [3, 4]], field)
        x = solve(m, [5, 6])
        assert (m @ x.T).tolist() == [[5], [6]]

    def test_solve_inconsistent(self):
        m = MatrixGF([[1, 1], [2, 2]], FieldPrime(5))
        assert solve(m, [1, 3]) is None

    def test_matmul_mod_large_prime_no_overflow(self):
        p = 2147483629
        a = np.full((3, 50), p - 1, dtype=np.int64)
        b = np.full((50, 2), p - 1, dtype=np.int64)
        assert (matmul_mod(a, b, p) == 50 % p).all()


class TestProperties:
    @given(matrices())
    @settings(max_examples=60, deadline=None)
    def test_rank_nullity(self, data):
        p, rows, cols = data
        m = MatrixGF(np.array(rows, dtype=np.int64).reshape(len(rows), cols), FieldPrime(p), cols=cols)
        kernel = kernel_basis(m)
        assert m.rank + kernel.rows == cols
        if kernel.rows and m.rows:
            assert not (m @ kernel.T).entries.any()

    @given(matrices())
    @settings(max_examples=60, deadline=None)
    def test_left_kernel_annihilates(self, data):
        p, rows, cols = data
        if not rows:
            return
        m = MatrixGF(rows, FieldPrime(p), cols=cols)
        left = left_kernel_basis(m)
        assert left.rows == m.rows - m.rank
        if left.rows:
            assert not (left @ m).entries.any()

    @given(matrices(max_rows=4, max_cols=5), st.data())
    @settings(max_examples=60, deadline=None)
    def test_dimension_formula(self, first, data):
        """dim(U ∩ V) + dim(U + V) = dim U + dim V."""
        p, rows, cols = first
        field = FieldPrime(p)
        other = data.draw(
            st.lists(st.lists(st.integers(0, p - 1), min_size=cols, max_size=cols), max_size=4)
        )
        U = MatrixGF(np.array(rows, dtype=np.int64).reshape(len(rows), cols), field, cols=cols)
        V = MatrixGF(np.array(other, dtype=np.int64).reshape(len(other), cols), field, cols=cols)
        assert subspace_intersect(U, V).rows + subspace_sum(U, V).rows == U.rank + V.rank

    @given(matrices(max_rows=4, max_cols=5))
    @settings(max_examples=40, deadline=None)
    def test_intersection_lies_in_both(self, data):
        p, rows, cols = data
        field = FieldPrime(p)
        U = MatrixGF(np.array(rows, dtype=np.int64).reshape(len(rows), cols), field, cols=cols)
        V = MatrixGF.identity(cols, field)
        common = subspace_intersect(U, V)
        assert common.rows == U.rank
        if common.rows:
            assert subspace_contains(U, common)
            assert subspace_contains(V, common)

    @given(matrices())
    @settings(max_examples=40, deadline=None)
    def test_null_space_width(self, data):
        p, rows, cols = data
        a = np.array(rows, dtype=np.int64).reshape(len(rows), cols)
        assert null_space(a, p).shape[1] == cols
