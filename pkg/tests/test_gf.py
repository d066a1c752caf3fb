"""Exact linear algebra over F_l: rank, kernels, membership, sparse audit."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from koszulity import gf
from koszulity.gf import PrimeField, RowSpan, SparseMatrixGF


def sparse(data, l):
    return SparseMatrixGF.from_dense(np.array(data, dtype=np.int64), PrimeField(l))


class TestPrimeField:
    def test_rejects_composite(self):
        with pytest.raises(ValueError):
            PrimeField(6)

    def test_rejects_one(self):
        with pytest.raises(ValueError):
            PrimeField(1)

    @pytest.mark.parametrize("l", [2, 3, 5, 7])
    def test_inverses(self, l):
        fld = PrimeField(l)
        for a in range(1, l):
            assert (a * fld.inv(a)) % l == 1


class TestRank:
    def test_empty(self):
        assert sparse(np.zeros((0, 0)), 2).rank() == 0

    def test_equal_rows_f2(self):
        assert sparse([[1, 1], [1, 1]], 2).rank() == 1

    def test_proportional_rows_f5(self):
        assert sparse([[1, 2], [2, 4]], 5).rank() == 1

    def test_identity(self):
        assert sparse(np.eye(4), 3).rank() == 4


class TestKernelBasis:
    def test_identity_trivial_kernel(self):
        assert sparse(np.eye(3), 3).kernel_basis() == []

    def test_zero_matrix_full_kernel(self):
        ker = sparse(np.zeros((2, 3)), 2).kernel_basis()
        assert len(ker) == 3

    def test_single_row_f2(self):
        ker = sparse([[1, 1]], 2).kernel_basis()
        assert len(ker) == 1
        assert list(ker[0]) == [1, 1]

    def test_kernel_vectors_annihilate(self):
        m = sparse([[1, 2, 0], [0, 1, 1]], 3)
        for v in m.kernel_basis():
            assert not ((m.to_dense() @ v) % 3).any()


class TestRowSpaceMembership:
    def test_zero_vector_always_in(self):
        assert sparse([[1, 0]], 2).in_row_space(np.array([0, 0]))

    def test_outside(self):
        assert not sparse([[1, 0]], 2).in_row_space(np.array([0, 1]))

    def test_sum_of_rows(self):
        assert sparse([[1, 1], [0, 1]], 2).in_row_space(np.array([1, 0]))

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            sparse([[1, 0]], 2).in_row_space(np.array([1, 0, 0]))


class TestSparseMatrixValidation:
    def test_duplicate_entries_rejected(self):
        with pytest.raises(ValueError):
            SparseMatrixGF(PrimeField(2), 2, 2, ((0, 0, 1), (0, 0, 1)))

    def test_stored_zero_rejected(self):
        with pytest.raises(ValueError):
            SparseMatrixGF(PrimeField(3), 1, 1, ((0, 0, 3),))

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            SparseMatrixGF(PrimeField(2), 1, 1, ((1, 0, 1),))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2 ** 30), st.sampled_from([2, 3, 5]),
       st.integers(1, 30), st.integers(1, 30))
def test_sparse_rank_matches_dense(seed, l, rows, cols):
    rng = np.random.default_rng(seed)
    a = rng.integers(0, l, size=(rows, cols))
    m = SparseMatrixGF.from_dense(a, PrimeField(l))
    # force the sparse elimination path and compare with dense elimination
    assert gf.sparse_rank(m, dense_threshold=0) == gf.rank(a, l)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 30), st.sampled_from([2, 3, 5]),
       st.integers(1, 12), st.integers(1, 12))
def test_rank_plus_kernel_of_transpose(seed, l, rows, cols):
    rng = np.random.default_rng(seed)
    a = rng.integers(0, l, size=(rows, cols))
    m = SparseMatrixGF.from_dense(a, PrimeField(l))
    assert m.rank() == rows - len(m.transpose().kernel_basis())


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 30), st.sampled_from([2, 3, 5]), st.integers(1, 10))
def test_inverse_and_solve(seed, l, n):
    rng = np.random.default_rng(seed)
    a = rng.integers(0, l, size=(n, n))
    if gf.rank(a, l) < n:
        with pytest.raises(ValueError):
            gf.inverse(a, l)
        return
    inv = gf.inverse(a, l)
    assert ((a @ inv) % l == np.eye(n, dtype=np.int64)).all()
    b = rng.integers(0, l, size=n)
    x = gf.solve(a, b, l)
    assert ((a @ x) % l == b % l).all()


def test_rowspan_incremental():
    span = RowSpan(3, 2)
    assert span.add(np.array([1, 1, 0]))
    assert not span.add(np.array([1, 1, 0]))
    assert span.add(np.array([0, 1, 1]))
    assert span.contains(np.array([1, 0, 1]))
    assert span.dim == 2
