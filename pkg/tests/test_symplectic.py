"""Symplectic spaces over F_l, Lagrangians, and the transversal algorithm."""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from koszulity.gf import PrimeField, rank
from koszulity.symplectic import (BilinearSpace, Subspace,
                                  hyperbolic_decomposition, hyperbolic_plane,
                                  is_lagrangian, lagrangian_transversal,
                                  orthogonal_sum, random_lagrangian)


def hyperbolic_sum(l, planes):
    fld = PrimeField(l)
    return orthogonal_sum([hyperbolic_plane(fld) for _ in range(planes)])


class TestBilinearSpace:
    def test_hyperbolic_plane_nondegenerate(self):
        for l in (2, 3, 5):
            w = hyperbolic_plane(PrimeField(l))
            assert w.symplectic and w.is_nondegenerate()

    def test_symplectic_nonzero_diagonal_rejected(self):
        with pytest.raises(ValueError):
            BilinearSpace(PrimeField(3), 1, np.array([[1]]), symplectic=True)

    def test_symplectic_non_skew_rejected(self):
        with pytest.raises(ValueError):
            BilinearSpace(PrimeField(3), 2, np.array([[0, 1], [1, 0]]),
                          symplectic=True)

    def test_non_orthogonal_summands_rejected(self):
        gram = np.array([[0, 1], [1, 0]])
        with pytest.raises(ValueError):
            BilinearSpace(PrimeField(2), 2, gram, summands=[[0], [1]])

    def test_orthogonal_sum_blocks(self):
        w = hyperbolic_sum(3, 2)
        assert w.dim == 4
        assert w.summands == [[0, 1], [2, 3]]
        assert w.pair(np.array([1, 0, 0, 0]), np.array([0, 0, 1, 0])) == 0

    def test_pair_antisymmetric(self):
        w = hyperbolic_sum(5, 2)
        u, v = np.array([1, 2, 0, 3]), np.array([0, 1, 4, 1])
        assert (w.pair(u, v) + w.pair(v, u)) % 5 == 0

    def test_orthogonal_complement(self):
        w = hyperbolic_plane(PrimeField(3))
        comp = w.orthogonal_complement(np.array([[1, 0]]))
        assert comp.shape[0] == 1
        assert w.pair(np.array([1, 0]), comp[0]) == 0


class TestSubspace:
    def test_dependent_basis_rejected(self):
        w = hyperbolic_plane(PrimeField(2))
        with pytest.raises(ValueError):
            Subspace(w, np.array([[1, 0], [1, 0]]))

    def test_contains(self):
        w = hyperbolic_sum(2, 2)
        s = Subspace(w, np.array([[1, 0, 1, 0], [0, 1, 0, 1]]))
        assert s.contains(np.array([1, 1, 1, 1]))
        assert not s.contains(np.array([1, 0, 0, 0]))


class TestIsLagrangian:
    def test_isotropic_line_in_plane(self):
        w = hyperbolic_plane(PrimeField(2))
        assert is_lagrangian(Subspace(w, np.array([[1, 0]])))

    def test_full_plane_not_lagrangian(self):
        w = hyperbolic_plane(PrimeField(2))
        assert not is_lagrangian(Subspace(w, np.eye(2, dtype=np.int64)))

    def test_diagonal_lagrangian_in_two_planes(self):
        w = hyperbolic_sum(2, 2)
        # span{e1+e2, f1+f2}
        s = Subspace(w, np.array([[1, 0, 1, 0], [0, 1, 0, 1]]))
        assert is_lagrangian(s)
        # exhaustive: every pair of its vectors pairs to zero
        vecs = [(a * s.basis[0] + b * s.basis[1]) % 2
                for a in range(2) for b in range(2)]
        for u, v in itertools.product(vecs, vecs):
            assert w.pair(u, v) == 0

    def test_degenerate_ambient_rejected(self):
        w = BilinearSpace(PrimeField(2), 2, np.zeros((2, 2), dtype=np.int64))
        with pytest.raises(ValueError):
            is_lagrangian(Subspace(w, np.array([[1, 0]])))

    def test_odd_dimension_false(self):
        gram = np.array([[0, 1, 0], [2, 0, 0], [0, 0, 1]])
        w = BilinearSpace(PrimeField(3), 3, gram)
        assert not is_lagrangian(Subspace(w, np.array([[1, 0, 0]])))


class TestHyperbolicDecomposition:
    @pytest.mark.parametrize("l,planes", [(2, 1), (2, 2), (3, 2), (5, 3)])
    def test_planes_are_hyperbolic(self, l, planes):
        w = hyperbolic_sum(l, planes)
        got = hyperbolic_decomposition(w, list(range(w.dim)))
        assert len(got) == planes
        span = np.concatenate([np.array(pl) for pl in got])
        assert rank(span, l) == w.dim
        for e, f in got:
            assert w.pair(e, e) == 0 and w.pair(f, f) == 0
            assert w.pair(e, f) == 1


def assert_transversal(w, lagr, ms):
    stack = [lagr.basis] + [m.basis for m in ms]
    assert rank(np.concatenate(stack), w.fld.l) == w.dim
    for m, block in zip(ms, w.summands):
        sub = BilinearSpace(w.fld, len(block), w.gram[np.ix_(block, block)],
                            symplectic=True)
        assert is_lagrangian(Subspace(sub, m.basis[:, block]))
        outside = [i for i in range(w.dim) if i not in block]
        assert not m.basis[:, outside].any()


class TestLagrangianTransversal:
    def test_single_plane(self):
        w = orthogonal_sum([hyperbolic_plane(PrimeField(2))])
        lagr = Subspace(w, np.array([[1, 0]]))
        ms, = (lagrangian_transversal(w, lagr),)
        assert_transversal(w, lagr, ms)

    def test_diagonal_lagrangian_f2(self):
        w = hyperbolic_sum(2, 2)
        lagr = Subspace(w, np.array([[1, 0, 1, 0], [0, 1, 0, 1]]))
        ms = lagrangian_transversal(w, lagr)
        assert_transversal(w, lagr, ms)

    def test_non_lagrangian_rejected(self):
        w = hyperbolic_sum(2, 2)
        with pytest.raises(ValueError):
            lagrangian_transversal(w, Subspace(w, np.array([[1, 0, 0, 0]])))

    def test_missing_summands_rejected(self):
        w = hyperbolic_plane(PrimeField(2))
        with pytest.raises(ValueError):
            lagrangian_transversal(w, Subspace(w, np.array([[1, 0]])))

    @settings(max_examples=100, deadline=None)
    @given(st.sampled_from([2, 3, 5]), st.integers(1, 5), st.integers(0, 10 ** 6))
    def test_randomized_never_fails(self, l, planes, seed):
        w = hyperbolic_sum(l, planes)
        lagr = random_lagrangian(w, seed)
        ms = lagrangian_transversal(w, lagr)
        assert_transversal(w, lagr, ms)


class TestRandomLagrangian:
    def test_plane_gives_line(self):
        w = hyperbolic_plane(PrimeField(3))
        assert random_lagrangian(w, 7).dim == 1

    def test_ten_seeds_dim4(self):
        w = hyperbolic_sum(2, 2)
        for seed in range(10):
            assert is_lagrangian(random_lagrangian(w, seed))

    def test_deterministic(self):
        w = hyperbolic_sum(5, 2)
        a = random_lagrangian(w, 42)
        b = random_lagrangian(w, 42)
        assert (a.basis == b.basis).all()

    def test_non_symplectic_rejected(self):
        w = BilinearSpace(PrimeField(2), 2, np.eye(2, dtype=np.int64))
        with pytest.raises(ValueError):
            random_lagrangian(w, 0)
