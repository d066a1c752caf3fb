"""Bar-complex Tor tables, Koszul scans, and engine cross-audits."""

import math
import random

import numpy as np
import pytest

from koszulity.algebra import (ModuleTruncation, SymmetryMode,
                               augmentation_module, degreewise_expand,
                               free_algebra, ideal_module)
from koszulity.gf import PrimeField
from koszulity.graded import associated_graded, monomial_algebra, pbw_verdict
from koszulity.graphs import cycle_graph, graph_algebra
from koszulity.homology import (TorKind, TorTable, bar_tor_algebra,
                                bar_tor_module, is_free_exterior, koszul_scan,
                                koszul_tor_module, resolution_tor_algebra,
                                resolution_tor_module, tor_algebra, tor_module)
from koszulity.monomials import GeneratorOrder

from conftest import (exterior_algebra, gen_order, polynomial_algebra,
                      random_presentation)


def diag_table(kind, entries, i_max=4, j_max=4):
    return TorTable(kind, i_max, j_max, dict(entries))


class TestKoszulScan:
    def test_diagonal_clean(self):
        t = diag_table(TorKind.ALGEBRA, {(0, 0): 1, (1, 1): 2, (2, 2): 1})
        v = koszul_scan(t)
        assert v.koszul_through_bound and v.offenders == []

    def test_offender_reported(self):
        t = diag_table(TorKind.ALGEBRA, {(0, 0): 1, (2, 3): 1})
        v = koszul_scan(t)
        assert not v.koszul_through_bound
        assert v.offenders == [(2, 3, 1)]

    def test_module_strand(self):
        t = diag_table(TorKind.MODULE, {(0, 1): 3, (1, 2): 2})
        assert koszul_scan(t).koszul_through_bound


class TestBarAlgebra:
    def test_polynomial_one_generator(self):
        a = polynomial_algebra(1, n_max=4)
        t = bar_tor_algebra(a, 4, 4)
        expect = {(0, 0): 1, (1, 1): 1}
        assert {k: v for k, v in t.dims.items() if v} == expect

    def test_exterior_two_generators(self):
        a = exterior_algebra(2, n_max=4)
        t = bar_tor_algebra(a, 4, 4)
        for i in range(5):
            assert t.entry(i, i) == i + 1
        assert koszul_scan(t).koszul_through_bound

    def test_triangle_quotient_h23(self):
        a = graph_algebra(cycle_graph(3), PrimeField(2), n_max=4)
        t = bar_tor_algebra(a, 4, 4)
        assert t.entry(2, 3) != 0

    def test_h11_and_h22(self):
        rng = random.Random(41)
        for _ in range(5):
            p = random_presentation(rng, 3, SymmetryMode.SUPERCOMMUTATIVE, 3, 2)
            a = degreewise_expand(p, 3)
            t = bar_tor_algebra(a, 3, 3)
            assert t.entry(1, 1) == a.dims[1]
            assert t.entry(1, 2) == 0 and t.entry(1, 3) == 0
            # H_{2,2} counts the full space of associative quadratic
            # relations: the complement of A_2 inside A_1 (x) A_1
            assert t.entry(2, 2) == a.dims[1] ** 2 - a.dims[2]

    def test_bound_exceeds_truncation(self):
        a = exterior_algebra(2, n_max=3)
        with pytest.raises(ValueError):
            bar_tor_algebra(a, 4, 4)


class TestBarModule:
    def test_augmentation_ideal_of_exterior(self):
        lam = exterior_algebra(2, n_max=5)
        m = augmentation_module(lam, lam)
        t = bar_tor_module(lam, m, 5, 5)
        assert t.entry(0, 1) == 2
        assert koszul_scan(t).koszul_through_bound

    def test_trivial_module(self):
        # one generator, zero action: Tor of k itself, shifted to degree 1
        lam = exterior_algebra(2, n_max=4)
        dims = [0, 1, 0, 0, 0]
        zero_action = [None] + [
            [np.zeros((dims[n + 1], dims[n]), dtype=np.int64) for _ in range(2)]
            for n in range(1, 4)]
        m = ModuleTruncation(lam, dims, zero_action)
        t = bar_tor_module(lam, m, 4, 4)
        alg = bar_tor_algebra(lam, 3, 3)
        for i in range(4):
            for j in range(4):
                assert t.entry(i, j + 1) == alg.entry(i, j)

    def test_cycle_table(self):
        n = 4
        fld = PrimeField(2)
        t_graph = cycle_graph(n)
        a = graph_algebra(t_graph, fld, n_max=n)
        lam = free_algebra(fld, SymmetryMode.SUPERCOMMUTATIVE,
                           GeneratorOrder(t_graph.vertices), n)
        table = bar_tor_module(lam, augmentation_module(a, lam), n, n)
        assert table.entry(n - 2, n) == 1


class TestEngineAgreement:
    def test_algebra_resolution_vs_bar(self):
        rng = random.Random(57)
        for l, mode in ((2, SymmetryMode.COMMUTATIVE),
                        (3, SymmetryMode.SUPERCOMMUTATIVE),
                        (5, SymmetryMode.SUPERCOMMUTATIVE)):
            for _ in range(3):
                a = degreewise_expand(
                    random_presentation(rng, l, mode, 3, rng.randrange(4)), 4)
                bar = bar_tor_algebra(a, 4, 4)
                res = resolution_tor_algebra(a, 4, 4)
                assert bar.dims == res.dims

    def test_module_resolution_vs_bar(self):
        rng = random.Random(91)
        for _ in range(4):
            a = degreewise_expand(
                random_presentation(rng, 3, SymmetryMode.SUPERCOMMUTATIVE,
                                    3, rng.randrange(3)), 4)
            m = augmentation_module(a, a)
            bar = bar_tor_module(a, m, 4, 4)
            res = resolution_tor_module(a, m, 4, 4)
            assert bar.dims == res.dims

    def test_koszul_complex_vs_bar(self):
        for n, l in ((3, 2), (3, 3), (4, 5)):
            lam = exterior_algebra(n, l=l, n_max=4)
            assert is_free_exterior(lam)
            for c in (np.eye(n, dtype=np.int64)[0],
                      np.ones(n, dtype=np.int64)):
                m = ideal_module(lam, c)
                bar = bar_tor_module(lam, m, 4, 4)
                kz = koszul_tor_module(lam, m, 4, 4)
                assert bar.dims == kz.dims

    def test_driver_engines_consistent(self):
        lam = exterior_algebra(3, l=3, n_max=4)
        m = augmentation_module(lam, lam)
        auto = tor_module(lam, m, 4, 4)
        forced = tor_module(lam, m, 4, 4, engine="koszul")
        assert auto.dims == forced.dims


class TestInvariants:
    def test_pbw_soundness(self):
        """Quadratic presentations certified by the PBW criterion must have a
        clean homology diagonal."""
        rng = random.Random(101)
        checked = 0
        for _ in range(20):
            a = degreewise_expand(
                random_presentation(rng, 2, SymmetryMode.SUPERCOMMUTATIVE,
                                    4, rng.randrange(1, 4)), 4)
            if not pbw_verdict(a).koszul:
                continue
            checked += 1
            assert koszul_scan(bar_tor_algebra(a, 4, 4)).koszul_through_bound
        assert checked >= 3

    def test_filtration_comparison(self):
        """dim H_{i,j}(A) <= dim H_{i,j}(gr^F A) entrywise."""
        rng = random.Random(103)
        for _ in range(5):
            a = degreewise_expand(
                random_presentation(rng, 3, SymmetryMode.SUPERCOMMUTATIVE,
                                    3, rng.randrange(1, 3)), 4)
            gr = monomial_algebra(associated_graded(a), a.fld)
            ta = bar_tor_algebra(a, 4, 4)
            tg = bar_tor_algebra(gr, 4, 4)
            for i in range(5):
                for j in range(5):
                    assert ta.entry(i, j) <= tg.entry(i, j)

    def test_euler_characteristic_engine_independent(self):
        rng = random.Random(107)
        a = degreewise_expand(
            random_presentation(rng, 2, SymmetryMode.COMMUTATIVE, 3, 2), 4)
        bar = bar_tor_algebra(a, 4, 4)
        res = resolution_tor_algebra(a, 4, 4)
        for j in range(5):
            chi_b = sum((-1) ** i * bar.entry(i, j) for i in range(5))
            chi_r = sum((-1) ** i * res.entry(i, j) for i in range(5))
            assert chi_b == chi_r

    def test_internal_degree_bound(self):
        rng = random.Random(109)
        a = degreewise_expand(
            random_presentation(rng, 3, SymmetryMode.SUPERCOMMUTATIVE, 3, 1), 4)
        t = bar_tor_algebra(a, 4, 4)
        for (i, j), d in t.dims.items():
            if d:
                assert i <= j
        assert t.entry(0, 0) == 1


class TestTableFormats:
    def test_json_matrix(self):
        t = diag_table(TorKind.ALGEBRA, {(0, 0): 1, (1, 1): 2}, 1, 1)
        obj = t.to_json()
        assert obj["dims"] == [[1, 0], [0, 2]]
        assert obj["kind"] == "algebra"

    def test_text_header(self):
        t = diag_table(TorKind.ALGEBRA, {(0, 0): 1}, 1, 1)
        text = t.to_text()
        assert text.splitlines()[0].startswith("i\\j")
        assert len(text.splitlines()) == 3
