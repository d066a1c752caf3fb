"""Shared fixtures and small construction helpers for the test suite."""

import numpy as np
import pytest

from koszulity.algebra import (QuadraticPresentation, SymmetryMode,
                               degreewise_expand, free_algebra, normal_monomials)
from koszulity.gf import PrimeField
from koszulity.monomials import GeneratorOrder, Monomial


def gen_order(n: int) -> GeneratorOrder:
    return GeneratorOrder(tuple(f"x{i}" for i in range(n)))


def exterior_algebra(n: int, l: int = 2, n_max: int = 5):
    """The free exterior (supercommutative) algebra on n generators."""
    return free_algebra(PrimeField(l), SymmetryMode.SUPERCOMMUTATIVE,
                        gen_order(n), n_max)


def polynomial_algebra(n: int, l: int = 2, n_max: int = 5):
    return free_algebra(PrimeField(l), SymmetryMode.COMMUTATIVE,
                        gen_order(n), n_max)


def presentation_from_strings(l, mode, names, relation_strings):
    """Build a quadratic presentation from e.g. ["x0*x1 + x1*x1"] shorthand:
    each relation string is a list of (coefficient, monomial) pairs."""
    order = GeneratorOrder(tuple(names))
    combos = []
    for terms in relation_strings:
        combo = {}
        for coef, mono_str in terms:
            m = Monomial.parse(mono_str, order)
            combo[m] = (combo.get(m, 0) + coef) % l
        combos.append(combo)
    return QuadraticPresentation.from_combos(
        PrimeField(l), mode, order, combos)


def random_presentation(rng, l, mode, num_gens, num_relations):
    """A reproducible random quadratic presentation."""
    order = GeneratorOrder(tuple(f"x{i}" for i in range(num_gens)))
    monos = normal_monomials(order, 2, mode)
    combos = []
    for _ in range(num_relations):
        combo = {m: rng.randrange(l) for m in monos}
        combos.append({m: c for m, c in combo.items() if c})
    combos = [c for c in combos if c]
    return QuadraticPresentation.from_combos(PrimeField(l), mode, order, combos)


@pytest.fixture
def f2():
    return PrimeField(2)


@pytest.fixture
def f3():
    return PrimeField(3)


@pytest.fixture
def f5():
    return PrimeField(5)
