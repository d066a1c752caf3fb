"""Associated-graded monomial algebras under the inverse-lex filtration.

The filtration of A_n by monomials is the canonical degree-1-generated
extension of the generator filtration: F_m A_n = span of the values of all
monomials <= m.  A monomial survives when its value leaves the span of the
values of all strictly smaller monomials; the surviving monomials are a
basis of A and the basis of the monomial algebra gr^F A.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf import RowSpan
from .algebra import DegreewiseAlgebra, SymmetryMode, free_product, normal_monomials
from .monomials import GeneratorOrder, Monomial, divisors_degree


@dataclass
class MonomialTruncation:
    """Surviving monomial sets per degree: the basis of gr^F A."""

    order: GeneratorOrder
    mode: SymmetryMode
    n_max: int
    surviving: list[list[Monomial]]  # index = degree, ascending invlex

    def survives(self, m: Monomial) -> bool:
        return m.degree <= self.n_max and m in self._sets()[m.degree]

    def _sets(self) -> list[set[Monomial]]:
        if not hasattr(self, "_set_cache"):
            self._set_cache = [set(s) for s in self.surviving]
        return self._set_cache


@dataclass
class PBWVerdict:
    generated_in_degree_1: bool
    quadratic_through_3: bool
    koszul: bool
    certificate: list[list[Monomial]]
    failures: list[Monomial]


def surviving_monomials(a: DegreewiseAlgebra, n: int) -> list[Monomial]:
    """Greedy ascending-invlex scan for the degree-n commutative PBW basis."""
    if n == 0:
        return [Monomial.unit()]
    span = RowSpan(a.dims[n], a.fld.l)
    out: list[Monomial] = []
    for m in normal_monomials(a.order, n, a.mode):
        if span.dim == a.dims[n]:
            break
        if span.add(a.monomial_value(m)):
            out.append(m)
    if span.dim != a.dims[n]:
        raise ValueError(f"A_{n} is not spanned by monomials in the generators")
    return out


def associated_graded(a: DegreewiseAlgebra) -> MonomialTruncation:
    surv = [surviving_monomials(a, n) for n in range(a.n_max + 1)]
    g = MonomialTruncation(a.order, a.mode, a.n_max, surv)
    bad = _divisor_closure_failures(g)
    if bad:
        raise AssertionError(f"divisor closure violated at {bad[0]}")
    return g


def _divisor_closure_failures(g: MonomialTruncation) -> list[Monomial]:
    bad = []
    for n in range(2, g.n_max + 1):
        for m in g.surviving[n]:
            if any(not g.survives(d) for d in divisors_degree(m, n - 1)):
                bad.append(m)
    return bad


def check_generated_degree1(g: MonomialTruncation) -> tuple[bool, list[Monomial]]:
    """Every degree >= 2 survivor must be generator * (degree n-1 survivor)."""
    witnesses = []
    for n in range(2, g.n_max + 1):
        for m in g.surviving[n]:
            if not any(g.survives(d) for d in divisors_degree(m, n - 1)):
                witnesses.append(m)
    return not witnesses, witnesses[:16]


def check_quadratic_through3(g: MonomialTruncation) -> tuple[bool, list[Monomial]]:
    """Non-surviving cubics must be divisible by a non-surviving quadratic."""
    if g.n_max < 3:
        return True, []
    witnesses = []
    surv3 = set(g.surviving[3])
    for m in normal_monomials(g.order, 3, g.mode):
        if m in surv3:
            continue
        if all(g.survives(d) for d in divisors_degree(m, 2)):
            witnesses.append(m)
    return not witnesses, witnesses[:16]


def pbw_verdict(a: DegreewiseAlgebra) -> PBWVerdict:
    """Combine the two PBW hypotheses; both passing certifies Koszulity of a
    quadratically presented algebra, with the survivors as PBW basis."""
    g = associated_graded(a)
    gen1, w1 = check_generated_degree1(g)
    quad3, w2 = check_quadratic_through3(g)
    return PBWVerdict(gen1, quad3, gen1 and quad3, g.surviving, (w1 + w2)[:16])


def monomial_algebra(g: MonomialTruncation, fld) -> DegreewiseAlgebra:
    """gr^F A as an explicit degreewise algebra with the survivors as basis."""
    dims = [len(s) for s in g.surviving]
    index = [{m: i for i, m in enumerate(s)} for s in g.surviving]
    gen_action: list[list[np.ndarray]] = []
    for n in range(g.n_max):
        mats = []
        for gr in range(len(g.order)):
            mat = np.zeros((dims[n + 1], dims[n]), dtype=np.int64)
            xg = Monomial.generator(gr)
            for col, m in enumerate(g.surviving[n]):
                sign, prod = free_product(xg, m, g.mode, fld.l)
                if prod is not None and prod in index[n + 1]:
                    mat[index[n + 1][prod], col] = sign
            mats.append(mat)
        gen_action.append(mats)
    return DegreewiseAlgebra(
        fld, g.mode, g.order, g.n_max, dims, gen_action,
        basis_monomials=[list(s) for s in g.surviving], monomial=True,
    )


def module_surviving_monomials(a: DegreewiseAlgebra, subspace_bases: list[np.ndarray],
                               n: int) -> list[Monomial]:
    """Surviving monomials of a graded subspace M_n <= A_n under the induced
    filtration: m survives iff dim(M cap F_m) > dim(M cap F_(m-)).

    subspace_bases[n] has the basis rows of M_n in A_n coordinates.
    """
    p = a.fld.l
    mbasis = subspace_bases[n]
    dim_m = mbasis.shape[0]
    if dim_m == 0:
        return []
    filt = RowSpan(a.dims[n], p)
    out: list[Monomial] = []
    prev = 0
    for m in normal_monomials(a.order, n, a.mode):
        if prev == dim_m:
            break
        filt.add(a.monomial_value(m))
        # dim(M cap F) = dim M + dim F - dim(M + F)
        joint = RowSpan(a.dims[n], p)
        for row in mbasis:
            joint.add(row)
        for row in filt.matrix():
            joint.add(row)
        cur = dim_m + filt.dim - joint.dim
        if cur > prev:
            out.append(m)
            prev = cur
    return out


def check_module_generated_degree1(a: DegreewiseAlgebra,
                                   subspace_bases: list[np.ndarray]) -> tuple[bool, list[Monomial]]:
    """Is gr^F M generated over gr^F A by its degree-1 survivors?

    Each degree >= 2 module survivor must be a generator times a degree n-1
    module survivor.
    """
    n_top = len(subspace_bases) - 1
    surv = [set()] + [set(module_surviving_monomials(a, subspace_bases, n))
                      for n in range(1, n_top + 1)]
    witnesses = []
    for n in range(2, n_top + 1):
        for m in surv[n]:
            if not any(d in surv[n - 1] for d in divisors_degree(m, n - 1)):
                witnesses.append(m)
    witnesses.sort(key=Monomial.sort_key)
    return not witnesses, witnesses[:16]
