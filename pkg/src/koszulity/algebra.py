"""Quadratic (super)commutative algebras over F_l and their degreewise form.

A presentation holds quadratic relations in the free commutative or free
supercommutative algebra on an ordered generator list.  Expanding it degree
by degree produces explicit bases (as subsets of normal monomials) together
with the generator multiplication maps, which is the form all downstream
machinery (filtrations, bar homology) consumes.  Degreewise algebras can
also be built directly, e.g. from synthesized multiplication data.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from . import gf
from .gf import PrimeField, RowSpan
from .monomials import GeneratorOrder, Monomial, mono_enumerate, mono_mul


class SymmetryMode(enum.Enum):
    COMMUTATIVE = "comm"
    SUPERCOMMUTATIVE = "super"


def normal_monomials(order: GeneratorOrder, degree: int, mode: SymmetryMode) -> list[Monomial]:
    """Normal-form monomial basis of the free algebra in the given degree."""
    return mono_enumerate(order, degree, squarefree=(mode is SymmetryMode.SUPERCOMMUTATIVE))


def free_product(a: Monomial, b: Monomial, mode: SymmetryMode, p: int) -> tuple[int, Monomial | None]:
    """Product a*b in the free (super)commutative algebra: (sign, monomial).

    Returns (0, None) when the product vanishes (repeated generator in
    supercommutative mode).
    """
    if mode is SymmetryMode.SUPERCOMMUTATIVE:
        if set(a.ranks()) & set(b.ranks()):
            return 0, None
        # count transpositions needed to merge the two ascending words
        bw = b.word()
        inversions = sum(1 for ra in a.word() for rb in bw if ra > rb)
        sign = (-1) ** inversions % p
        return sign, mono_mul(a, b)
    return 1, mono_mul(a, b)


@dataclass
class QuadraticPresentation:
    """Quadratic algebra: generators plus degree-2 relations.

    Relations are linear combinations of normal quadratic monomials, kept in
    reduced row echelon form with pivots on the invlex-largest monomials.
    """

    fld: PrimeField
    mode: SymmetryMode
    order: GeneratorOrder
    relations: np.ndarray = None  # shape (num_relations, num_quadratics)

    def __post_init__(self) -> None:
        quad = normal_monomials(self.order, 2, self.mode)
        self._quad = quad
        nq = len(quad)
        if self.relations is None:
            self.relations = np.zeros((0, nq), dtype=np.int64)
        rel = gf.as_array(self.relations, self.fld.l) if np.size(self.relations) else \
            np.zeros((0, nq), dtype=np.int64)
        if rel.shape[0] and rel.shape[1] != nq:
            raise ValueError("relation vectors must be indexed by normal quadratics")
        self.relations = _echelon_descending(rel, self.fld.l)

    @property
    def quadratic_monomials(self) -> list[Monomial]:
        return self._quad

    @classmethod
    def from_combos(cls, fld, mode, order, combos: list[dict[Monomial, int]]):
        quad = normal_monomials(order, 2, mode)
        idx = {m: i for i, m in enumerate(quad)}
        rel = np.zeros((len(combos), len(quad)), dtype=np.int64)
        for r, combo in enumerate(combos):
            for m, c in combo.items():
                if m not in idx:
                    raise ValueError(f"{m} is not a normal quadratic monomial")
                rel[r, idx[m]] = c % fld.l
        return cls(fld, mode, order, rel)

    def relation_span(self, n: int) -> np.ndarray:
        """Degree-n span of the relation ideal, as rows over normal monomials."""
        monos = normal_monomials(self.order, n, self.mode)
        idx = {m: i for i, m in enumerate(monos)}
        if n < 2 or not self.relations.shape[0]:
            return np.zeros((0, len(monos)), dtype=np.int64)
        lower = normal_monomials(self.order, n - 2, self.mode)
        rows = []
        for m in lower:
            for rel in self.relations:
                row = np.zeros(len(monos), dtype=np.int64)
                for j, coef in enumerate(rel):
                    if coef:
                        sign, prod = free_product(m, self._quad[j], self.mode, self.fld.l)
                        if prod is not None:
                            row[idx[prod]] = (row[idx[prod]] + sign * coef) % self.fld.l
                if row.any():
                    rows.append(row)
        if not rows:
            return np.zeros((0, len(monos)), dtype=np.int64)
        return np.array(rows, dtype=np.int64)

    def component(self, n: int) -> "DegreeComponent":
        """Basis of A_n (as normal monomials) plus the projection map."""
        monos = normal_monomials(self.order, n, self.mode)
        span = _echelon_descending(self.relation_span(n), self.fld.l)
        return DegreeComponent.from_echelon(monos, span, self.fld.l)


def _echelon_descending(rows: np.ndarray, p: int) -> np.ndarray:
    """RREF with column priority = descending invlex (pivots on largest monomials)."""
    if rows.shape[0] == 0:
        return rows
    red, _ = gf.rref(rows[:, ::-1], p)
    return red[:, ::-1]


@dataclass
class DegreeComponent:
    monomials: list[Monomial]          # all normal monomials of the degree
    basis: list[int]                   # indices of monomials forming the basis
    projection: np.ndarray             # shape (len(monomials), dim)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def basis_monomials(self) -> list[Monomial]:
        return [self.monomials[i] for i in self.basis]

    @classmethod
    def from_echelon(cls, monos, echelon: np.ndarray, p: int) -> "DegreeComponent":
        nm = len(monos)
        # pivots sit on the invlex-largest monomial of each relation row
        pivots = []
        for row in echelon:
            nz = np.nonzero(row)[0]
            pivots.append(int(nz[-1]))
        pivset = set(pivots)
        basis = [i for i in range(nm) if i not in pivset]
        pos = {i: k for k, i in enumerate(basis)}
        proj = np.zeros((nm, len(basis)), dtype=np.int64)
        for i in basis:
            proj[i, pos[i]] = 1
        for r, pc in enumerate(pivots):
            for c in range(nm):
                if c != pc and echelon[r, c]:
                    proj[pc] = (proj[pc] - int(echelon[r, c]) * proj[c]) % p
        return cls(list(monos), basis, proj)


def presentation_to_json(pres: QuadraticPresentation) -> dict:
    """Presentation as a plain dict: generators plus relation term lists."""
    rels = []
    for row in pres.relations:
        rels.append([
            {"mono": pres.quadratic_monomials[j].to_string(pres.order),
             "coef": int(c)}
            for j, c in enumerate(row) if c
        ])
    return {
        "l": pres.fld.l,
        "mode": pres.mode.value,
        "generators": list(pres.order.names),
        "relations": rels,
    }


def presentation_from_json(obj: dict) -> QuadraticPresentation:
    fld = PrimeField(int(obj["l"]))
    mode = SymmetryMode(obj["mode"])
    order = GeneratorOrder(tuple(obj["generators"]))
    combos: list[dict[Monomial, int]] = []
    for rel in obj["relations"]:
        combo: dict[Monomial, int] = {}
        for term in rel:
            m = Monomial.parse(term["mono"], order)
            if m.degree != 2:
                raise ValueError(f"relation term {term['mono']!r} is not quadratic")
            combo[m] = (combo.get(m, 0) + int(term["coef"])) % fld.l
        combos.append(combo)
    return QuadraticPresentation.from_combos(fld, mode, order, combos)


@dataclass
class DegreewiseAlgebra:
    """Graded algebra given degree by degree through a truncation bound.

    dims[n] is dim A_n; gen_action[n][g] is the matrix of left multiplication
    by generator g from A_n to A_{n+1}.  A_0 = k and A_1 has the generators
    as its basis, in order.  When the algebra is genuinely monomial (products
    of basis monomials are +-monomial or zero) monomial_basis carries the
    basis monomial of each basis vector, which enables the multigraded
    homology fast path.
    """

    fld: PrimeField
    mode: SymmetryMode
    order: GeneratorOrder
    n_max: int
    dims: list[int]
    gen_action: list[list[np.ndarray]]  # [n][g] -> (dims[n+1], dims[n])
    basis_monomials: list[list[Monomial]] | None = None
    monomial: bool = False
    _word_cache: dict = field(default_factory=dict, repr=False)
    _mult_cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if self.dims[0] != 1:
            raise ValueError("dim A_0 must be 1")
        if self.dims[1] != len(self.order):
            raise ValueError("A_1 must have the generators as a basis")

    @property
    def num_generators(self) -> int:
        return len(self.order)

    def apply_generator(self, g: int, n: int, vec: np.ndarray) -> np.ndarray:
        if n == 0:
            return (np.eye(self.num_generators, dtype=np.int64)[g] * int(vec[0])) % self.fld.l
        return (self.gen_action[n][g] @ vec) % self.fld.l

    def monomial_value(self, mono: Monomial) -> np.ndarray:
        """Value of a generator-word monomial in A_(deg mono)."""
        word = mono.word()
        if not word:
            return np.ones(1, dtype=np.int64)
        v = np.zeros(self.dims[1], dtype=np.int64)
        v[word[-1]] = 1
        d = 1
        for g in reversed(word[:-1]):
            v = self.apply_generator(g, d, v)
            d += 1
        return v

    def word_basis(self, n: int) -> tuple[list[Monomial], np.ndarray]:
        """Invlex-least monomial words whose values form a basis of A_n."""
        if n in self._word_cache:
            return self._word_cache[n]
        span = RowSpan(self.dims[n], self.fld.l)
        words: list[Monomial] = []
        vals: list[np.ndarray] = []
        for mono in normal_monomials(self.order, n, self.mode):
            if span.dim == self.dims[n]:
                break
            v = self.monomial_value(mono)
            if span.add(v):
                words.append(mono)
                vals.append(v)
        if span.dim != self.dims[n]:
            raise ValueError(f"A_{n} is not generated in degree 1")
        mat = np.array(vals, dtype=np.int64) if vals else np.zeros((0, self.dims[n]), dtype=np.int64)
        self._word_cache[n] = (words, mat)
        return self._word_cache[n]

    def right_mul_generator(self, vec: np.ndarray, n: int, g: int) -> np.ndarray:
        """vec * x_g for vec in A_n."""
        out = self.apply_generator(g, n, vec)
        if self.mode is SymmetryMode.SUPERCOMMUTATIVE and n % 2 == 1:
            out = (-out) % self.fld.l
        return out

    def element_product(self, u: np.ndarray, n: int, v: np.ndarray, m: int) -> np.ndarray:
        """Product of u in A_n and v in A_m, landing in A_(n+m)."""
        if n + m > self.n_max:
            raise ValueError("degree overflow past the truncation bound")
        if m == 0:
            return (u * int(v[0])) % self.fld.l
        if n == 0:
            return (v * int(u[0])) % self.fld.l
        words, mat = self.word_basis(m)
        coeffs = gf.solve_combination(mat, v, self.fld.l)
        out = np.zeros(self.dims[n + m], dtype=np.int64)
        for w, c in zip(words, coeffs):
            if not c:
                continue
            r = u
            d = n
            for g in w.word():
                r = self.right_mul_generator(r, d, g)
                d += 1
            out = (out + int(c) * r) % self.fld.l
        return out

    def mult_matrix(self, d: int, e: int) -> np.ndarray:
        """Matrix of A_d x A_e -> A_(d+e); column index = i_d * dims[e] + i_e."""
        key = (d, e)
        if key in self._mult_cache:
            return self._mult_cache[key]
        rows, cols = self.dims[d + e], self.dims[d] * self.dims[e]
        out = np.zeros((rows, cols), dtype=np.int64)
        eye_d = np.eye(self.dims[d], dtype=np.int64)
        eye_e = np.eye(self.dims[e], dtype=np.int64)
        for i in range(self.dims[d]):
            for j in range(self.dims[e]):
                out[:, i * self.dims[e] + j] = self.element_product(eye_d[i], d, eye_e[j], e)
        self._mult_cache[key] = out
        return out


def degreewise_expand(p: QuadraticPresentation, n_max: int) -> DegreewiseAlgebra:
    """Expand a presentation into explicit bases and generator actions."""
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    comps = [p.component(n) for n in range(n_max + 1)]
    dims = [c.dim for c in comps]
    ngen = len(p.order)
    gen_action: list[list[np.ndarray]] = []
    for n in range(n_max):
        mats = []
        lo, hi = comps[n], comps[n + 1]
        hi_idx = {m: i for i, m in enumerate(hi.monomials)}
        for g in range(ngen):
            mat = np.zeros((hi.dim, lo.dim), dtype=np.int64)
            xg = Monomial.generator(g)
            for col, bi in enumerate(lo.basis):
                sign, prod = free_product(xg, lo.monomials[bi], p.mode, p.fld.l)
                if prod is not None:
                    mat[:, col] = (sign * hi.projection[hi_idx[prod]]) % p.fld.l
            mats.append(mat)
        gen_action.append(mats)
    return DegreewiseAlgebra(
        p.fld, p.mode, p.order, n_max, dims, gen_action,
        basis_monomials=[c.basis_monomials for c in comps],
    )


def free_algebra(fld: PrimeField, mode: SymmetryMode, order: GeneratorOrder,
                 n_max: int) -> DegreewiseAlgebra:
    a = degreewise_expand(QuadraticPresentation(fld, mode, order), n_max)
    a.monomial = True
    return a


@dataclass
class ModuleTruncation:
    """Positively graded module truncation with generator action matrices.

    dims[n] is dim M_n for 1 <= n <= n_max (dims[0] = 0); action[n][g] maps
    M_n to M_(n+1).  The acting algebra is `algebra`.
    """

    algebra: DegreewiseAlgebra
    dims: list[int]
    action: list[list[np.ndarray]]
    basis_monomials: list[list[Monomial]] | None = None
    monomial: bool = False

    @property
    def n_max(self) -> int:
        return len(self.dims) - 1

    def apply_generator(self, g: int, n: int, vec: np.ndarray) -> np.ndarray:
        return (self.action[n][g] @ vec) % self.algebra.fld.l

    def action_matrix(self, d: int, n: int) -> np.ndarray:
        """Matrix of A_d x M_n -> M_(n+d); column index = i_d * dims[n] + i_n."""
        a = self.algebra
        p = a.fld.l
        out = np.zeros((self.dims[n + d], a.dims[d] * self.dims[n]), dtype=np.int64)
        if d == 0:
            return np.eye(self.dims[n], dtype=np.int64)
        words, mat = a.word_basis(d)
        eye = np.eye(a.dims[d], dtype=np.int64)
        for i in range(a.dims[d]):
            coeffs = gf.solve_combination(mat, eye[i], p)
            block = np.zeros((self.dims[n + d], self.dims[n]), dtype=np.int64)
            for w, c in zip(words, coeffs):
                if not c:
                    continue
                # left action of the word g1 g2 ... gd: apply gd first
                m = np.eye(self.dims[n], dtype=np.int64)
                deg = n
                for g in reversed(w.word()):
                    m = (self.action[deg][g] @ m) % p
                    deg += 1
                block = (block + int(c) * m) % p
            out[:, i * self.dims[n]:(i + 1) * self.dims[n]] = block
        return out


def augmentation_module(a: DegreewiseAlgebra, b: DegreewiseAlgebra) -> ModuleTruncation:
    """A_+ as a module over b, acting through the shared generator list."""
    if a.order.names != b.order.names:
        raise ValueError("generator lists differ")
    n_max = min(a.n_max, b.n_max)
    dims = [0] + [a.dims[n] for n in range(1, n_max + 1)]
    action = [None] + [a.gen_action[n] for n in range(1, n_max)]
    mono = a.basis_monomials
    return ModuleTruncation(
        b, dims, action,
        basis_monomials=[[]] + [mono[n] for n in range(1, n_max + 1)] if mono else None,
        monomial=a.monomial and b.monomial,
    )


def ideal_module(a: DegreewiseAlgebra, c: np.ndarray) -> ModuleTruncation:
    """The principal ideal c*A as a graded module over a, with M_1 = span(c)."""
    p = a.fld.l
    c = np.asarray(c, dtype=np.int64) % p
    if not c.any():
        raise ValueError("c must be a nonzero degree-1 element")

    def times_c(vec: np.ndarray, n: int) -> np.ndarray:
        out = np.zeros(a.dims[n + 1], dtype=np.int64)
        for g in range(a.num_generators):
            if c[g]:
                out = (out + int(c[g]) * a.apply_generator(g, n, vec)) % p
        return out

    bases: list[np.ndarray] = [np.zeros((0, 1), dtype=np.int64)]
    bases.append(c.reshape(1, -1))
    for n in range(2, a.n_max + 1):
        span = RowSpan(a.dims[n], p)
        eye = np.eye(a.dims[n - 1], dtype=np.int64)
        for i in range(a.dims[n - 1]):
            span.add(times_c(eye[i], n - 1))
        bases.append(span.matrix())
    dims = [0] + [b.shape[0] for b in bases[1:]]
    action: list[list[np.ndarray] | None] = [None]
    for n in range(1, a.n_max):
        mats = []
        for g in range(a.num_generators):
            mat = np.zeros((dims[n + 1], dims[n]), dtype=np.int64)
            for col in range(dims[n]):
                img = a.apply_generator(g, n, bases[n][col])
                coeffs = gf.solve_combination(bases[n + 1], img, p)
                if coeffs is None:
                    raise ValueError("ideal not closed under the generator action")
                mat[:, col] = coeffs
            mats.append(mat)
        action.append(mats)
    m = ModuleTruncation(a, dims, action)
    m.subspace_bases = bases
    return m
