"""Exact linear algebra over prime fields F_l.

Everything here is deterministic integer arithmetic mod l.  Dense work is
done on numpy int64 arrays; the sparse path keeps rows as dicts and is only
worth it above a size threshold (small matrices are faster dense).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

DENSE_THRESHOLD = 64


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """The coefficient field Z/l for a prime l."""

    l: int

    def __post_init__(self) -> None:
        if not _is_prime(self.l):
            raise ValueError(f"modulus {self.l} is not prime")

    def inv(self, a: int) -> int:
        a %= self.l
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_l")
        return pow(a, self.l - 2, self.l)


def as_array(data, p: int) -> np.ndarray:
    a = np.asarray(data, dtype=np.int64) % p
    if a.ndim == 1:
        a = a.reshape(1, -1)
    return a


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p.  Returns (rref matrix, pivot columns).

    Zero rows are dropped from the result.
    """
    a = np.array(a, dtype=np.int64) % p
    m, n = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        col = a[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = (a[r] * pow(int(a[r, c]), p - 2, p)) % p
        rows = np.nonzero(a[:, c])[0]
        rows = rows[rows != r]
        if rows.size:
            a[rows] = (a[rows] - np.outer(a[rows, c], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    return rref(a, p)[0].shape[0]


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Right kernel of a: rows of the result v satisfy a @ v = 0 mod p."""
    a = np.asarray(a, dtype=np.int64)
    m, n = a.shape
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if m == 0:
        return np.eye(n, dtype=np.int64)
    red, pivots = rref(a, p)
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for k, c in enumerate(free):
        basis[k, c] = 1
        for r, pc in enumerate(pivots):
            basis[k, pc] = (-int(red[r, c])) % p
    return basis


def solve_combination(rows: np.ndarray, v: np.ndarray, p: int) -> np.ndarray | None:
    """Coefficients x with x @ rows = v mod p, or None if v is not in the span."""
    rows = np.asarray(rows, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64) % p
    if rows.shape[0] == 0:
        return np.zeros(0, dtype=np.int64) if not v.any() else None
    aug = np.concatenate([rows.T, v.reshape(-1, 1)], axis=1)
    red, pivots = rref(aug, p)
    k = rows.shape[0]
    if k in pivots:
        return None
    x = np.zeros(k, dtype=np.int64)
    for r, pc in enumerate(pivots):
        x[pc] = int(red[r, k])
    return x


def inverse(a: np.ndarray, p: int) -> np.ndarray:
    """Inverse of a square matrix mod p; raises on singular input."""
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[0]
    aug = np.concatenate([a % p, np.eye(n, dtype=np.int64)], axis=1)
    red, pivots = rref(aug, p)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular mod p")
    return red[:, n:]


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One solution x of a @ x = b mod p, or None."""
    return solve_combination(np.asarray(a, dtype=np.int64).T, b, p)


class RowSpan:
    """Incremental row space mod p, kept in reduced echelon form."""

    def __init__(self, ncols: int, p: int):
        self.p = p
        self.ncols = ncols
        self.rows: list[np.ndarray] = []
        self.pivot_of_row: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.rows)

    def residual(self, v: np.ndarray) -> np.ndarray:
        p = self.p
        v = np.asarray(v, dtype=np.int64) % p
        for row, pc in zip(self.rows, self.pivot_of_row):
            if v[pc]:
                v = (v - int(v[pc]) * row) % p
        return v

    def contains(self, v: np.ndarray) -> bool:
        return not self.residual(v).any()

    def add(self, v: np.ndarray) -> bool:
        """Add v to the span; True iff the dimension grew."""
        p = self.p
        res = self.residual(v)
        nz = np.nonzero(res)[0]
        if nz.size == 0:
            return False
        pc = int(nz[0])
        res = (res * pow(int(res[pc]), p - 2, p)) % p
        for i, row in enumerate(self.rows):
            if row[pc]:
                self.rows[i] = (row - int(row[pc]) * res) % p
        self.rows.append(res)
        self.pivot_of_row.append(pc)
        return True

    def matrix(self) -> np.ndarray:
        if not self.rows:
            return np.zeros((0, self.ncols), dtype=np.int64)
        return np.array(self.rows, dtype=np.int64)


@dataclass(frozen=True)
class SparseMatrixGF:
    """Sparse matrix over F_l as a list of (row, col, value) triples.

    No duplicate positions and no explicit zeros are stored.
    """

    field: PrimeField
    rows: int
    cols: int
    entries: tuple[tuple[int, int, int], ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimensions")
        seen = set()
        for i, j, v in self.entries:
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise ValueError(f"entry ({i},{j}) out of range")
            if (i, j) in seen:
                raise ValueError(f"duplicate entry at ({i},{j})")
            if v % self.field.l == 0:
                raise ValueError(f"stored zero at ({i},{j})")
            seen.add((i, j))

    @classmethod
    def from_dense(cls, data, fld: PrimeField) -> "SparseMatrixGF":
        a = as_array(data, fld.l)
        entries = tuple(
            (int(i), int(j), int(a[i, j]))
            for i, j in zip(*np.nonzero(a))
        )
        return cls(fld, a.shape[0], a.shape[1], entries)

    def to_dense(self) -> np.ndarray:
        a = np.zeros((self.rows, self.cols), dtype=np.int64)
        for i, j, v in self.entries:
            a[i, j] = v % self.field.l
        return a

    def transpose(self) -> "SparseMatrixGF":
        return SparseMatrixGF(
            self.field, self.cols, self.rows,
            tuple((j, i, v) for i, j, v in self.entries),
        )

    def rank(self) -> int:
        return sparse_rank(self)

    def kernel_basis(self) -> list[np.ndarray]:
        return kernel_basis(self)

    def in_row_space(self, v) -> bool:
        return in_row_space(self, v)

    def _row_dicts(self) -> list[dict[int, int]]:
        rows: list[dict[int, int]] = [dict() for _ in range(self.rows)]
        for i, j, v in self.entries:
            rows[i][j] = v % self.field.l
        return rows


def _sparse_rank(m: SparseMatrixGF) -> int:
    p = m.field.l
    rows = [r for r in m._row_dicts() if r]
    rnk = 0
    # pivot columns in ascending order; among candidate rows prefer the
    # shortest (Markowitz-style) to limit fill-in
    for c in range(m.cols):
        cand = [i for i, r in enumerate(rows) if c in r]
        if not cand:
            continue
        piv = min(cand, key=lambda i: len(rows[i]))
        prow = rows.pop(piv)
        inv = pow(prow[c], p - 2, p)
        prow = {j: (v * inv) % p for j, v in prow.items()}
        nxt = []
        for r in rows:
            f = r.get(c)
            if f:
                r = dict(r)
                for j, v in prow.items():
                    w = (r.get(j, 0) - f * v) % p
                    if w:
                        r[j] = w
                    else:
                        r.pop(j, None)
            if r:
                nxt.append(r)
        rows = nxt
        rnk += 1
        if not rows:
            break
    return rnk


def sparse_rank(m: SparseMatrixGF, dense_threshold: int = DENSE_THRESHOLD) -> int:
    """Rank of m over F_l; falls back to dense elimination when small."""
    if m.rows == 0 or m.cols == 0:
        return 0
    if m.rows <= dense_threshold and m.cols <= dense_threshold:
        return rank(m.to_dense(), m.field.l)
    return _sparse_rank(m)


def kernel_basis(m: SparseMatrixGF) -> list[np.ndarray]:
    """Basis of the right kernel of m; len = cols - rank."""
    ns = nullspace(m.to_dense(), m.field.l)
    return [ns[i] for i in range(ns.shape[0])]


def in_row_space(m: SparseMatrixGF, v) -> bool:
    """True iff v lies in the F_l-span of the rows of m."""
    v = np.asarray(v, dtype=np.int64)
    if v.shape != (m.cols,):
        raise ValueError(f"vector has {v.shape} entries, matrix has {m.cols} cols")
    return solve_combination(m.to_dense(), v, m.field.l) is not None
