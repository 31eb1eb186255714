"""Dense linear algebra over the rationals.

Matrices are lists of rows; every entry is coerced to ``Fraction`` on the way
in, so results never depend on floating point.  Subspaces are stored in
canonical reduced row-echelon form, which makes equality a plain comparison
of basis tuples.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

Matrix = list  # list[list[Fraction]]
Vector = list  # list[Fraction]


class NotIdempotent(ValueError):
    """Raised when a matrix expected to satisfy p*p == p does not."""


def _q(x) -> Fraction:
    return x if type(x) is Fraction else Fraction(x)


def as_matrix(rows: Iterable[Iterable]) -> Matrix:
    return [[_q(x) for x in row] for row in rows]


def zeros(r: int, c: int) -> Matrix:
    return [[Fraction(0)] * c for _ in range(r)]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = Fraction(1)
    return m


def transpose(m: Matrix, cols: Optional[int] = None) -> Matrix:
    if not m:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*m)]


def matmul(a: Matrix, b: Matrix, cols: Optional[int] = None) -> Matrix:
    """a @ b; pass ``cols`` when b has no rows (inner dimension 0)."""
    if not a:
        return []
    if not b:
        return zeros(len(a), cols or 0)
    bt = transpose(b, len(b[0]))
    return [[sum((x * y for x, y in zip(row, col) if x), Fraction(0)) for col in bt] for row in a]


def matvec(a: Matrix, v: Sequence) -> Vector:
    return [sum((x * y for x, y in zip(row, v) if x), Fraction(0)) for row in a]


def _rref_inplace(m: Matrix, ncols: int) -> list[int]:
    pivots = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != 1:
            m[r] = [x / piv for x in m[r]]
        prow = m[r]
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f != 0:
                    row = m[i]
                    m[i] = [x - f * y for x, y in zip(row, prow)]
        pivots.append(c)
        r += 1
    return pivots


def rref_with_pivots(m: Matrix) -> tuple[Matrix, list[int]]:
    work = as_matrix(m)
    ncols = len(work[0]) if work else 0
    piv = _rref_inplace(work, ncols)
    return work, piv


def rref(m: Matrix) -> Matrix:
    """Reduced row-echelon form; zero rows are kept at the bottom."""
    return rref_with_pivots(m)[0]


def rank(m: Matrix) -> int:
    return len(rref_with_pivots(m)[1])


@dataclass(frozen=True)
class Subspace:
    ambient_dim: int
    basis: tuple  # tuple of tuples of Fraction, RREF rows

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple:
        return tuple(next(i for i, x in enumerate(row) if x != 0) for row in self.basis)

    def coordinates(self, v: Sequence) -> Optional[Vector]:
        """Coordinates of v in the canonical basis, or None if v is outside."""
        v = [Fraction(x) for x in v]
        coeffs = [v[p] for p in self.pivots]
        rebuilt = [Fraction(0)] * self.ambient_dim
        for c, row in zip(coeffs, self.basis):
            if c:
                for j, x in enumerate(row):
                    if x:
                        rebuilt[j] += c * x
        return coeffs if rebuilt == v else None

    def contains(self, v: Sequence) -> bool:
        return self.coordinates(v) is not None

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(row) for row in other.basis)

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim


def span(vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
    rows = [list(v) for v in vectors]
    if not rows:
        return Subspace(ambient_dim, ())
    r, piv = rref_with_pivots(rows)
    return Subspace(ambient_dim, tuple(tuple(r[i]) for i in range(len(piv))))


def subspace_equal(u: Subspace, v: Subspace) -> bool:
    return u.ambient_dim == v.ambient_dim and u.basis == v.basis


def kernel(m: Matrix, cols: Optional[int] = None) -> Subspace:
    """Null space {x : m x = 0}."""
    ncols = len(m[0]) if m else (cols or 0)
    if not m:
        return span((row for row in identity(ncols)), ncols)
    r, piv = rref_with_pivots(m)
    free = [c for c in range(ncols) if c not in piv]
    vecs = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(piv):
            v[p] = -r[i][f]
        vecs.append(v)
    return span(vecs, ncols)


def image(m: Matrix) -> Subspace:
    """Column space of m."""
    nrows = len(m)
    return span(transpose(m), nrows) if m and m[0] else Subspace(nrows, ())


def solve(m: Matrix, b: Sequence) -> Optional[tuple[Vector, bool]]:
    """Some x with m x = b and a flag telling whether x is unique."""
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    aug = [list(row) + [Fraction(bi)] for row, bi in zip(as_matrix(m), b)]
    if nrows == 0:
        return ([Fraction(0)] * ncols, ncols == 0)
    piv = _rref_inplace(aug, ncols + 1)
    if ncols in piv:
        return None
    x = [Fraction(0)] * ncols
    for i, p in enumerate(piv):
        x[p] = aug[i][ncols]
    return x, len(piv) == ncols


def split_idempotent(p: Matrix) -> tuple[Matrix, Matrix]:
    """Factor an idempotent p as injection @ surjection through its image."""
    p = as_matrix(p)
    if matmul(p, p) != p:
        raise NotIdempotent("p*p != p")
    n = len(p)
    im = image(p)
    inj = transpose([list(row) for row in im.basis], n) if im.dim else [[] for _ in range(n)]
    surj = [list(p[piv]) for piv in im.pivots]
    return inj, surj
