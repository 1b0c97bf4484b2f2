"""Hermite and Smith normal forms, lattice tests, exact determinants.

Lattices are row lattices: the Z-span of the rows of a matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import _backend
from .matrix import IntegerMatrix, as_matrix


@dataclass(frozen=True)
class SmithDecomposition:
    """``u @ a @ v == s`` with ``u``, ``v`` unimodular and ``s`` in Smith form."""

    u: IntegerMatrix
    s: IntegerMatrix
    v: IntegerMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.s[i, i] for i in range(min(self.s.rows, self.s.cols)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        """Nonzero diagonal entries other than 1."""
        return tuple(d for d in self.diagonal if d > 1)

    def check(self, a: IntegerMatrix) -> bool:
        """Verify every defining property against the source matrix ``a``."""
        if self.u @ a @ self.v != self.s:
            return False
        if abs(determinant(self.u)) != 1 or abs(determinant(self.v)) != 1:
            return False
        for i in range(self.s.rows):
            for j in range(self.s.cols):
                if i != j and self.s[i, j]:
                    return False
        diag = self.diagonal
        if any(d < 0 for d in diag):
            return False
        for x, y in zip(diag, diag[1:]):
            if x == 0 and y != 0:
                return False
            if y and y % x:
                return False
        return True


def hnf(m, keep_zero_rows: bool = False) -> IntegerMatrix:
    """Row-style Hermite normal form of the row lattice of ``m``.

    Upper triangular, positive pivots, entries above each pivot reduced into
    ``[0, pivot)``. By default only the nonzero rows (a basis of the lattice)
    are returned; ``keep_zero_rows`` pads back to the input shape.
    """
    m = as_matrix(m)
    rows = _backend.hnf_rows(m.tolist(), m.cols)
    out = IntegerMatrix.from_rows(rows, m.cols)
    if keep_zero_rows and out.rows < m.rows:
        out = out.vstack(IntegerMatrix.zeros(m.rows - out.rows, m.cols))
    return out


def snf(m) -> SmithDecomposition:
    m = as_matrix(m)
    u, s, v = _backend.snf_triple(m.tolist(), m.rows, m.cols)
    return SmithDecomposition(
        IntegerMatrix.from_rows(u, m.rows),
        IntegerMatrix.from_rows(s, m.cols),
        IntegerMatrix.from_rows(v, m.cols),
    )


def determinant(m) -> int:
    m = as_matrix(m)
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    return _backend.det_bareiss(m.tolist())


def is_unimodular(m) -> bool:
    m = as_matrix(m)
    if m.rows != m.cols:
        raise ValueError("is_unimodular needs a square matrix")
    return abs(determinant(m)) == 1


def lattice_equal(a, b) -> bool:
    a, b = as_matrix(a), as_matrix(b)
    if a.cols != b.cols:
        raise ValueError("lattices live in different ambient ranks")
    return hnf(a) == hnf(b)


def lattice_member(v: Sequence[int], a) -> bool:
    """Decide ``v`` in the row lattice of ``a`` by back-substitution on its HNF."""
    a = as_matrix(a, len(v))
    if len(v) != a.cols:
        raise ValueError("vector length must equal the column count")
    w = list(v)
    h = hnf(a)
    for i in range(h.rows):
        row = h.row(i)
        p = next(j for j, x in enumerate(row) if x)
        if any(w[j] for j in range(p)):
            return False
        q, r = divmod(w[p], row[p])
        if r:
            return False
        if q:
            w = [x - q * y for x, y in zip(w, row)]
    return not any(w)


def right_kernel(m) -> IntegerMatrix:
    """Rows spanning ``{x in Z^cols : m x = 0}``."""
    m = as_matrix(m)
    dec = snf(m)
    r = dec.rank
    vt = dec.v.transpose()
    return IntegerMatrix.from_rows([vt.row(j) for j in range(r, m.cols)], m.cols)


def solve_in_basis(v: Sequence[int], basis) -> tuple[Fraction, ...]:
    """Rational coefficients ``x`` with ``x @ basis == v``.

    ``basis`` must have linearly independent rows; ``ValueError`` if ``v``
    is outside their rational span.
    """
    basis = as_matrix(basis, len(v))
    k, n = basis.rows, basis.cols
    # solve basis^T x = v by Gauss-Jordan on the augmented system
    aug = [[Fraction(basis[j, i]) for j in range(k)] + [Fraction(v[i])] for i in range(n)]
    pivots = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, n) if aug[i][c] != 0), None)
        if p is None:
            raise ValueError("basis rows are linearly dependent")
        aug[r], aug[p] = aug[p], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    if any(aug[i][k] != 0 for i in range(r, n)):
        raise ValueError("vector is not in the span of the basis")
    return tuple(aug[i][k] for i in range(k))
