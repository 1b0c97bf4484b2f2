"""Immutable dense integer matrices."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


@dataclass(frozen=True)
class IntegerMatrix:
    """Dense matrix of Python ints stored row-major.

    Zero rows or zero columns are allowed and mean "no relations" or
    "no generators".
    """

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in self.entries):
            raise TypeError("IntegerMatrix entries must be ints")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int | None = None) -> "IntegerMatrix":
        data = [tuple(int(x) for x in r) for r in rows]
        if cols is None:
            if not data:
                raise ValueError("column count is required for a matrix with no rows")
            cols = len(data[0])
        for r in data:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(data), cols, tuple(x for r in data for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def diagonal(cls, diag: Sequence[int], rows: int | None = None, cols: int | None = None):
        rows = len(diag) if rows is None else rows
        cols = len(diag) if cols is None else cols
        out = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(diag):
            out[i][i] = d
        return cls.from_rows(out, cols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(idx)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def tolist(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix.from_rows([self.column(j) for j in range(self.cols)], self.rows)

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = [other.column(j) for j in range(other.cols)]
        return IntegerMatrix.from_rows(
            [[sum(a * b for a, b in zip(self.row(i), c)) for c in cols] for i in range(self.rows)],
            other.cols,
        )

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        """Row vector times matrix: ``v @ self``."""
        if len(v) != self.rows:
            raise ValueError("vector length must equal the row count")
        return tuple(sum(v[i] * self[i, j] for i in range(self.rows)) for j in range(self.cols))

    def vstack(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.cols:
            raise ValueError("column counts differ")
        return IntegerMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def inverse(self) -> "IntegerMatrix":
        """Exact inverse of a unimodular matrix; ``ValueError`` otherwise."""
        n = self.rows
        if n != self.cols:
            raise ValueError("inverse of a non-square matrix")
        aug = [[Fraction(x) for x in self.row(i)] + [Fraction(int(i == j)) for j in range(n)]
               for i in range(n)]
        for c in range(n):
            p = next((r for r in range(c, n) if aug[r][c] != 0), None)
            if p is None:
                raise ValueError("matrix is singular")
            aug[c], aug[p] = aug[p], aug[c]
            pv = aug[c][c]
            aug[c] = [x / pv for x in aug[c]]
            for r in range(n):
                if r != c and aug[r][c] != 0:
                    f = aug[r][c]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
        inv = [row[n:] for row in aug]
        if any(x.denominator != 1 for row in inv for x in row):
            raise ValueError("matrix is not invertible over Z")
        return IntegerMatrix.from_rows([[int(x) for x in row] for row in inv], n)

    def __str__(self) -> str:
        if self.rows == 0:
            return f"[] ({self.rows}x{self.cols})"
        width = max(len(str(x)) for x in self.entries) if self.entries else 1
        return "\n".join(
            "[" + " ".join(str(x).rjust(width) for x in self.row(i)) + "]" for i in range(self.rows)
        )


def as_matrix(m, cols: int | None = None) -> IntegerMatrix:
    """Accept an ``IntegerMatrix`` or a nested sequence of ints."""
    if isinstance(m, IntegerMatrix):
        return m
    return IntegerMatrix.from_rows(m, cols)
