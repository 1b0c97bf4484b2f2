"""Finitely generated abelian groups presented by generators and relations."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Sequence

from .matrix import IntegerMatrix, as_matrix
from .normal_forms import SmithDecomposition, snf


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def render_linear(coeffs: Sequence[int], labels: Sequence[str]) -> str:
    """``[2, -1, 0]`` over ``a1, a2p, b2p`` renders as ``2*a1 - a2p``."""
    parts = []
    for c, name in zip(coeffs, labels):
        if not c:
            continue
        mag = abs(c)
        term = name if mag == 1 else f"{mag}*{name}"
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(f"+ {term}" if c > 0 else f"- {term}")
    return " ".join(parts) if parts else "0"


def render_cyclic(orders: Sequence[int]) -> str:
    """Render a list of cyclic orders (0 meaning Z) in the given order."""
    parts = ["Z" if d == 0 else f"Z/{d}" for d in orders if d != 1]
    return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class AbelianGroup:
    """``Z^free_rank + Z/d1 + ... + Z/dk`` with ``d1 | d2 | ... | dk``.

    Cyclic factors are ordered free summands first, then torsion; the
    ``generators`` labels follow the same order. Equality compares the
    abstract group only.
    """

    free_rank: int
    torsion: tuple[int, ...] = ()
    generators: tuple[str, ...] = field(default=(), compare=False)
    generator_vectors: tuple[tuple[int, ...], ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        if any(d < 2 for d in self.torsion):
            raise ValueError("torsion invariant factors must be >= 2")
        for x, y in zip(self.torsion, self.torsion[1:]):
            if y % x:
                raise ValueError(f"invariant factors {self.torsion} do not form a divisibility chain")
        if self.generators and len(self.generators) != self.free_rank + len(self.torsion):
            raise ValueError("need one generator label per cyclic factor")

    @classmethod
    def from_cyclic_orders(cls, orders: Sequence[int]) -> "AbelianGroup":
        """Canonicalize a direct sum of cyclic groups; ``0`` stands for Z."""
        free = sum(1 for d in orders if d == 0)
        finite = [abs(d) for d in orders if d not in (0, 1, -1)]
        if not finite:
            return cls(free)
        dec = snf(IntegerMatrix.diagonal(finite))
        return cls(free, dec.invariant_factors)

    @property
    def cyclic_orders(self) -> tuple[int, ...]:
        return (0,) * self.free_rank + self.torsion

    @property
    def order(self) -> int | None:
        """Group order, or ``None`` when infinite."""
        return None if self.free_rank else prod(self.torsion)

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def elementary_divisors(self) -> tuple[int, ...]:
        out = []
        for d in self.torsion:
            out.extend(p ** e for p, e in sorted(_factorize(d).items()))
        return tuple(sorted(out))

    def count_killed_by(self, m: int) -> int:
        """Number of torsion elements ``x`` with ``m x = 0`` (free part ignored)."""
        from math import gcd

        return prod(gcd(m, d) for d in self.torsion)

    def render(self) -> str:
        return render_cyclic(self.cyclic_orders)

    def render_primary(self) -> str:
        return render_cyclic((0,) * self.free_rank + self.elementary_divisors())

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class QuotientMap:
    """The quotient ``Z^n / <relations>`` together with its coordinates.

    ``basis_change`` is the right Smith factor ``V``: a row vector ``x`` in
    the original generators has coordinates ``x @ V`` on the Smith basis,
    whose ``columns[i]``-th entry is the coordinate on cyclic factor ``i`` of
    ``group`` (reduced modulo its order when finite).
    """

    group: AbelianGroup
    smith: SmithDecomposition
    basis_change: IntegerMatrix
    columns: tuple[int, ...]
    relations: IntegerMatrix

    def __call__(self, v: Sequence[int]) -> tuple[int, ...]:
        w = self.basis_change.apply(v)
        out = []
        for col, d in zip(self.columns, self.group.cyclic_orders):
            out.append(w[col] % d if d else w[col])
        return tuple(out)

    def is_zero(self, v: Sequence[int]) -> bool:
        return not any(self(v))

    def element_order(self, v: Sequence[int]) -> int | None:
        """Order of the image of ``v``; ``None`` if it has infinite order."""
        from math import gcd, lcm

        coords = self(v)
        out = 1
        for c, d in zip(coords, self.group.cyclic_orders):
            if d == 0:
                if c:
                    return None
            elif c:
                out = lcm(out, d // gcd(c, d))
        return out


def quotient_map(n_generators: int, relations, labels: Sequence[str] | None = None) -> QuotientMap:
    """Present ``Z^n_generators`` modulo the row lattice of ``relations``."""
    rel = as_matrix(relations, n_generators) if not isinstance(relations, IntegerMatrix) else relations
    if rel.cols != n_generators:
        raise ValueError(f"relations have {rel.cols} columns, expected {n_generators}")
    if labels is None:
        labels = [f"e{i + 1}" for i in range(n_generators)]
    if len(labels) != n_generators:
        raise ValueError("one label per generator is required")
    dec = snf(rel)
    diag = list(dec.diagonal) + [0] * (n_generators - len(dec.diagonal))
    vinv = dec.v.inverse()
    free_cols = [j for j, d in enumerate(diag) if d == 0]
    tors_cols = [j for j, d in enumerate(diag) if d > 1]
    cols = tuple(free_cols + tors_cols)
    vectors = tuple(vinv.row(j) for j in cols)
    group = AbelianGroup(
        free_rank=len(free_cols),
        torsion=tuple(diag[j] for j in tors_cols),
        generators=tuple(render_linear(vec, labels) for vec in vectors),
        generator_vectors=vectors,
    )
    return QuotientMap(group, dec, dec.v, cols, rel)


def quotient(n_generators: int, relations, labels: Sequence[str] | None = None) -> AbelianGroup:
    """``Z^n_generators`` modulo the row lattice of ``relations``, in invariant-factor form."""
    return quotient_map(n_generators, relations, labels).group
