"""Picard groups of Hurwitz stacks and of their simply branched loci."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from ..abelian import (
    AbelianGroup,
    IntegerMatrix,
    QuotientMap,
    hnf,
    is_unimodular,
    lattice_member,
    quotient,
    quotient_map,
    render_linear,
)
from ..chow import BaseClass
from .catalog import (
    RelationRecord,
    as_vector,
    branch_records,
    lambda_class,
    relation_catalog,
)
from .instance import (
    HurwitzError,
    HurwitzInstance,
    RankMismatchError,
    epsilon,
    expected_free_rank,
)
from .lattices import BasePresentation, pic_base


@dataclass(frozen=True)
class PicResult:
    """A Picard group with the presentation that produced it.

    ``relation_matrix`` rows are the excised classes on the base basis
    ``eps*a1, a2p[, b2p]``. Generator labels are written on
    ``display_basis``: ``a1, lambda[, b2p]`` when ``eps*a1, lambda[, b2p]``
    is a basis, else ``a1, a2p[, b2p]``.
    """

    instance: HurwitzInstance
    simple_branching: bool
    group: AbelianGroup
    generator_labels: tuple[str, ...]
    relations_used: tuple[RelationRecord, ...]
    relation_matrix: IntegerMatrix
    base: BasePresentation = field(repr=False)
    qmap: QuotientMap = field(repr=False)
    display_basis: tuple[str, ...]

    @property
    def eps(self) -> int:
        return epsilon(self.instance)

    @property
    def relation_names(self) -> tuple[str, ...]:
        return tuple(r.name for r in self.relations_used)

    def coordinates(self, cls: BaseClass) -> tuple[int, ...]:
        """Image of a divisor class of the base in the cyclic factors of ``group``."""
        return self.qmap(self.base.coordinates(as_vector(cls, self.base.ambient)))

    def element_order(self, cls: BaseClass) -> int | None:
        return self.qmap.element_order(self.base.coordinates(as_vector(cls, self.base.ambient)))

    def coprime_form(self) -> tuple[int, ...] | None:
        """Cyclic orders read off a diagonal reduced presentation, if there is one."""
        return diagonal_form(self.relation_matrix)


def _base_labels(base: BasePresentation) -> tuple[str, ...]:
    head = "a1" if base.eps == 1 else f"{base.eps}*a1"
    return (head,) + base.labels[1:]


def lambda_basis(base: BasePresentation) -> IntegerMatrix | None:
    """Rows ``eps*a1, lambda[, b2p]`` on the base basis, or ``None`` if not a basis."""
    lam = base.from_linear_form(lambda_class(base.instance).integral_linear_form())
    n = base.basis.rows
    rows = [[1] + [0] * (n - 1), list(lam)]
    if n == 3:
        rows.append([0, 0, 1])
    m = IntegerMatrix.from_rows(rows)
    return m if is_unimodular(m) else None


def _present(inst: HurwitzInstance, records, simple: bool) -> PicResult:
    base = pic_base(inst)
    n = base.basis.rows
    rows = [list(base.coordinates(as_vector(r.class_expr, base.ambient))) for r in records]
    rel = IntegerMatrix.from_rows(rows, n)
    labels = _base_labels(base)
    qmap = quotient_map(n, rel, labels)
    group = qmap.group

    expected = expected_free_rank(inst, simple)
    if group.free_rank != expected:
        raise RankMismatchError(
            f"{inst}: quotient has free rank {group.free_rank}, expected {expected}"
        )

    change = lambda_basis(base)
    if change is None:
        display = ("a1",) + base.labels[1:]
        to_display = None
    else:
        display = ("a1", "lambda") + base.labels[2:]
        to_display = change.inverse()
    vectors, gen_labels = [], []
    for vec in group.generator_vectors:
        shown = list(to_display.apply(vec) if to_display is not None else vec)
        shown[0] *= base.eps  # coefficient on eps*a1 becomes one on a1
        if next((x for x in shown if x), 0) < 0:
            vec, shown = tuple(-x for x in vec), [-x for x in shown]
        vectors.append(vec)
        gen_labels.append(render_linear(shown, display))
    group = AbelianGroup(group.free_rank, group.torsion, tuple(gen_labels), tuple(vectors))
    return PicResult(inst, simple, group, tuple(gen_labels), tuple(records), rel, base, qmap, display)


@lru_cache(maxsize=None)
def pic_hurwitz(inst: HurwitzInstance) -> PicResult:
    """Pic of the Hurwitz stack: the base modulo the excised divisors."""
    return _present(inst, relation_catalog(inst), simple=False)


@lru_cache(maxsize=None)
def pic_simply_branched(inst: HurwitzInstance) -> PicResult:
    """Pic of the simply branched locus: additionally kill ``T`` and ``D``."""
    return _present(inst, relation_catalog(inst) + branch_records(inst), simple=True)


def coherence_check(inst: HurwitzInstance) -> bool:
    """Quotienting the computed Pic by ``T, D`` agrees with the direct simply branched group."""
    full = pic_hurwitz(inst)
    orders = full.group.cyclic_orders
    n = len(orders)
    rows = [[d if j == i else 0 for j in range(n)] for i, d in enumerate(orders) if d]
    for rec in branch_records(inst):
        rows.append(list(full.coordinates(rec.class_expr)))
    return quotient(n, IntegerMatrix.from_rows(rows, n)) == pic_simply_branched(inst).group


def eliminate_units(rel: IntegerMatrix) -> tuple[IntegerMatrix, tuple[int, ...]]:
    """Drop generators that some relation expresses in terms of the others.

    Returns the reduced relations and the indices of surviving generators.
    Columns are scanned from the last one, so ``b2p`` goes before ``a2p``.
    """
    rows = rel.tolist()
    keep = list(range(rel.cols))
    while True:
        hit = None
        for j in reversed(range(len(keep))):
            for i, row in enumerate(rows):
                if abs(row[j]) == 1:
                    hit = (i, j)
                    break
            if hit:
                break
        if hit is None:
            break
        i, j = hit
        piv = rows.pop(i)
        s = piv[j]
        rows = [[x - row[j] * s * p for x, p in zip(row, piv)] for row in rows]
        rows = [row[:j] + row[j + 1:] for row in rows]
        del keep[j]
    return IntegerMatrix.from_rows(rows, len(keep)), tuple(keep)


def diagonal_form(rel: IntegerMatrix) -> tuple[int, ...] | None:
    """Orders of a diagonal presentation after unit elimination, else ``None``.

    Free summands contribute 0; trivial factors are dropped. Finite orders
    keep the order of the surviving generators.
    """
    reduced, keep = eliminate_units(rel)
    h = hnf(reduced)
    orders = [0] * len(keep)
    for i in range(h.rows):
        nz = [j for j in range(h.cols) if h[i, j]]
        if len(nz) != 1:
            return None
        orders[nz[0]] = h[i, nz[0]]
    # free summands first, then the finite ones in generator order
    return tuple([d for d in orders if d == 0] + [d for d in orders if d > 1])


# -- explicit witnesses for the closed forms -------------------------------

DIAG_LEFT = {3: ((-8, 3), (-3, 1)), 4: ((3, 2), (4, 3)), 5: ((3, 2), (4, 3))}


@dataclass(frozen=True)
class DiagonalizationWitness:
    left: IntegerMatrix
    relations: IntegerMatrix
    product: IntegerMatrix
    expected: IntegerMatrix

    @property
    def holds(self) -> bool:
        return is_unimodular(self.left) and self.product == self.expected


def diagonalization_witness(inst: HurwitzInstance) -> DiagonalizationWitness:
    """``L @ M`` with ``M`` the two surviving relations on ``eps*a1, a2p``.

    For k = 3, ``M`` holds the discriminant and ``T``; for k = 4, 5 it holds
    ``T`` and ``D`` (the discriminant having already removed ``b2p``).
    """
    base = pic_base(inst)
    eps = base.eps
    if inst.k == 3:
        first = relation_catalog(inst)[0].class_expr
        second = branch_records(inst)[0].class_expr
        target = ((8 * inst.g + 12) // eps, 3)
    else:
        first, second = (r.class_expr for r in branch_records(inst))
        target = ((8 * inst.g + {4: 20, 5: 28}[inst.k]) // eps, 12)
    m = IntegerMatrix.from_rows(
        [list(base.coordinates(as_vector(c, base.ambient)))[:2] for c in (first, second)]
    )
    left = IntegerMatrix.from_rows(DIAG_LEFT[inst.k])
    return DiagonalizationWitness(left, m, left @ m, IntegerMatrix.diagonal(target))


def genus2_relation(k: int) -> tuple[int, ...]:
    """The class ``2(2a1 + a2p)`` (k = 4) or ``2(3a1 + a2p)`` (k = 5) on ``eps*a1, a2p, b2p``."""
    if k == 4:
        # eps = 2 at g = 2, so 2*(2a1) = 2*(eps*a1)
        return (2, 2, 0)
    if k == 5:
        return (6, 2, 0)
    raise HurwitzError("only k = 4, 5 have a genus 2 consistency relation")


def genus2_consistency(k: int) -> bool:
    res = pic_simply_branched(HurwitzInstance(k, 2))
    return lattice_member(genus2_relation(k), res.relation_matrix)


@dataclass(frozen=True)
class TorsionIdentity:
    """``lhs == rhs`` as classes, plus the determinant obstruction ``(g - 3)/eps``."""

    instance: HurwitzInstance
    modulus: int
    lhs: BaseClass
    rhs: BaseClass
    det: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    @property
    def det_is_unit(self) -> bool:
        return abs(self.det) == 1


def torsion_generator_identity(inst: HurwitzInstance, modulus: int | None = None) -> TorsionIdentity:
    """The trigonal torsion class rewritten through ``lambda`` and ``c1(L) = eps*a1``.

    With ``modulus = 3`` (needs 3 | g) the class ``(8g+12)/3 a1 - 3 a2p``
    equals ``3 lambda - (g-3)/(3 eps) c1(L)``; with ``modulus = 9`` (needs
    g = 3 mod 9) ``(8g+12)/9 a1 - a2p`` equals ``lambda - (g-3)/(9 eps) c1(L)``.
    """
    if inst.k != 3 or inst.g == 2:
        raise HurwitzError("torsion generator identities concern k = 3, g >= 3")
    if modulus is None:
        modulus = 9 if inst.g % 9 == 3 else 3
    if modulus == 3 and inst.g % 3:
        raise HurwitzError("the mod 3 identity needs 3 | g")
    if modulus == 9 and inst.g % 9 != 3:
        raise HurwitzError("the mod 9 identity needs g = 3 mod 9")
    if modulus not in (3, 9):
        raise HurwitzError("modulus must be 3 or 9")
    g, eps = inst.g, epsilon(inst)
    lam = lambda_class(inst)
    ring = lam.ring
    a1, a2p = ring.gen("a1"), ring.gen("a2p")
    c1_l = a1 * eps
    lam_mult = 3 if modulus == 3 else 1
    lhs = a1 * Fraction(8 * g + 12, modulus) - a2p * lam_mult
    rhs = lam * lam_mult - c1_l * Fraction(g - 3, modulus * eps)
    return TorsionIdentity(inst, modulus, lhs, rhs, Fraction(g - 3, eps))
