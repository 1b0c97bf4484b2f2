"""Integral lattices of the base stacks.

On the SL2 side the Picard group of a pair of bundle stacks is free on
``t1, u1, v1, w1`` (first Chern classes of the tautological bundles), or
equivalently on ``a1, a2p, b1, b2p``. The PGL2 side is the sublattice killed
by the central ``mu_2``, which acts on ``t1`` by ``d`` and on ``v1`` by ``e``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..abelian import (
    AbelianGroup,
    IntegerMatrix,
    hnf,
    is_unimodular,
    lattice_equal,
    lattice_member,
    quotient,
    right_kernel,
    solve_in_basis,
)
from ..chow import (
    FiberedClass,
    grr_c1_pushforward,
    line_bundle,
    twist,
    universal_bundle,
    universal_ring,
)
from .instance import (
    BundleProfile,
    HurwitzError,
    HurwitzInstance,
    IntegralityError,
    bundle_profile,
    epsilon,
)

TU = ("t1", "u1", "v1", "w1")
AB = ("a1", "a2p", "b1", "b2p")


def mu2_kernel(r: int, d: int, s: int | None = None, e: int | None = None) -> IntegerMatrix:
    """HNF basis, in ``(t1, u1[, v1, w1])`` coordinates, of the classes fixed by ``mu_2``.

    The character map sends ``t1 -> d``, ``v1 -> e`` and ``u1, w1 -> 0`` in Z/2.
    Pass ``s = e = None`` for a single bundle.
    """
    if r <= 1 or (s is not None and s <= 1):
        raise HurwitzError("mu2_kernel needs bundle ranks greater than 1")
    weights = [d, 0] if s is None else [d, 0, e, 0]
    n = len(weights)
    # x in ker  <=>  (weights . x) + 2 y = 0 for some integer y
    ker = right_kernel(IntegerMatrix.from_rows([[w % 2 for w in weights] + [2]]))
    return hnf(IntegerMatrix.from_rows([row[:n] for row in ker.tolist()], n))


def gens1(d: int, e: int | None = None) -> IntegerMatrix:
    """Listed generators of the integral sublattice in ``(t1, u1[, v1, w1])`` coordinates."""
    if e is None:
        return IntegerMatrix.from_rows([[1, 0], [0, 1]] if d % 2 == 0 else [[2, 0], [0, 1]])
    t, u, v, w = ([int(i == j) for j in range(4)] for i in range(4))

    def comb(*pairs):
        return [sum(c * x[i] for c, x in pairs) for i in range(4)]

    if d % 2 == 0 and e % 2 == 0:
        rows = [t, u, v, w]
    elif d % 2 == 1 and e % 2 == 0:
        rows = [comb((2, t)), u, v, w]
    elif d % 2 == 0:
        rows = [t, u, comb((2, v)), w]
    else:
        rows = [comb((1, t), (-1, v)), comb((2, t)), u, w]
    return IntegerMatrix.from_rows(rows)


def gens2(d: int, e: int | None = None) -> IntegerMatrix:
    """The same sublattice listed in ``(a1, a2p[, b1, b2p])`` coordinates."""
    if e is None:
        return IntegerMatrix.from_rows([[1, 0], [0, 1]] if d % 2 == 0 else [[2, 0], [0, 1]])
    if d % 2 == 0 and e % 2 == 0:
        rows = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    elif d % 2 == 1 and e % 2 == 0:
        rows = [[2, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    elif d % 2 == 0:
        rows = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 2, 0], [0, 0, 0, 1]]
    else:
        rows = [[1, 0, -1, 0], [2, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1]]
    return IntegerMatrix.from_rows(rows)


@lru_cache(maxsize=None)
def _tautological_c1(r: int, d: int, prefix: str) -> tuple[dict[str, int], dict[str, int]]:
    """``(c1(pi_* E(-1)), c1(pi_* E))`` by GRR, as integral linear forms."""
    ring = universal_ring([(r, prefix)])
    e = universal_bundle(r, d, prefix, ring)
    t = grr_c1_pushforward(twist(e, -1)).integral_linear_form()
    u = grr_c1_pushforward(e).integral_linear_form()
    return t, u


def basis_change_tu_to_ab(r: int, d: int, s: int | None = None, e: int | None = None) -> IntegerMatrix:
    """Rows express ``t1, u1[, v1, w1]`` in ``a1, a2p[, b1, b2p]``.

    Every row is derived through Grothendieck-Riemann-Roch on the universal
    bundle rather than typed in.
    """
    t, u = _tautological_c1(r, d, "a")
    rows = [[t.get("a1", 0), t.get("a2p", 0)], [u.get("a1", 0), u.get("a2p", 0)]]
    if s is None:
        return IntegerMatrix.from_rows(rows)
    v, w = _tautological_c1(s, e, "b")
    rows = [row + [0, 0] for row in rows]
    rows.append([0, 0, v.get("b1", 0), v.get("b2p", 0)])
    rows.append([0, 0, w.get("b1", 0), w.get("b2p", 0)])
    return IntegerMatrix.from_rows(rows)


def int_pic_change_matrix(d: int, e: int) -> IntegerMatrix:
    """Integer matrix taking ``(a1-b1, 2a1, a2p, b2p)`` to ``(t1-v1, 2t1, u1, w1)`` when d, e are odd."""
    if d % 2 == 0 or e % 2 == 0:
        raise HurwitzError("the explicit change of basis needs d and e both odd")
    return IntegerMatrix.from_rows([
        [e, (d - e) // 2, -1, 1],
        [0, d, -2, 0],
        [0, (d + 1) // 2, -1, 0],
        [-(e + 1), (e + 1) // 2, 0, -1],
    ])


def verify_int_pic_change(d: int, e: int) -> bool:
    """Check the odd/odd change of basis entrywise and that it is unimodular."""
    m = int_pic_change_matrix(d, e)
    lhs = gens1(d, e) @ basis_change_tu_to_ab(2, d, 2, e)
    rhs = m @ gens2(d, e)
    return lhs == rhs and is_unimodular(m)


def integral_sublattice(profile: BundleProfile) -> IntegerMatrix:
    """HNF of the PGL2-side Picard lattice in ``a``/``b`` coordinates."""
    kernel = mu2_kernel(profile.r, profile.d, profile.s, profile.e)
    return hnf(kernel @ basis_change_tu_to_ab(profile.r, profile.d, profile.s, profile.e))


def torsor_class(inst: HurwitzInstance) -> tuple[int, ...] | None:
    """First Chern class of the line bundle whose G_m-torsor cuts out the base stack.

    For k = 4 it is ``pi_*(det E (x) det F^vee)``, for k = 5
    ``pi_*(det E^2 (x) det F^vee)``; both computed by GRR.
    """
    if inst.k == 3:
        return None
    p = bundle_profile(inst)
    ring = universal_ring([(p.r, "a"), (p.s, "b")])
    e = universal_bundle(p.r, p.d, "a", ring)
    f = universal_bundle(p.s, p.e, "b", ring)
    mult = 1 if inst.k == 4 else 2
    c1 = e.chern[0] * mult - f.chern[0]
    if not c1.f1.is_zero():
        raise HurwitzError("determinant line bundle is not trivial on fibers")
    form = grr_c1_pushforward(line_bundle(c1)).integral_linear_form()
    return tuple(form.get(name, 0) for name in AB)


@dataclass(frozen=True)
class BasePresentation:
    """Free Picard group of the base stack with its chosen basis.

    ``basis`` rows are ``eps*a1, a2p[, b2p]`` in ambient coordinates; after
    quotienting the lattice by the torsor class they are a free basis.
    """

    instance: HurwitzInstance
    ambient: tuple[str, ...]
    lattice: IntegerMatrix
    torsor: tuple[int, ...] | None
    basis: IntegerMatrix
    labels: tuple[str, ...]
    group: AbelianGroup

    @property
    def eps(self) -> int:
        return epsilon(self.instance)

    def coordinates(self, v) -> tuple[int, ...]:
        """Coordinates of an ambient class on ``basis`` (modulo the torsor class)."""
        v = tuple(v)
        if len(v) != len(self.ambient):
            raise HurwitzError("class has the wrong number of coordinates")
        rows = self.basis.tolist() + ([list(self.torsor)] if self.torsor else [])
        sol = solve_in_basis(v, IntegerMatrix.from_rows(rows, len(self.ambient)))
        if any(x.denominator != 1 for x in sol):
            raise IntegralityError(
                f"class {v} is not integral on {self.instance}: a1-coefficient "
                f"{v[0]} is not a multiple of eps={self.eps}"
            )
        return tuple(int(x) for x in sol[: self.basis.rows])

    def from_linear_form(self, form: dict[str, int | Fraction]) -> tuple[int, ...]:
        unknown = set(form) - set(self.ambient)
        if unknown:
            raise HurwitzError(f"symbols {sorted(unknown)} are not part of the base")
        return self.coordinates([form.get(name, 0) for name in self.ambient])


@lru_cache(maxsize=None)
def pic_base(inst: HurwitzInstance) -> BasePresentation:
    """Picard group of the base stack, free on ``eps*a1, a2p`` (and ``b2p`` for k = 4, 5)."""
    profile = bundle_profile(inst)
    eps = epsilon(inst)
    if profile.paired:
        ambient = AB
        basis = IntegerMatrix.from_rows([[eps, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1]])
        labels = ("a1", "a2p", "b2p")
    else:
        ambient = AB[:2]
        basis = IntegerMatrix.from_rows([[eps, 0], [0, 1]])
        labels = ("a1", "a2p")
    lattice = integral_sublattice(profile)
    torsor = torsor_class(inst)

    full = basis if torsor is None else basis.vstack(IntegerMatrix.from_rows([torsor]))
    if torsor is not None and not lattice_member(torsor, lattice):
        raise HurwitzError(f"torsor class {torsor} is not integral on {inst}")
    if not lattice_equal(full, lattice) or full.rows != lattice.rows:
        raise HurwitzError(f"chosen generators do not form a basis of the lattice for {inst}")

    # Pic of the torsor: lattice / <torsor>, in lattice coordinates
    rel = []
    if torsor is not None:
        rel = [[int(x) for x in solve_in_basis(torsor, lattice)]]
    group = quotient(lattice.rows, IntegerMatrix.from_rows(rel, lattice.rows))
    if group.torsion or group.free_rank != basis.rows:
        raise HurwitzError(f"base Picard group of {inst} is not free of rank {basis.rows}")
    return BasePresentation(inst, ambient, lattice, torsor, basis, labels, group)
