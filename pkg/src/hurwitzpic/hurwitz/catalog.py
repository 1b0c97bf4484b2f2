"""Divisor classes excised from the base to reach the Hurwitz stack.

The coefficients of the discriminant loci and of the branch divisors are
imported constants; only the Hodge class is recomputed here by GRR.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from ..chow import BaseClass, Ring, grr_c1_pushforward, make_ring, twist, universal_bundle
from .instance import HurwitzInstance

PICARD_SYMBOLS = ("a1", "a2p", "b1", "b2p")


@lru_cache(maxsize=None)
def picard_ring() -> Ring:
    """Degree-one ring in which the divisor classes of the base live."""
    return make_ring([(name, 1) for name in PICARD_SYMBOLS], 1)


def linear(**coeffs) -> BaseClass:
    return picard_ring().linear(coeffs)


def as_vector(cls: BaseClass, names=PICARD_SYMBOLS) -> tuple[int, ...]:
    form = cls.integral_linear_form()
    extra = set(form) - set(names)
    if extra:
        raise ValueError(f"class involves symbols {sorted(extra)} outside {names}")
    return tuple(form.get(n, 0) for n in names)


@lru_cache(maxsize=None)
def lambda_class(inst: HurwitzInstance) -> BaseClass:
    """Hodge class: ``c1`` of ``pi_*`` of the rank ``k-1`` Tschirnhausen bundle twisted by ``O(-2)``."""
    bundle = universal_bundle(inst.k - 1, inst.g + inst.k - 1, "a")
    form = grr_c1_pushforward(twist(bundle, -2)).integral_linear_form()
    # a2 sits in degree 2 and vanishes from c1; only a1 and a2p survive
    return picard_ring().linear(form)


@dataclass(frozen=True)
class RelationRecord:
    """A named divisor class together with where it comes from.

    ``excised`` marks whether the class is a relation in the final
    presentation; informational classes are recorded but not quotiented.
    """

    name: str
    class_expr: BaseClass
    applies_when: str
    provenance: str
    excised: bool = True

    @property
    def vector(self) -> tuple[int, ...]:
        return as_vector(self.class_expr)

    def __str__(self):
        return f"{self.name} = {self.class_expr}"


@dataclass(frozen=True)
class _Entry:
    name: str
    applies: Callable[[int, int], bool]
    applies_when: str
    build: Callable[[HurwitzInstance], BaseClass]
    provenance: str
    excised: bool = True


_CATALOG = (
    _Entry(
        "D3", lambda k, g: k == 3, "k = 3",
        lambda i: linear(a1=8 * i.g + 12, a2p=-9),
        "imported constant: locus of singular trigonal curves in the bundle stack",
    ),
    _Entry(
        "S13", lambda k, g: k == 3 and g == 2, "k = 3, g = 2",
        lambda i: linear(a1=-2, a2p=1),
        "imported constant: splitting type (1, 3) locus, present only in genus 2",
    ),
    _Entry(
        "D4", lambda k, g: k == 4, "k = 4",
        lambda i: linear(a1=8 * i.g + 20, a2p=-8, b2p=-1),
        "imported constant: a combination of components of the tetragonal degeneracy locus",
    ),
    _Entry(
        "D5", lambda k, g: k == 5, "k = 5",
        lambda i: linear(a1=10 * i.g + 36, a2p=-7, b2p=-1),
        "imported constant: a combination of components of the pentagonal degeneracy locus",
    ),
    _Entry(
        "TEN", lambda k, g: k in (4, 5) and g == 2, "k = 4, 5 and g = 2",
        lambda i: lambda_class(i) * 10,
        "derived: lambda is 10-torsion on M_2; lambda itself computed by GRR",
    ),
    _Entry(
        "G3H", lambda k, g: k == 5 and g == 3, "k = 5, g = 3",
        lambda i: linear(a1=54, a2p=-9),
        "imported constant: genus 3 divisor equal to 9*lambda; recorded, not excised",
        excised=False,
    ),
)


def relation_catalog(inst: HurwitzInstance, include_informational: bool = False) -> list[RelationRecord]:
    """Classes removed from the base for ``inst``, in a fixed order."""
    out = []
    for entry in _CATALOG:
        if not entry.applies(inst.k, inst.g):
            continue
        if not entry.excised and not include_informational:
            continue
        out.append(RelationRecord(entry.name, entry.build(inst), entry.applies_when,
                                  entry.provenance, entry.excised))
    return out


def branch_divisor_classes(inst: HurwitzInstance) -> tuple[BaseClass, BaseClass | None]:
    """Classes ``(T, D)`` of the triple-ramification and double-double loci.

    Trigonal covers have no ``D``.
    """
    k, g = inst.k, inst.g
    if k == 3:
        return linear(a1=24 * g + 36, a2p=-24), None
    if k == 4:
        return linear(a1=24 * g + 60, a2p=-24), linear(a1=-(32 * g + 80), a2p=36)
    return linear(a1=24 * g + 84, a2p=-24), linear(a1=-(32 * g + 112), a2p=36)


def branch_records(inst: HurwitzInstance) -> list[RelationRecord]:
    t, d = branch_divisor_classes(inst)
    out = [RelationRecord("T", t, "simply branched locus",
                          "imported constant: closure of covers with a triple ramification point")]
    if d is not None:
        out.append(RelationRecord("D", d, "simply branched locus, k = 4, 5",
                                  "imported constant: closure of covers with two ramification points in one fiber"))
    return out
