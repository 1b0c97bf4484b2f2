"""Hurwitz instances ``(k, g)`` and their parity and bundle bookkeeping."""

from __future__ import annotations

from dataclasses import dataclass

DEGREES = (3, 4, 5)


class HurwitzError(ValueError):
    pass


class RankMismatchError(HurwitzError):
    """The computed free rank disagrees with the known rank of the Picard group."""


class IntegralityError(HurwitzError):
    """A class does not lie in the integral sublattice of the base."""


@dataclass(frozen=True, order=True)
class HurwitzInstance:
    """Degree ``k`` covers of P^1 by genus ``g`` curves."""

    k: int
    g: int

    def __post_init__(self):
        if self.k not in DEGREES:
            raise HurwitzError(f"degree k must be one of {DEGREES}, got {self.k}")
        if self.g < 2:
            raise HurwitzError(f"genus g must be at least 2, got {self.g}")

    def __str__(self):
        return f"H_{{{self.k},{self.g}}}"


@dataclass(frozen=True)
class BundleProfile:
    """Ranks and degrees of the bundles attached to a cover.

    ``s`` and ``e`` are ``None`` for trigonal covers, which carry one bundle.
    """

    r: int
    d: int
    s: int | None = None
    e: int | None = None

    @property
    def paired(self) -> bool:
        return self.s is not None


def bundle_profile(inst: HurwitzInstance) -> BundleProfile:
    k, g = inst.k, inst.g
    if k == 3:
        return BundleProfile(2, g + 2)
    if k == 4:
        return BundleProfile(3, g + 3, 2, g + 3)
    return BundleProfile(4, g + 4, 5, 2 * g + 8)


def epsilon(inst: HurwitzInstance) -> int:
    """1 when ``g + k - 1`` is even, else 2."""
    return 1 if (inst.g + inst.k - 1) % 2 == 0 else 2


def expected_free_rank(inst: HurwitzInstance, simple: bool = False) -> int:
    """Known free rank of Pic; these lower bounds are imported, not computed.

    Rank 2 for k = 4, 5 and g >= 3, rank 1 at g = 2; trigonal stacks have
    rank 1 except at g = 2 where the group is finite. Simply branched
    loci always have finite Picard group.
    """
    if simple:
        return 0
    if inst.k == 3:
        return 0 if inst.g == 2 else 1
    return 1 if inst.g == 2 else 2
