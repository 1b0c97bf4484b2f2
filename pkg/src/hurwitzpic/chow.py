"""Graded Chow-ring calculus on a P^1-bundle ``P -> B``.

Classes on ``P`` are written ``f0 + f1*z`` with ``f0, f1`` polynomials on the
base and ``z = c1(O(1))`` subject to ``z^2 = -c2``. Coefficients are exact
rationals; the grading is truncated at a fixed degree.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Mapping, Sequence

DEFAULT_TRUNCATION = 3
C2 = "c2"

Monomial = tuple[int, ...]


class ChowError(ValueError):
    pass


def default_truncation() -> int:
    """Truncation degree, overridable through ``PIC_TRUNCATION_DEGREE``."""
    raw = os.environ.get("PIC_TRUNCATION_DEGREE")
    if not raw:
        return DEFAULT_TRUNCATION
    try:
        value = int(raw)
    except ValueError:
        raise ChowError(f"PIC_TRUNCATION_DEGREE must be an integer, got {raw!r}") from None
    if value < 2:
        raise ChowError("PIC_TRUNCATION_DEGREE must be at least 2")
    return value


@dataclass(frozen=True)
class Symbol:
    name: str
    degree: int

    def __post_init__(self):
        if not self.name.isidentifier():
            raise ChowError(f"bad symbol name {self.name!r}")
        if self.degree < 1:
            raise ChowError(f"symbol {self.name} must have positive degree")


class Ring:
    """Graded polynomial ring on named symbols, truncated above a degree."""

    __slots__ = ("symbols", "truncation", "_index", "_order")

    def __init__(self, symbols: Sequence[Symbol], truncation: int):
        if truncation < 1:
            raise ChowError("truncation degree must be positive")
        names = [s.name for s in symbols]
        if len(set(names)) != len(names):
            dup = next(n for n in names if names.count(n) > 1)
            raise ChowError(f"duplicate symbol {dup!r}")
        self.symbols = tuple(symbols)
        self.truncation = truncation
        self._index = {s.name: i for i, s in enumerate(self.symbols)}
        # rendering order: symbol names sorted
        self._order = sorted(range(len(self.symbols)), key=lambda i: self.symbols[i].name)

    def __repr__(self):
        body = ", ".join(f"{s.name}:{s.degree}" for s in self.symbols)
        return f"Ring([{body}], truncation={self.truncation})"

    def __eq__(self, other):
        return (isinstance(other, Ring) and self.symbols == other.symbols
                and self.truncation == other.truncation)

    def __hash__(self):
        return hash((self.symbols, self.truncation))

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ChowError(f"symbol {name!r} is not in {self!r}") from None

    def degree(self, mono: Monomial) -> int:
        return sum(e * s.degree for e, s in zip(mono, self.symbols))

    def unit(self) -> Monomial:
        return (0,) * len(self.symbols)

    # constructors -------------------------------------------------------
    def const(self, c) -> "BaseClass":
        return BaseClass(self, {self.unit(): Fraction(c)})

    def gen(self, name: str) -> "BaseClass":
        mono = [0] * len(self.symbols)
        mono[self.index(name)] = 1
        return BaseClass(self, {tuple(mono): Fraction(1)})

    def zero(self) -> "BaseClass":
        return BaseClass(self, {})

    def linear(self, coeffs: Mapping[str, int | Fraction]) -> "BaseClass":
        out = self.zero()
        for name, c in coeffs.items():
            out = out + self.gen(name) * c
        return out

    def z(self) -> "FiberedClass":
        return FiberedClass(self.zero(), self.const(1))

    def pullback(self, alpha: "BaseClass") -> "FiberedClass":
        return FiberedClass(alpha, self.zero())


def make_ring(symbols: Iterable[Symbol | tuple[str, int]], truncation_degree: int | None = None) -> Ring:
    """Build a ring context; ``symbols`` may be ``Symbol`` or ``(name, degree)`` pairs."""
    syms = [s if isinstance(s, Symbol) else Symbol(*s) for s in symbols]
    if truncation_degree is None:
        truncation_degree = default_truncation()
    return Ring(syms, truncation_degree)


def _coerce(ring: Ring, x) -> "BaseClass":
    if isinstance(x, BaseClass):
        if x.ring != ring:
            raise ChowError("classes live in different rings")
        return x
    if isinstance(x, (int, Fraction)):
        return ring.const(x)
    return NotImplemented


class BaseClass:
    """Truncated graded polynomial with rational coefficients."""

    __slots__ = ("ring", "terms", "_cap")

    def __init__(self, ring: Ring, terms: Mapping[Monomial, Fraction], cap: int | None = None):
        self.ring = ring
        self._cap = ring.truncation if cap is None else cap
        self.terms = {m: Fraction(c) for m, c in terms.items()
                      if c and ring.degree(m) <= self._cap}

    # arithmetic ----------------------------------------------------------
    def __add__(self, other):
        other = _coerce(self.ring, other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return BaseClass(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return BaseClass(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = _coerce(self.ring, other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return BaseClass(self.ring, {m: c * other for m, c in self.terms.items()})
        other = _coerce(self.ring, other)
        if other is NotImplemented:
            return other
        out: dict[Monomial, Fraction] = {}
        deg = self.ring.degree
        cap = self.ring.truncation
        for m1, c1 in self.terms.items():
            d1 = deg(m1)
            for m2, c2 in other.terms.items():
                if d1 + deg(m2) > cap:
                    continue
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return BaseClass(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = self.ring.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, BaseClass):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # grading ------------------------------------------------------------
    def homogeneous(self, k: int) -> "BaseClass":
        return BaseClass(self.ring, {m: c for m, c in self.terms.items()
                                     if self.ring.degree(m) == k})

    def truncate(self, cap: int) -> "BaseClass":
        return BaseClass(self.ring, self.terms, cap=min(cap, self.ring.truncation))

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {self.ring.degree(m) for m in self.terms}

    def coefficient(self, name: str | None = None) -> Fraction:
        """Coefficient of a single symbol (or of 1 when ``name`` is None)."""
        mono = [0] * len(self.ring.symbols)
        if name is not None:
            mono[self.ring.index(name)] = 1
        return self.terms.get(tuple(mono), Fraction(0))

    def integral_linear_form(self) -> dict[str, int]:
        """Symbol -> integer coefficient for a pure degree-1 class.

        Raises ``ChowError`` on anything of other degree or with a
        non-integral coefficient.
        """
        out: dict[str, int] = {}
        for m, c in self.terms.items():
            if self.ring.degree(m) != 1 or sum(m) != 1:
                raise ChowError(f"{self} is not a pure degree-1 class")
            if c.denominator != 1:
                raise ChowError(f"{self} has a non-integral coefficient")
            out[self.ring.symbols[m.index(1)].name] = int(c)
        return out

    # rendering -----------------------------------------------------------
    def _sort_key(self, m: Monomial):
        return (-self.ring.degree(m), tuple(-m[i] for i in self.ring._order))

    def _mono_str(self, m: Monomial) -> str:
        parts = []
        for i in self.ring._order:
            e = m[i]
            if e:
                name = self.ring.symbols[i].name
                parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for m in sorted(self.terms, key=self._sort_key):
            c = self.terms[m]
            mono = self._mono_str(m)
            mag = abs(c)
            if not mono:
                term = str(mag)
            elif mag == 1:
                term = mono
            else:
                term = f"{mag}*{mono}"
            if not out:
                out.append(term if c > 0 else f"-{term}")
            else:
                out.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(out)

    def __repr__(self):
        return f"BaseClass({self})"


class FiberedClass:
    """``f0 + f1*z`` on the P^1-bundle; products reduce ``z^2`` to ``-c2``."""

    __slots__ = ("f0", "f1")

    def __init__(self, f0: BaseClass, f1: BaseClass):
        if f0.ring != f1.ring:
            raise ChowError("components live in different rings")
        ring = f0.ring
        self.f0 = f0
        # the z-coefficient carries one degree less
        self.f1 = f1.truncate(ring.truncation - 1)

    @property
    def ring(self) -> Ring:
        return self.f0.ring

    def _lift(self, other):
        if isinstance(other, FiberedClass):
            if other.ring != self.ring:
                raise ChowError("classes live in different rings")
            return other
        if isinstance(other, (int, Fraction, BaseClass)):
            return FiberedClass(_coerce(self.ring, other), self.ring.zero())
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return FiberedClass(self.f0 + other.f0, self.f1 + other.f1)

    __radd__ = __add__

    def __neg__(self):
        return FiberedClass(-self.f0, -self.f1)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FiberedClass(self.f0 * other, self.f1 * other)
        other = self._lift(other)
        if other is NotImplemented:
            return other
        c2 = self.ring.gen(C2)
        f0 = self.f0 * other.f0 - c2 * (self.f1 * other.f1)
        f1 = self.f0 * other.f1 + self.f1 * other.f0
        return FiberedClass(f0, f1)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = FiberedClass(self.ring.const(1), self.ring.zero())
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self.f0 == other.f0 and self.f1 == other.f1

    def __hash__(self):
        return hash((self.f0, self.f1))

    def homogeneous(self, k: int) -> "FiberedClass":
        return FiberedClass(self.f0.homogeneous(k), self.f1.homogeneous(k - 1))

    def is_zero(self) -> bool:
        return self.f0.is_zero() and self.f1.is_zero()

    def __str__(self) -> str:
        if self.f1.is_zero():
            return str(self.f0)
        zpart = f"({self.f1})*z"
        if self.f0.is_zero():
            return zpart
        return f"{self.f0} + {zpart}"

    def __repr__(self):
        return f"FiberedClass({self})"


def pushforward(c: FiberedClass) -> BaseClass:
    """``pi_*`` along the fibers: ``pi_*(1) = 0``, ``pi_*(z) = 1``."""
    return c.f1


@dataclass(frozen=True)
class BundleData:
    """Rank and total Chern class ``c_1..c_rank`` of a bundle on ``P``."""

    rank: int
    chern: tuple[FiberedClass, ...]

    def __post_init__(self):
        if self.rank < 0:
            raise ChowError("rank must be nonnegative")
        if len(self.chern) != self.rank:
            raise ChowError("need exactly one Chern class per rank")

    @property
    def ring(self) -> Ring:
        return self.chern[0].ring

    def c(self, i: int) -> FiberedClass:
        if i == 0:
            return FiberedClass(self.ring.const(1), self.ring.zero())
        if 1 <= i <= self.rank:
            return self.chern[i - 1]
        return FiberedClass(self.ring.zero(), self.ring.zero())

    def __eq__(self, other):
        return (isinstance(other, BundleData) and self.rank == other.rank
                and all(a == b for a, b in zip(self.chern, other.chern)))

    def __hash__(self):
        return hash((self.rank, self.chern))


def universal_symbols(rank: int, prefix: str) -> list[Symbol]:
    """``p_i`` (degree i) and ``p_ip`` (degree i-1) for the Chern classes of a bundle."""
    syms = [Symbol(f"{prefix}1", 1)]
    for i in range(2, rank + 1):
        syms.append(Symbol(f"{prefix}{i}", i))
        syms.append(Symbol(f"{prefix}{i}p", i - 1))
    return syms


def universal_ring(bundles: Sequence[tuple[int, str]], truncation: int | None = None) -> Ring:
    """Ring holding the symbols of several universal bundles plus ``c2``."""
    syms: list[Symbol] = []
    for rank, prefix in bundles:
        syms.extend(universal_symbols(rank, prefix))
    syms.append(Symbol(C2, 2))
    return make_ring(syms, truncation)


def universal_bundle(rank: int, degree: int, prefix: str = "a", ring: Ring | None = None) -> BundleData:
    """``c_i = p_i + p_ip*z``, with the z-coefficient of ``c_1`` the literal degree."""
    if rank < 1:
        raise ChowError("rank must be at least 1")
    if degree < 0:
        raise ChowError("degree must be nonnegative")
    if ring is None:
        ring = universal_ring([(rank, prefix)])
    chern = [FiberedClass(ring.gen(f"{prefix}1"), ring.const(degree))]
    for i in range(2, rank + 1):
        chern.append(FiberedClass(ring.gen(f"{prefix}{i}"), ring.gen(f"{prefix}{i}p")))
    return BundleData(rank, tuple(chern))


def line_bundle(c1: FiberedClass) -> BundleData:
    return BundleData(1, (c1,))


def _power_sums(b: BundleData, up_to: int) -> list[FiberedClass]:
    # Newton: p_k = sum_{i<k} (-1)^(i-1) e_i p_{k-i} + (-1)^(k-1) k e_k
    ps = [FiberedClass(b.ring.const(b.rank), b.ring.zero())]
    for k in range(1, up_to + 1):
        acc = b.c(k) * ((-1) ** (k - 1) * k)
        for i in range(1, k):
            acc = acc + b.c(i) * ps[k - i] * ((-1) ** (i - 1))
        ps.append(acc)
    return ps


def chern_character(b: BundleData, up_to: int | None = None) -> list[FiberedClass]:
    """``[ch_0, ..., ch_up_to]`` from the Chern classes via Newton's identities."""
    if up_to is None:
        up_to = b.ring.truncation
    if up_to > b.ring.truncation:
        raise ChowError("cannot expand beyond the truncation degree")
    ps = _power_sums(b, up_to)
    return [p * Fraction(1, factorial(k)) for k, p in enumerate(ps)]


def total(parts: Sequence[FiberedClass]) -> FiberedClass:
    out = parts[0]
    for p in parts[1:]:
        out = out + p
    return out


def chern_from_character(ring: Ring, rank: int, ch: Sequence[FiberedClass]) -> BundleData:
    """Invert Newton's identities: ``e_k = (1/k) sum_{i=1..k} (-1)^(i-1) e_{k-i} p_i``."""
    ps = [c * factorial(k) for k, c in enumerate(ch)]
    zero = FiberedClass(ring.zero(), ring.zero())
    es = [FiberedClass(ring.const(1), ring.zero())]
    for k in range(1, rank + 1):
        if k >= len(ps) or k > ring.truncation:
            es.append(zero)
            continue
        acc = zero
        for i in range(1, k + 1):
            acc = acc + es[k - i] * ps[i] * ((-1) ** (i - 1))
        es.append(acc * Fraction(1, k))
    return BundleData(rank, tuple(es[1:]))


def exp_class(x: FiberedClass) -> FiberedClass:
    """``ch`` of a line bundle with first Chern class ``x``."""
    out = FiberedClass(x.ring.const(1), x.ring.zero())
    term = out
    for n in range(1, x.ring.truncation + 1):
        term = term * x * Fraction(1, n)
        out = out + term
    return out


def twist(b: BundleData, m: int, method: str = "chern") -> BundleData:
    """Chern data of ``b (x) O(m)``.

    ``method="chern"`` uses ``c_k(E(x)L) = sum_i C(r-i, k-i) c_i(E) c1(L)^(k-i)``;
    ``method="ch"`` multiplies Chern characters and converts back.
    """
    ring = b.ring
    x = ring.z() * m
    if method == "chern":
        chern = []
        for k in range(1, b.rank + 1):
            acc = FiberedClass(ring.zero(), ring.zero())
            for i in range(0, k + 1):
                acc = acc + b.c(i) * (x ** (k - i)) * comb(b.rank - i, k - i)
            chern.append(acc)
        return BundleData(b.rank, tuple(chern))
    if method == "ch":
        ch = total(chern_character(b)) * exp_class(x)
        parts = [ch.homogeneous(k) for k in range(ring.truncation + 1)]
        return chern_from_character(ring, b.rank, parts)
    raise ChowError(f"unknown twist method {method!r}")


def todd_series(n: int) -> list[Fraction]:
    """Coefficients of ``x / (1 - e^-x)`` up to ``x^n``."""
    # invert (1 - e^-x)/x = sum_k (-1)^k x^k / (k+1)!
    a = [Fraction((-1) ** k, factorial(k + 1)) for k in range(n + 1)]
    inv = [Fraction(1)]
    for k in range(1, n + 1):
        inv.append(-sum(a[j] * inv[k - j] for j in range(1, k + 1)))
    return inv


def relative_todd(ring: Ring) -> FiberedClass:
    """``Td`` of the relative tangent bundle ``O(2)``: ``1 + z + z^2/3 + ...``."""
    coeffs = todd_series(ring.truncation)
    x = ring.z() * 2
    out = FiberedClass(ring.zero(), ring.zero())
    power = FiberedClass(ring.const(1), ring.zero())
    for c in coeffs:
        out = out + power * c
        power = power * x
    return out


def grr_pushforward_ch(b: BundleData) -> BaseClass:
    """``pi_*(ch(b) Td_pi)``: the Chern character of ``pi_* b`` when ``R^1 pi_* b = 0``.

    The vanishing of ``R^1`` is the caller's responsibility.
    """
    return pushforward(total(chern_character(b)) * relative_todd(b.ring))


def grr_c1_pushforward(b: BundleData) -> BaseClass:
    """``c_1(pi_* b) = [pi_*(ch(b) Td_pi)]_1`` (assumes ``R^1 pi_* b = 0``)."""
    return grr_pushforward_ch(b).homogeneous(1)
