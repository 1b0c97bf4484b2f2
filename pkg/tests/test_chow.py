import random
from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hurwitzpic.chow import (
    BundleData,
    ChowError,
    FiberedClass,
    Symbol,
    chern_character,
    chern_from_character,
    default_truncation,
    exp_class,
    grr_c1_pushforward,
    line_bundle,
    make_ring,
    pushforward,
    relative_todd,
    todd_series,
    total,
    twist,
    universal_bundle,
    universal_ring,
)

RING4 = make_ring([("a1", 1), ("a2", 2), ("a2p", 1), ("a3", 3), ("a3p", 2), ("c2", 2)], 4)


def random_base(rng, ring=RING4, max_deg=None, terms=4):
    """Random class: a sum of scaled products of generators."""
    max_deg = ring.truncation if max_deg is None else max_deg
    out = ring.const(Fraction(rng.randint(-3, 3), rng.randint(1, 3)))
    names = [s.name for s in ring.symbols]
    for _ in range(rng.randint(0, terms)):
        mono = ring.const(Fraction(rng.randint(-4, 4), rng.randint(1, 4)))
        deg = 0
        for _ in range(rng.randint(1, 3)):
            name = rng.choice(names)
            d = ring.symbols[ring.index(name)].degree
            if deg + d > max_deg:
                break
            mono = mono * ring.gen(name)
            deg += d
        out = out + mono
    return out


def random_fibered(rng, ring=RING4):
    return FiberedClass(random_base(rng, ring), random_base(rng, ring, ring.truncation - 1))


def random_bundle(rng, ring, rank):
    """Chern classes with c_i of pure degree i, built from random pieces."""
    chern = []
    for i in range(1, rank + 1):
        f0 = random_base(rng, ring).homogeneous(i)
        f1 = random_base(rng, ring).homogeneous(i - 1)
        chern.append(FiberedClass(f0, f1))
    return BundleData(rank, tuple(chern))


# -- ring construction -------------------------------------------------------

def test_make_ring_examples():
    r = make_ring([Symbol("a1", 1), Symbol("a2", 2), Symbol("a2p", 1), Symbol("c2", 2)], 3)
    assert r.truncation == 3 and "a2p" in r
    with pytest.raises(ChowError):
        make_ring([("a1", 1), ("a1", 1)], 3)
    with pytest.raises(ChowError):
        make_ring([("a1", 1)], 0)
    with pytest.raises(ChowError):
        make_ring([("a1", 0)], 3)


def test_truncation_env(monkeypatch):
    monkeypatch.delenv("PIC_TRUNCATION_DEGREE", raising=False)
    assert default_truncation() == 3
    monkeypatch.setenv("PIC_TRUNCATION_DEGREE", "5")
    assert universal_ring([(2, "a")]).truncation == 5
    monkeypatch.setenv("PIC_TRUNCATION_DEGREE", "1")
    with pytest.raises(ChowError):
        default_truncation()


def test_universal_bundle_shape():
    ring = universal_ring([(3, "a")])
    e = universal_bundle(3, 7, "a", ring)
    assert e.c(1) == FiberedClass(ring.gen("a1"), ring.const(7))
    assert e.c(2) == FiberedClass(ring.gen("a2"), ring.gen("a2p"))
    assert e.c(3) == FiberedClass(ring.gen("a3"), ring.gen("a3p"))
    x = universal_bundle(1, 0, "x")
    assert x.c(1).f1.is_zero() and str(x.c(1)) == "x1"
    assert universal_bundle(2, 5, "e").c(1).f1 == universal_bundle(2, 5, "e").ring.const(5)


def test_truncation_drops_high_degree():
    ring = make_ring([("a1", 1), ("c2", 2)], 3)
    a1 = ring.gen("a1")
    assert (a1 ** 4).is_zero()
    assert (a1 ** 3).degrees() == {3}
    # f1 of a fibered class lives one degree lower
    assert (ring.z() * ring.pullback(a1 ** 2) * ring.pullback(a1)).is_zero()


def test_rendering_is_canonical():
    ring = make_ring([("a2p", 1), ("a1", 1), ("c2", 2)], 3)
    cls = ring.gen("a2p") * (-1) + ring.gen("a1") * 8
    assert str(cls) == "8*a1 - a2p"
    assert str(ring.zero()) == "0"


# -- z reduction and pushforward ---------------------------------------------

def test_z_cubed():
    ring = RING4
    z = ring.z()
    c2 = ring.pullback(ring.gen("c2"))
    assert (z * z) * z == z * (z * z)
    assert z * z * z == -(c2 * z)
    assert z * z == -c2


def test_pushforward_examples():
    ring = RING4
    assert pushforward(ring.z()) == ring.const(1)
    assert pushforward(ring.pullback(ring.gen("a1") * ring.gen("a2p"))).is_zero()
    for r in range(1, 5):
        for d in range(0, 8):
            e = universal_bundle(r, d)
            ch2 = chern_character(e, 2)[2]
            expected = e.ring.linear({"a1": d, "a2p": -1} if r > 1 else {"a1": d})
            assert pushforward(ch2) == expected


def test_ring_laws_500_pairs():
    rng = random.Random(2026)
    for _ in range(500):
        x, y, w = (random_fibered(rng) for _ in range(3))
        assert x * y == y * x
        assert (x * y) * w == x * (y * w)
        assert x * (y + w) == x * y + x * w
        assert (x + y) - y == x
        a, b, c = (random_base(rng) for _ in range(3))
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_projection_formula_and_pi_lower_star_pullback():
    rng = random.Random(41)
    for _ in range(500):
        alpha = random_base(rng)
        beta = random_fibered(rng)
        lhs = pushforward(RING4.pullback(alpha) * beta)
        rhs = (alpha * pushforward(beta)).truncate(RING4.truncation - 1)
        assert lhs == rhs
        assert pushforward(RING4.pullback(alpha)).is_zero()


# -- characteristic classes --------------------------------------------------

def test_todd_series_coefficients():
    assert todd_series(6) == [1, Fraction(1, 2), Fraction(1, 12), 0, Fraction(-1, 720), 0, Fraction(1, 30240)]


def test_relative_todd_leading_terms():
    ring = make_ring([("c2", 2)], 4)
    td = relative_todd(ring)
    z = ring.z()
    expected = 1 + z + z * z * Fraction(1, 3) + (z ** 4) * Fraction(-16, 720)
    assert td == expected


def test_chern_character_low_terms():
    ring = RING4
    assert chern_character(BundleData(3, tuple(FiberedClass(ring.zero(), ring.zero()) for _ in range(3))))[0] == \
        FiberedClass(ring.const(3), ring.zero())
    z_line = line_bundle(ring.z())
    ch = chern_character(z_line, 2)
    assert ch[2] == ring.pullback(ring.gen("c2")) * Fraction(-1, 2)
    e = universal_bundle(3, 4, "a", ring)
    c1, c2, c3 = e.c(1), e.c(2), e.c(3)
    ch = chern_character(e, 3)
    assert ch[2] == c1 * c1 * Fraction(1, 2) - c2
    assert ch[3] == c1 ** 3 * Fraction(1, 6) - c1 * c2 * Fraction(1, 2) + c3 * Fraction(1, 2)


def test_chern_character_roundtrip():
    rng = random.Random(8)
    for _ in range(100):
        rank = rng.randint(1, 4)
        b = random_bundle(rng, RING4, rank)
        ch = chern_character(b)
        assert chern_from_character(RING4, rank, ch) == b


def _tensor_line(b, x):
    """c(E (x) L) from c(E) and c1(L) = x; binomial formula, not via ch."""
    chern = []
    for k in range(1, b.rank + 1):
        acc = FiberedClass(b.ring.zero(), b.ring.zero())
        for i in range(k + 1):
            acc = acc + b.c(i) * x ** (k - i) * comb(b.rank - i, k - i)
        chern.append(acc)
    return BundleData(b.rank, tuple(chern))


def test_ch_multiplicative_500_pairs():
    rng = random.Random(77)
    for _ in range(500):
        b = random_bundle(rng, RING4, rng.randint(1, 3))
        x = random_fibered(rng).homogeneous(1)
        lhs = total(chern_character(_tensor_line(b, x)))
        rhs = total(chern_character(b)) * exp_class(x)
        assert lhs == rhs


def test_ch_of_twist_is_ch_times_exponential():
    rng = random.Random(13)
    for _ in range(200):
        b = random_bundle(rng, RING4, rng.randint(1, 4))
        m = rng.randint(-3, 3)
        z = RING4.z()
        series = sum((z ** n * Fraction(m ** n, factorial(n)) for n in range(1, 5)),
                     FiberedClass(RING4.const(1), RING4.zero()))
        got = chern_character(twist(b, m))
        want = total(chern_character(b)) * series
        for k in range(5):
            assert got[k] == want.homogeneous(k)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(0, 20), st.integers(-4, 4))
def test_twist_two_paths_agree(r, d, m):
    e = universal_bundle(r, d)
    assert twist(e, m, "chern") == twist(e, m, "ch")


def test_twist_examples():
    ring = universal_ring([(3, "a")])
    e = universal_bundle(3, 9, "a", ring)
    assert twist(e, 0) == e
    zero_line = line_bundle(FiberedClass(ring.zero(), ring.zero()))
    assert twist(zero_line, 5).c(1) == ring.z() * 5
    for r in range(1, 5):
        for d in range(0, 10):
            u = universal_bundle(r, d)
            t = twist(u, -1)
            assert t.c(1) == u.c(1) - u.ring.z() * r
            assert t.c(1) == twist(u, -1, "ch").c(1)
    with pytest.raises(ChowError):
        twist(e, 1, "bogus")


# -- GRR ---------------------------------------------------------------------

@pytest.mark.parametrize("r", range(1, 6))
def test_grr_sweep(r):
    for d in range(0, 21):
        e = universal_bundle(r, d)
        a2p = {"a2p": -1} if r > 1 else {}
        t1 = grr_c1_pushforward(twist(e, -1))
        u1 = grr_c1_pushforward(e)
        assert t1 == e.ring.linear({"a1": d, **a2p})
        assert u1 == e.ring.linear({"a1": d + 1, **a2p})
        assert grr_c1_pushforward(twist(e, -2)) == e.ring.linear({"a1": d - 1, **a2p})


def test_grr_exports_integral_forms():
    e = universal_bundle(4, 11)
    assert grr_c1_pushforward(e).integral_linear_form() == {"a1": 12, "a2p": -1}
    half = e.ring.gen("a1") * Fraction(1, 2)
    with pytest.raises(ChowError):
        half.integral_linear_form()
