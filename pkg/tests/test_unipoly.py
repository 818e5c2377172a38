import random
from fractions import Fraction

import pytest

from abelpencil.exact.poly import MultiPoly, mv_gcd
from abelpencil.exact.ratfun import MultiRational
from abelpencil.exact.unipoly import (
    XPoly,
    X_ONE,
    bezout_cofactors,
    divmod_x,
    extended_subresultant,
    poly_gcd,
)

x = MultiPoly.var("x")
t = MultiPoly.var("t")


def xp(p: MultiPoly) -> XPoly:
    return XPoly.from_multipoly(p)


def test_gcd_common_factor():
    g = poly_gcd(x ** 2 - 1, x - 1)
    assert g == xp(x - 1)


def test_gcd_with_zero_is_monic_identity():
    g = poly_gcd(3 * x - 3, MultiPoly.zero(("x",)))
    assert g == xp(x - 1)
    with pytest.raises(ValueError, match="gcd undefined"):
        poly_gcd(MultiPoly.zero(("x",)), MultiPoly.zero(("x",)))


def test_gcd_coprime_over_function_field():
    g = poly_gcd(x ** 3 - t, 3 * x ** 2)
    assert g == X_ONE


def test_gcd_divides_both():
    rng = random.Random(5)
    for _ in range(10):
        c = x ** 2 + rng.randint(-4, 4) * x + t
        a = c * (x + rng.randint(-3, 3))
        b = c * (x ** 2 - rng.randint(0, 3))
        g = poly_gcd(a, b)
        _, ra = divmod_x(xp(a), g)
        _, rb = divmod_x(xp(b), g)
        assert ra.is_zero() and rb.is_zero()


def test_bezout_isotrivial_cubic():
    u, v = bezout_cofactors(x ** 3 - t, 3 * x ** 2)
    assert u == XPoly([MultiRational(MultiPoly.const(-1), t)])
    assert v == XPoly([0, MultiRational(MultiPoly.const(1), 3 * t)])


def test_bezout_degree_zero_cofactor():
    u, v = bezout_cofactors(x - 1, MultiPoly.const(1, ("x",)))
    assert u.is_zero()
    assert v == X_ONE


def test_bezout_legendre_denominators():
    # cofactors are unique given the degree bounds; their denominators are
    # the full resultant t^2 (t-1)^2, and the identity must expand to 1
    a = x * (x - 1) * (x - t)
    b = a.diff("x")
    u, v = bezout_cofactors(a, b)
    assert u.degree() < 2 and v.degree() < 3
    res = (t * (t - 1)) ** 2
    for c in u.coeffs + v.coeffs:
        if not c.is_zero():
            assert mv_gcd(c.den, res) == c.den.primitive()
    assert u * xp(a) + v * xp(b) == X_ONE


def test_bezout_not_coprime():
    with pytest.raises(ValueError, match="not coprime"):
        bezout_cofactors((x - 1) * (x - t), (x - 1) * (x + 1))


def test_extended_subresultant_identity_random():
    rng = random.Random(13)
    for _ in range(12):
        A = x ** 4 + rng.randint(-3, 3) * t * x ** 2 + rng.randint(-3, 3) * x + t
        B = A.diff("x") if rng.random() < 0.5 else x ** 2 + rng.randint(-3, 3) * t
        r, U, V = extended_subresultant(A, B, "x")
        assert U * A + V * B == r


def test_divmod_x_field():
    a = xp(x ** 3 - t)
    b = XPoly([MultiRational(t, MultiPoly.const(1)), MultiRational.from_poly(1)])  # x + t
    q, r = divmod_x(a, b)
    assert q * b + r == a
    assert r.degree() < b.degree()
