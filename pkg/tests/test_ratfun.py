import random
from fractions import Fraction

import pytest

from abelpencil.exact.poly import MultiPoly, mv_gcd
from abelpencil.exact.ratfun import MultiRational, RAT_ONE, RAT_ZERO

x = MultiPoly.var("x")
t = MultiPoly.var("t")


def is_canonical(r: MultiRational) -> bool:
    """The stored form is gcd-reduced, integer, jointly primitive, and the
    denominator's lex-leading coefficient is positive."""
    if r.num.is_zero():
        return r.den.is_constant() and r.den.constant_value() == 1
    if not mv_gcd(r.num, r.den).is_constant():
        return False
    for p in (r.num, r.den):
        for c in p.terms.values():
            if c.denominator != 1:
                return False
    _, lead = r.den.leading()
    if lead <= 0:
        return False
    nscale, _ = r.num.int_normalize()
    dscale, _ = r.den.int_normalize()
    from math import gcd

    return gcd(abs(nscale.numerator), abs(dscale.numerator)) == 1


def test_construction_reduces():
    r = MultiRational((t ** 2 - 1) * x, (t - 1) * 2)
    assert str(r) == "(x*t + x)/2"
    assert is_canonical(r)


def test_zero_and_one():
    assert RAT_ZERO.is_zero()
    assert (RAT_ONE - 1).is_zero()
    with pytest.raises(ZeroDivisionError):
        MultiRational(x, MultiPoly.zero())


def test_sign_normalization():
    r = MultiRational(MultiPoly.const(1), -t)
    _, lead = r.den.leading()
    assert lead > 0
    assert str(r) == "-1/t"


def test_arithmetic_closure_random():
    rng = random.Random(3)

    def rand_rat():
        num = MultiPoly.zero(("t",))
        for _ in range(3):
            num = num + MultiPoly.const(rng.randint(-5, 5)) * t ** rng.randint(0, 3)
        den = t ** rng.randint(0, 2) + MultiPoly.const(rng.randint(1, 4))
        return MultiRational(num, den)

    for _ in range(40):
        a, b = rand_rat(), rand_rat()
        for r in (a + b, a - b, a * b):
            assert is_canonical(r)
        if not b.is_zero():
            assert is_canonical(a / b)


def test_field_laws():
    a = MultiRational(x, t)
    b = MultiRational(t - 1, t + 1)
    assert (a + b) - b == a
    assert (a * b) / b == a
    assert a * b == b * a


def test_pow_negative():
    a = MultiRational(x, t)
    assert a ** -2 == MultiRational(t ** 2, x ** 2)


def test_diff_quotient_rule():
    r = MultiRational(MultiPoly.const(1), t * 6)
    assert r.diff("t") == MultiRational(MultiPoly.const(-1), 6 * t ** 2)
    q = MultiRational(t ** 2, t - 1)
    lhs = q.diff("t")
    assert lhs == MultiRational(t ** 2 - 2 * t, (t - 1) ** 2)


def test_eval_and_subs():
    r = MultiRational(x + t, t - 1)
    assert r.subs({"t": Fraction(2)}) == MultiRational.from_poly(x + 2)
    assert r.eval_scalar({"x": Fraction(1), "t": Fraction(3)}) == Fraction(2)
    with pytest.raises(ZeroDivisionError):
        r.eval_scalar({"x": Fraction(0), "t": Fraction(1)})


def test_str_unambiguous():
    r = MultiRational(MultiPoly.const(1), 3 * t)
    assert str(r) == "1/(3*t)"
