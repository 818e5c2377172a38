"""Exact rational functions: quotients of MultiPoly with canonical form.

Every MultiRational is kept fully reduced: gcd(num, den) = 1, both parts
integer with joint content 1, and the denominator's lex-leading coefficient
positive.  Arithmetic cross-cancels before multiplying, which is what keeps
the Gauss-Manin entries and the curvature checks from swelling.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd

from .poly import MultiPoly, exact_div, mv_gcd


class MultiRational:
    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: MultiPoly, *, _canonical=False):
        if _canonical:
            self.num = num
            self.den = den
            return
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        num, den = num._align(den)
        if num.is_zero():
            self.num = num
            self.den = MultiPoly.const(1, den.vars)
            return
        g = mv_gcd(num, den)
        if not g.is_constant():
            num = exact_div(num, g)
            den = exact_div(den, g)
        sn, pn = num.int_normalize()
        sd, pd = den.int_normalize()
        scale = sn / sd  # pd has positive leading coefficient already
        a, b = scale.numerator, scale.denominator
        self.num = pn * a
        self.den = pd * b

    # ------------------------------------------------------------------

    @staticmethod
    def from_poly(p) -> "MultiRational":
        if isinstance(p, (int, Fraction)):
            p = MultiPoly.const(p)
        if p.is_zero():
            one = MultiPoly.const(1, p.vars)
            return MultiRational(p, one, _canonical=True)
        # pull the coefficient denominators into den so num stays integer
        scale, pn = p.int_normalize()
        num = pn * scale.numerator
        den = MultiPoly.const(scale.denominator, p.vars)
        return MultiRational(num, den, _canonical=True)

    @staticmethod
    def _coerce(value):
        if isinstance(value, MultiRational):
            return value
        if isinstance(value, (int, Fraction, MultiPoly)):
            return MultiRational.from_poly(value)
        return NotImplemented

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        return self.num.constant_value() / self.den.constant_value()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_poly(self) -> MultiPoly:
        if not self.is_polynomial():
            raise ValueError("denominator is not constant")
        return self.num * (1 / self.den.constant_value())

    # ------------------------------------------------------------------
    # arithmetic

    def __add__(self, other):
        other = MultiRational._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.den == other.den:
            return MultiRational(self.num + other.num, self.den)
        g = mv_gcd(self.den, other.den)
        if g.is_constant():
            num = self.num * other.den + other.num * self.den
            return MultiRational(num, self.den * other.den)
        db = exact_div(self.den, g)
        dd = exact_div(other.den, g)
        num = self.num * dd + other.num * db
        return MultiRational(num, db * dd * g)

    __radd__ = __add__

    def __neg__(self):
        return MultiRational(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        other = MultiRational._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = MultiRational._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return MultiRational.from_poly(0)
        g1 = mv_gcd(self.num, other.den)
        g2 = mv_gcd(other.num, self.den)
        a = self.num if g1.is_constant() else exact_div(self.num, g1)
        d = other.den if g1.is_constant() else exact_div(other.den, g1)
        c = other.num if g2.is_constant() else exact_div(other.num, g2)
        b = self.den if g2.is_constant() else exact_div(self.den, g2)
        return MultiRational(a * c, b * d)

    __rmul__ = __mul__

    def inverse(self) -> "MultiRational":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return MultiRational(self.den, self.num)

    def __truediv__(self, other):
        other = MultiRational._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        num, den = self.num ** n, self.den ** n
        return MultiRational(num, den, _canonical=True)

    def __eq__(self, other):
        other = MultiRational._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    __hash__ = None

    # ------------------------------------------------------------------

    def diff(self, name: str) -> "MultiRational":
        num = self.num.diff(name) * self.den - self.num * self.den.diff(name)
        return MultiRational(num, self.den * self.den)

    def subs(self, values: dict) -> "MultiRational":
        return MultiRational(self.num.subs(values), self.den.subs(values))

    def eval_scalar(self, values: dict):
        den = self.den.eval_scalar(values)
        if den == 0:
            raise ZeroDivisionError("denominator vanishes at the point")
        return self.num.eval_scalar(values) / den

    def used_vars(self):
        return tuple(dict.fromkeys(self.num.used_vars() + self.den.used_vars()))

    def __str__(self) -> str:
        if self.den.is_constant() and self.den.constant_value() == 1:
            return str(self.num)
        n = str(self.num)
        if len(self.num.terms) > 1 or any(ch in n for ch in "*^/ "):
            n = f"({n})"
        d = str(self.den)
        if len(self.den.terms) > 1 or any(ch in d for ch in "*^/ "):
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self) -> str:
        return f"MultiRational({self})"


RAT_ZERO = MultiRational.from_poly(0)
RAT_ONE = MultiRational.from_poly(1)
