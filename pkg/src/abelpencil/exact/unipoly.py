"""Univariate polynomials in x with rational-function coefficients.

The de Rham reduction works over the field Q(t1,..,td), so polynomials in
x live here as dense coefficient lists of MultiRational.  gcd goes through
the fraction-free subresultant sequence after clearing denominators; the
extended-Euclid cofactors stay in the field, where the degrees are tiny
(bounded by deg f = 2g+1).
"""

from __future__ import annotations

from fractions import Fraction

from .poly import MultiPoly, exact_div, mv_gcd, mv_lcm
from .ratfun import MultiRational, RAT_ONE, RAT_ZERO


class XPoly:
    """Dense list of MultiRational coefficients; index = power of x."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [MultiRational._coerce(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = cs

    @staticmethod
    def from_multipoly(p: MultiPoly) -> "XPoly":
        return XPoly([MultiRational.from_poly(c) for c in p.as_univariate("x")])

    @staticmethod
    def monomial(k: int, coeff=1) -> "XPoly":
        return XPoly([RAT_ZERO] * k + [MultiRational._coerce(coeff)])

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self) -> MultiRational:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, k: int) -> MultiRational:
        return self.coeffs[k] if 0 <= k <= self.degree() else RAT_ZERO

    def __add__(self, other: "XPoly") -> "XPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return XPoly([self[k] + other[k] for k in range(n)])

    def __neg__(self) -> "XPoly":
        return XPoly([-c for c in self.coeffs])

    def __sub__(self, other: "XPoly") -> "XPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, MultiPoly, MultiRational)):
            c = MultiRational._coerce(other)
            return XPoly([a * c for a in self.coeffs])
        out = [RAT_ZERO] * (len(self.coeffs) + len(other.coeffs))
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return XPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return self.coeffs == other.coeffs

    __hash__ = None

    def shift(self, k: int) -> "XPoly":
        if self.is_zero():
            return self
        return XPoly([RAT_ZERO] * k + self.coeffs)

    def monic(self) -> "XPoly":
        if self.is_zero():
            return self
        inv = self.lc().inverse()
        return XPoly([c * inv for c in self.coeffs])

    def diff_x(self) -> "XPoly":
        return XPoly([c * k for k, c in enumerate(self.coeffs)][1:])

    def diff_param(self, name: str) -> "XPoly":
        return XPoly([c.diff(name) for c in self.coeffs])

    def to_multipoly(self) -> MultiPoly:
        """Only valid when all coefficients are polynomial."""
        acc = MultiPoly.zero(("x",))
        for k, c in enumerate(self.coeffs):
            acc = acc + c.as_poly().shift("x", k)
        return acc

    def clear_denominators(self) -> MultiPoly:
        """Smallest polynomial multiple: self * lcm(denominators), primitive."""
        if self.is_zero():
            return MultiPoly.zero(("x",))
        acc, _ = self.clear_denominators_raw()
        return acc.primitive()

    def clear_denominators_raw(self):
        """(P, den) with P = self * den as a MultiPoly, den the lcm of
        the coefficient denominators."""
        den = MultiPoly.const(1)
        for c in self.coeffs:
            den = mv_lcm(den, c.den)
        acc = MultiPoly.zero(("x",))
        for k, c in enumerate(self.coeffs):
            acc = acc + (c.num * exact_div(den, c.den)).shift("x", k)
        return acc, den

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k in range(self.degree(), -1, -1):
            c = self[k]
            if c.is_zero():
                continue
            mono = "1" if k == 0 else ("x" if k == 1 else f"x^{k}")
            parts.append(f"({c})*{mono}" if k else f"({c})")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"XPoly({self})"


X_ZERO = XPoly([])
X_ONE = XPoly([RAT_ONE])


def divmod_x(a: XPoly, b: XPoly) -> tuple[XPoly, XPoly]:
    """Field division with remainder."""
    if b.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    q = [RAT_ZERO] * max(0, a.degree() - b.degree() + 1)
    r = list(a.coeffs)
    inv = b.lc().inverse()
    db = b.degree()
    while len(r) - 1 >= db and r:
        k = len(r) - 1 - db
        c = r[-1] * inv
        q[k] = c
        for j, bc in enumerate(b.coeffs):
            r[k + j] = r[k + j] - c * bc
        while r and r[-1].is_zero():
            r.pop()
    return XPoly(q), XPoly(r)


# ----------------------------------------------------------------------
# polynomial-coefficient univariate helpers (dense lists of MultiPoly)
#
# The de Rham reduction and the extended subresultant run here: every
# coefficient is a MultiPoly, divisions only happen against monic f or as
# exact subresultant steps, and the single common denominator is tracked
# by the caller.  This avoids per-operation gcd normalization entirely.


def pp_strip(a: list[MultiPoly]) -> list[MultiPoly]:
    while a and a[-1].is_zero():
        a.pop()
    return a


def pp_from_multipoly(p: MultiPoly) -> list[MultiPoly]:
    return pp_strip(p.as_univariate("x"))


def pp_add(a, b):
    n = max(len(a), len(b))
    zero = MultiPoly.zero(())
    out = []
    for k in range(n):
        x = a[k] if k < len(a) else zero
        y = b[k] if k < len(b) else zero
        out.append(x + y)
    return pp_strip(out)


def pp_scale(a, c):
    return pp_strip([p * c for p in a])


def pp_mul(a, b):
    if not a or not b:
        return []
    zero = MultiPoly.zero(())
    out = [zero] * (len(a) + len(b) - 1)
    for i, p in enumerate(a):
        if p.is_zero():
            continue
        for j, q in enumerate(b):
            if q.is_zero():
                continue
            out[i + j] = out[i + j] + p * q
    return pp_strip(out)


def pp_shift(a, k):
    if not a:
        return []
    return [MultiPoly.zero(())] * k + list(a)


def pp_diff_x(a):
    return pp_strip([p * k for k, p in enumerate(a)][1:])


def pp_divmod_monic(a, f):
    """Divide by a monic divisor; quotient and remainder stay polynomial."""
    if not (f and f[-1].is_constant() and f[-1].constant_value() == 1):
        raise ValueError("divisor must be monic")
    df = len(f) - 1
    r = list(a)
    q = [MultiPoly.zero(())] * max(0, len(a) - df)
    while len(r) - 1 >= df and r:
        k = len(r) - 1 - df
        c = r[-1]
        q[k] = c
        for j, fc in enumerate(f):
            r[k + j] = r[k + j] - c * fc
        pp_strip(r)
    return q, r


def _pseudo_divmod(A: MultiPoly, B: MultiPoly, name: str):
    """(Q, R) with lc(B)**(deg A - deg B + 1) * A = Q*B + R, all polynomial."""
    dB = B.degree(name)
    lB = B.lc(name)
    Q = MultiPoly.zero(A.vars)
    R = A
    e = A.degree(name) - dB + 1
    while not R.is_zero() and R.degree(name) >= dB:
        dR = R.degree(name)
        s = R.lc(name).shift(name, dR - dB)
        Q = lB * Q + s
        R = lB * R - s * B
        e -= 1
    if e > 0:
        m = lB ** e
        Q = m * Q
        R = m * R
    return Q, R


def extended_subresultant(A: MultiPoly, B: MultiPoly, name: str):
    """Last PRS element r with cofactors: r = U*A + V*B, everything polynomial.

    The cofactor updates divide by the same beta as the remainders; those
    quotients are Sylvester minors, so the divisions are exact.
    """
    if A.degree(name) < B.degree(name):
        r, V, U = extended_subresultant(B, A, name)
        return r, U, V
    one = MultiPoly.const(1, A.vars)
    zero = MultiPoly.zero(A.vars)
    R0, R1 = A, B
    U0, V0 = one, zero
    U1, V1 = zero, one
    g = h = one
    while True:
        delta = R0.degree(name) - R1.degree(name)
        Q, R = _pseudo_divmod(R0, R1, name)
        if R.is_zero():
            return R1, U1, V1
        m = R1.lc(name) ** (delta + 1)
        beta = g * h ** delta
        R2 = exact_div(R, beta)
        U2 = exact_div(m * U0 - Q * U1, beta)
        V2 = exact_div(m * V0 - Q * V1, beta)
        if R2.degree(name) == 0:
            return R2, U2, V2
        R0, R1 = R1, R2
        U0, V0, U1, V1 = U1, V1, U2, V2
        g = R0.lc(name)
        if delta == 1:
            h = g
        elif delta > 1:
            h = exact_div(g ** delta, h ** (delta - 1))


def poly_gcd(a, b) -> XPoly:
    """Monic gcd in x over the rational-function field.

    Denominators are cleared and the gcd of the resulting polynomials is
    computed by the fraction-free subresultant sequence (mv_gcd with x as
    the main variable), then made monic.
    """
    if isinstance(a, MultiPoly):
        a = XPoly.from_multipoly(a)
    if isinstance(b, MultiPoly):
        b = XPoly.from_multipoly(b)
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd undefined")
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    pa = a.clear_denominators()
    pb = b.clear_denominators()
    g = mv_gcd(pa, pb)
    gx = XPoly.from_multipoly(g.embed(("x",)))
    return gx.monic()


def bezout_cofactors(a, b) -> tuple[XPoly, XPoly]:
    """u, v with u*a + v*b = 1, deg u < deg b, deg v < deg a.

    Runs the extended subresultant sequence on denominator-cleared inputs,
    so no field arithmetic happens until the single final scaling.  Inputs
    must be coprime over the parameter field.
    """
    if isinstance(a, MultiPoly):
        a = XPoly.from_multipoly(a)
    if isinstance(b, MultiPoly):
        b = XPoly.from_multipoly(b)
    if a.is_zero() or b.is_zero():
        raise ValueError("not coprime")
    if a.degree() == 0:
        return XPoly([a.lc().inverse()]), X_ZERO
    if b.degree() == 0:
        return X_ZERO, XPoly([b.lc().inverse()])
    A, da = a.clear_denominators_raw()
    B, db = b.clear_denominators_raw()
    r, U, V = extended_subresultant(A, B, "x")
    if r.degree("x") != 0:
        raise ValueError("not coprime")
    # r = U*A + V*B = (U*da)*a + (V*db)*b, so divide the cofactors by r
    rinv = MultiRational.from_poly(r.restrict()).inverse()
    mu = MultiRational.from_poly(da) * rinv
    mv = MultiRational.from_poly(db) * rinv
    u = XPoly([MultiRational.from_poly(c) * mu for c in U.as_univariate("x")])
    v = XPoly([MultiRational.from_poly(c) * mv for c in V.as_univariate("x")])
    # polynomial-level verification of the identity, no field ops
    lhs = pp_add(pp_mul(U.as_univariate("x"), A.as_univariate("x")),
                 pp_mul(V.as_univariate("x"), B.as_univariate("x")))
    if len(lhs) != 1 or not (lhs[0] - r).is_zero():
        raise AssertionError("Bezout identity failed to verify")
    return u, v


def bezout_split_data(f: MultiPoly):
    """(U, V, r) polynomial with U*f + V*f_x = r, r depending on t only.

    This is the precomputed data the de Rham reduction consumes; r is the
    subresultant scalar (a discriminant multiple)."""
    fx = f.diff("x")
    r, U, V = extended_subresultant(f, fx, "x")
    if r.degree("x") != 0:
        raise ValueError("f is not squarefree over the parameter field")
    return U, V, r.restrict()
