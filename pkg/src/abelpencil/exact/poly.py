"""Exact multivariate polynomial arithmetic over the rationals.

A polynomial is a dict mapping dense exponent tuples to nonzero Fraction
coefficients; an ordered variable tuple fixes the meaning of each slot.
The variable 'x' (the curve coordinate) always sorts first, parameters and
auxiliary variables follow alphabetically, so that aligned polynomials
compare and combine deterministically.

The gcd machinery works recursively: contents are split off with respect
to a main variable and the primitive parts go through a fraction-free
subresultant remainder sequence.  Plain Euclid over Q(t)[x] explodes on
the inputs this package feeds it; the subresultant sequence keeps the
intermediate coefficients at determinant size.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd as _int_gcd

# Scalar field: arbitrary-precision rationals with canonical gcd-reduced,
# positive-denominator representation (Fraction guarantees both).
BigRational = Fraction


def _var_key(name: str):
    return (0, "") if name == "x" else (1, name)


def canonical_vars(names) -> tuple[str, ...]:
    return tuple(sorted(set(names), key=_var_key))


class MultiPoly:
    """Polynomial in a fixed tuple of variables with Fraction coefficients."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables, terms, *, _clean=True):
        self.vars = tuple(variables)
        if _clean:
            terms = {e: Fraction(c) for e, c in terms.items() if c != 0}
        self.terms = terms

    # ------------------------------------------------------------------
    # constructors

    @staticmethod
    def const(value, variables=()) -> "MultiPoly":
        c = Fraction(value)
        vs = canonical_vars(variables)
        if c == 0:
            return MultiPoly(vs, {}, _clean=False)
        return MultiPoly(vs, {(0,) * len(vs): c}, _clean=False)

    @staticmethod
    def var(name: str) -> "MultiPoly":
        return MultiPoly((name,), {(1,): Fraction(1)}, _clean=False)

    @staticmethod
    def zero(variables=()) -> "MultiPoly":
        return MultiPoly(canonical_vars(variables), {}, _clean=False)

    # ------------------------------------------------------------------
    # predicates and views

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in exp) for exp in self.terms)

    def constant_value(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def degree(self, name: str) -> int:
        """Degree in one variable; zero polynomial has degree -1."""
        if self.is_zero():
            return -1
        if name not in self.vars:
            return 0
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    def total_degree(self) -> int:
        if self.is_zero():
            return -1
        return max(sum(e) for e in self.terms)

    def used_vars(self) -> tuple[str, ...]:
        used = []
        for i, v in enumerate(self.vars):
            if any(e[i] for e in self.terms):
                used.append(v)
        return tuple(used)

    def restrict(self) -> "MultiPoly":
        """Drop variables that do not occur."""
        used = self.used_vars()
        if used == self.vars:
            return self
        idx = [self.vars.index(v) for v in used]
        terms = {tuple(e[i] for i in idx): c for e, c in self.terms.items()}
        return MultiPoly(used, terms, _clean=False)

    # ------------------------------------------------------------------
    # alignment

    def embed(self, variables) -> "MultiPoly":
        """Reinterpret over a superset of variables (canonically ordered)."""
        vs = canonical_vars(tuple(variables) + self.vars)
        if vs == self.vars:
            return self
        pos = [vs.index(v) for v in self.vars]
        terms = {}
        for e, c in self.terms.items():
            ne = [0] * len(vs)
            for p, k in zip(pos, e):
                ne[p] = k
            terms[tuple(ne)] = c
        return MultiPoly(vs, terms, _clean=False)

    def _align(self, other: "MultiPoly"):
        if self.vars == other.vars:
            return self, other
        vs = canonical_vars(self.vars + other.vars)
        return self.embed(vs), other.embed(vs)

    @staticmethod
    def _coerce(value, variables=()):
        if isinstance(value, MultiPoly):
            return value
        if isinstance(value, (int, Fraction)):
            return MultiPoly.const(value, variables)
        return NotImplemented

    # ------------------------------------------------------------------
    # arithmetic

    def __add__(self, other):
        other = MultiPoly._coerce(other, self.vars)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._align(other)
        terms = dict(a.terms)
        for e, c in b.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return MultiPoly(a.vars, terms, _clean=False)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()}, _clean=False)

    def __sub__(self, other):
        other = MultiPoly._coerce(other, self.vars)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if c == 0:
                return MultiPoly(self.vars, {}, _clean=False)
            return MultiPoly(self.vars, {e: k * c for e, k in self.terms.items()}, _clean=False)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = self._align(other)
        if len(a.terms) < len(b.terms):
            a, b = b, a
        terms = {}
        for ea, ca in a.terms.items():
            for eb, cb in b.terms.items():
                e = tuple(i + j for i, j in zip(ea, eb))
                s = terms.get(e, 0) + ca * cb
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        return MultiPoly(a.vars, terms, _clean=False)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = MultiPoly.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        other = MultiPoly._coerce(other, self.vars)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._align(other)
        return a.terms == b.terms

    __hash__ = None

    # ------------------------------------------------------------------
    # calculus and evaluation

    def diff(self, name: str) -> "MultiPoly":
        if name not in self.vars or self.is_zero():
            return MultiPoly(self.vars, {}, _clean=False)
        i = self.vars.index(name)
        terms = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = list(e)
            ne[i] -= 1
            terms[tuple(ne)] = c * e[i]
        return MultiPoly(self.vars, terms, _clean=False)

    def subs(self, values: dict) -> "MultiPoly":
        """Substitute Fractions for a subset of the variables."""
        keep = [i for i, v in enumerate(self.vars) if v not in values]
        sub = [(i, Fraction(values[v])) for i, v in enumerate(self.vars) if v in values]
        new_vars = tuple(self.vars[i] for i in keep)
        terms = {}
        for e, c in self.terms.items():
            for i, val in sub:
                c = c * val ** e[i]
            ne = tuple(e[i] for i in keep)
            s = terms.get(ne, 0) + c
            if s:
                terms[ne] = s
            else:
                terms.pop(ne, None)
        return MultiPoly(new_vars, terms, _clean=False)

    def eval_scalar(self, values: dict):
        """Evaluate completely; values may be Fractions, floats or complex."""
        total = 0
        for e, c in self.terms.items():
            term = Fraction(c)
            acc = term
            for i, v in enumerate(self.vars):
                acc = acc * values[v] ** e[i] if e[i] else acc
            total += acc
        return total

    # ------------------------------------------------------------------
    # univariate views

    def coeff_of(self, name: str, k: int) -> "MultiPoly":
        """Coefficient of name**k, returned over the same variable tuple."""
        if name not in self.vars:
            return self if k == 0 else MultiPoly(self.vars, {}, _clean=False)
        i = self.vars.index(name)
        terms = {}
        for e, c in self.terms.items():
            if e[i] == k:
                ne = list(e)
                ne[i] = 0
                terms[tuple(ne)] = c
        return MultiPoly(self.vars, terms, _clean=False)

    def as_univariate(self, name: str) -> list["MultiPoly"]:
        """Dense coefficient list [c0, c1, ...] with respect to one variable."""
        d = self.degree(name)
        if d < 0:
            return []
        return [self.coeff_of(name, k) for k in range(d + 1)]

    def shift(self, name: str, k: int) -> "MultiPoly":
        """Multiply by name**k."""
        if k == 0 or self.is_zero():
            return self
        p = self.embed((name,))
        i = p.vars.index(name)
        terms = {}
        for e, c in p.terms.items():
            ne = list(e)
            ne[i] += k
            terms[tuple(ne)] = c
        return MultiPoly(p.vars, terms, _clean=False)

    def leading(self):
        """(exponent, coefficient) of the lex-leading term."""
        e = max(self.terms)
        return e, self.terms[e]

    def lc(self, name: str) -> "MultiPoly":
        return self.coeff_of(name, self.degree(name))

    # ------------------------------------------------------------------
    # integer normalization

    def int_normalize(self):
        """Write self = scale * P with P integer, content 1, positive lex lc.

        Returns (scale, P); scale is a Fraction, zero maps to (0, 0).
        """
        if self.is_zero():
            return Fraction(0), self
        den = 1
        for c in self.terms.values():
            den = den * c.denominator // _int_gcd(den, c.denominator)
        num = 0
        for c in self.terms.values():
            num = _int_gcd(num, (c * den).numerator)
        scale = Fraction(num, den)
        inv = 1 / scale
        terms = {e: c * inv for e, c in self.terms.items()}
        P = MultiPoly(self.vars, terms, _clean=False)
        _, lead = P.leading()
        if lead < 0:
            P = -P
            scale = -scale
        return scale, P

    def primitive(self) -> "MultiPoly":
        return self.int_normalize()[1]

    # ------------------------------------------------------------------
    # printing (round-trips through the expression parser for integer forms)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        items = sorted(self.terms.items(), reverse=True)
        parts = []
        for e, c in items:
            mono = "*".join(
                v if k == 1 else f"{v}^{k}"
                for v, k in zip(self.vars, e)
                if k
            )
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                a = abs(c)
                body = (f"{a}*{mono}" if a.denominator == 1 else f"({a})*{mono}")
            parts.append(("- " if c < 0 else "+ ") + body)
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]

    def __repr__(self) -> str:
        return f"MultiPoly({self})"


# ----------------------------------------------------------------------
# exact division


def exact_div(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Divide exactly, peeling lex-leading terms; raises if not divisible."""
    if q.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    p, q = p._align(q)
    if p.is_zero():
        return p
    if q.is_constant():
        inv = 1 / q.constant_value()
        return p * inv
    eq, cq = q.leading()
    quot = {}
    rem = dict(p.terms)
    while rem:
        ep = max(rem)
        cp = rem[ep]
        em = tuple(a - b for a, b in zip(ep, eq))
        if any(k < 0 for k in em):
            raise ValueError("not an exact division")
        cm = cp / cq
        quot[em] = cm
        for e2, c2 in q.terms.items():
            e = tuple(a + b for a, b in zip(em, e2))
            s = rem.get(e, 0) - cm * c2
            if s:
                rem[e] = s
            else:
                rem.pop(e, None)
    return MultiPoly(p.vars, quot, _clean=False)


def divides(q: MultiPoly, p: MultiPoly) -> bool:
    try:
        exact_div(p, q)
        return True
    except ValueError:
        return False


# ----------------------------------------------------------------------
# pseudo-remainder and the subresultant sequence


def _prem(A: MultiPoly, B: MultiPoly, name: str) -> MultiPoly:
    """Fraction-free pseudo-remainder of A by B in the given variable."""
    dB = B.degree(name)
    lB = B.lc(name)
    R = A
    e = A.degree(name) - dB + 1
    while not R.is_zero() and R.degree(name) >= dB:
        dR = R.degree(name)
        lR = R.lc(name)
        R = lB * R - lR.shift(name, dR - dB) * B
        e -= 1
    if e > 0:
        R = lB ** e * R
    return R


def _subresultant_prs_gcd(P: MultiPoly, Q: MultiPoly, name: str) -> MultiPoly:
    """Gcd of two primitive polynomials in the main variable, up to content.

    Standard subresultant polynomial remainder sequence; the divisions by
    g*h**delta are exact, which is the whole point of the method.
    """
    if P.degree(name) < Q.degree(name):
        P, Q = Q, P
    one = MultiPoly.const(1, P.vars)
    g = one
    h = one
    while True:
        delta = P.degree(name) - Q.degree(name)
        R = _prem(P, Q, name)
        if R.is_zero():
            return Q
        if R.degree(name) == 0:
            return one
        P, Q = Q, exact_div(R, g * h ** delta)
        g = P.lc(name)
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = exact_div(g ** delta, h ** (delta - 1))


def _uni_int_gcd_degree(a: list[int], b: list[int]) -> int:
    """Degree of gcd of two integer coefficient lists (subresultant PRS)."""

    def deg(p):
        return len(p) - 1

    def strip(p):
        while p and p[-1] == 0:
            p.pop()
        return p

    def prem_int(A, B):
        dB = deg(B)
        lB = B[-1]
        R = A[:]
        e = deg(A) - dB + 1
        while R and deg(R) >= dB:
            dR = deg(R)
            lR = R[-1]
            R = [lB * c for c in R]
            for i, c in enumerate(B):
                R[i + dR - dB] -= lR * c
            strip(R)
            e -= 1
        if e > 0:
            m = lB ** e
            R = [m * c for c in R]
        return R

    A, B = strip(a[:]), strip(b[:])
    if not A:
        return deg(B)
    if not B:
        return deg(A)
    if deg(A) < deg(B):
        A, B = B, A
    g = h = 1
    while True:
        delta = deg(A) - deg(B)
        R = prem_int(A, B)
        if not R:
            return deg(B)
        if deg(R) == 0:
            return 0
        A, B = B, [c // (g * h ** delta) for c in R]
        g = A[-1]
        if delta == 1:
            h = g
        elif delta > 1:
            h = g ** delta // h ** (delta - 1)


_SPECIALIZE_RNG = random.Random(0x5eed)


def _probably_coprime(p: MultiPoly, q: MultiPoly, name: str) -> bool:
    """Specialize the other variables at random integers; degree-0 gcd there
    certifies a degree-0 primitive gcd here (leading coefficient preserved)."""
    others = [v for v in p.used_vars() + q.used_vars() if v != name]
    if not others:
        return False
    for _ in range(4):
        point = {v: Fraction(_SPECIALIZE_RNG.randint(2, 97)) for v in others}
        lp = p.lc(name).subs(point)
        if lp.is_zero() or not lp.is_constant() or lp.constant_value() == 0:
            continue
        pa = _coeff_ints(p, name, point)
        pb = _coeff_ints(q, name, point)
        if pa is None or pb is None:
            continue
        return _uni_int_gcd_degree(pa, pb) == 0
    return False


def _coeff_ints(p: MultiPoly, name: str, point: dict):
    coeffs = []
    den = 1
    for c in p.as_univariate(name):
        v = c.subs(point)
        if not v.is_constant():
            return None
        f = v.constant_value()
        den = den * f.denominator // _int_gcd(den, f.denominator)
        coeffs.append(f)
    return [int(c * den) for c in coeffs]


def content_in(p: MultiPoly, name: str) -> MultiPoly:
    """Gcd of the coefficients of p viewed as univariate in name."""
    coeffs = [c for c in p.as_univariate(name) if not c.is_zero()]
    g = MultiPoly.zero(p.vars)
    for c in coeffs:
        g = mv_gcd(g, c)
        if g.is_constant() and not g.is_zero():
            break
    return g


def mv_gcd(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Gcd over Q[vars], normalized integer-primitive with positive lex lc."""
    if p.is_zero():
        return q.primitive() if not q.is_zero() else q
    if q.is_zero():
        return p.primitive()
    p, q = p._align(q)
    if p.is_constant() or q.is_constant():
        return MultiPoly.const(1, p.vars)
    main = None
    for v in p.vars:
        if p.degree(v) > 0 or q.degree(v) > 0:
            main = v
            break
    if p.degree(main) == 0 or q.degree(main) == 0:
        low, high = (p, q) if p.degree(main) == 0 else (q, p)
        return mv_gcd(low, content_in(high, main))
    cp = content_in(p, main)
    cq = content_in(q, main)
    c = mv_gcd(cp, cq)
    pp = exact_div(p, cp)
    qq = exact_div(q, cq)
    # cheap exits before the remainder sequence
    a, b = (pp, qq) if pp.degree(main) <= qq.degree(main) else (qq, pp)
    if divides(a, b):
        h = a.primitive()
    elif _probably_coprime(pp, qq, main):
        h = MultiPoly.const(1, p.vars)
    else:
        raw = _subresultant_prs_gcd(pp, qq, main)
        h = exact_div(raw, content_in(raw, main)).primitive()
    return (c * h).primitive()


def mv_lcm(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    if p.is_zero() or q.is_zero():
        return MultiPoly.zero(p.vars)
    return exact_div(p * q, mv_gcd(p, q)).primitive()


# ----------------------------------------------------------------------
# resultants via Bareiss on the Sylvester matrix


def _det_bareiss(grid: list[list[MultiPoly]], variables) -> MultiPoly:
    """Exact determinant of a square grid of polynomials (Bareiss).

    Every division is by the previous pivot and is exact; pivots are chosen
    by lowest total degree to keep the intermediate minors small.
    """
    n = len(grid)
    if n == 0:
        return MultiPoly.const(1, variables)
    M = [[e.embed(variables) for e in row] for row in grid]
    sign = 1
    prev = MultiPoly.const(1, variables)
    for k in range(n - 1):
        piv = None
        best = None
        for i in range(k, n):
            for j in range(k, n):
                e = M[i][j]
                if not e.is_zero():
                    d = e.total_degree()
                    if best is None or d < best:
                        best = d
                        piv = (i, j)
        if piv is None:
            return MultiPoly.zero(variables)
        pi, pj = piv
        if pi != k:
            M[k], M[pi] = M[pi], M[k]
            sign = -sign
        if pj != k:
            for row in M:
                row[k], row[pj] = row[pj], row[k]
            sign = -sign
        pivot = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = exact_div(pivot * M[i][j] - M[i][k] * M[k][j], prev)
            M[i][k] = MultiPoly.zero(variables)
        prev = pivot
    det = M[n - 1][n - 1]
    return -det if sign < 0 else det


def resultant(p: MultiPoly, q: MultiPoly, name: str) -> MultiPoly:
    """Resultant with respect to one variable, exact over the remaining ones."""
    p, q = p._align(q)
    n, m = p.degree(name), q.degree(name)
    if n < 0 or m < 0:
        return MultiPoly.zero(p.vars)
    if n == 0 and m == 0:
        return MultiPoly.const(1, p.vars)
    pc = p.as_univariate(name)
    qc = q.as_univariate(name)
    size = n + m
    zero = MultiPoly.zero(p.vars)
    grid = []
    for i in range(m):
        row = [zero] * size
        for k, c in enumerate(reversed(pc)):
            row[i + k] = c
        grid.append(row)
    for i in range(n):
        row = [zero] * size
        for k, c in enumerate(reversed(qc)):
            row[i + k] = c
        grid.append(row)
    return _det_bareiss(grid, p.vars)
