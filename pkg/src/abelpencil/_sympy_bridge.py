"""Conversions to sympy, used only where this package deliberately buys
instead of builds: factoring polynomials over Q (singular loci, minimal
polynomials).  All connection and rank arithmetic stays in the exact layer.
"""

from __future__ import annotations

from fractions import Fraction

import sympy

from .exact.poly import MultiPoly


def to_sympy(p: MultiPoly):
    syms = {v: sympy.Symbol(v) for v in p.vars}
    expr = sympy.Integer(0)
    for e, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for v, k in zip(p.vars, e):
            if k:
                term *= syms[v] ** k
        expr += term
    return expr


def from_sympy(expr, variables) -> MultiPoly:
    expr = sympy.expand(expr)
    poly = sympy.Poly(expr, *[sympy.Symbol(v) for v in variables]) if variables else None
    out = MultiPoly.zero(variables)
    if poly is None:
        r = sympy.Rational(expr)
        return MultiPoly.const(Fraction(int(r.p), int(r.q)), variables)
    for monom, coeff in poly.terms():
        r = sympy.Rational(coeff)
        c = Fraction(int(r.p), int(r.q))
        term = MultiPoly.const(c, variables)
        for v, k in zip(poly.gens, monom):
            if k:
                term = term * MultiPoly.var(str(v)) ** k
        out = out + term
    return out


def factor_list(p: MultiPoly) -> list[tuple[MultiPoly, int]]:
    """Irreducible factors over Q with multiplicities, deterministic order.

    The rational constant factor is dropped; each factor comes back
    integer-primitive with positive leading coefficient.
    """
    if p.is_zero() or p.is_constant():
        return []
    _, factors = sympy.factor_list(to_sympy(p))
    out = []
    for fac, mult in factors:
        vs = tuple(str(s) for s in fac.free_symbols)
        mp = from_sympy(fac, vs).primitive()
        out.append((mp, int(mult)))
    out.sort(key=lambda fm: (fm[0].total_degree(), str(fm[0])))
    return out
