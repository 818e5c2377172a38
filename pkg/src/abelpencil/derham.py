"""De Rham cohomology of a hyperelliptic pencil and its connection matrix.

The pencil is y^2 = f(x, t1..td) with f monic in x of odd degree 2g+1, so
the curve has a single point at infinity and H^1 has the classical basis

    e_i = x^(i-1) dx / y,   i = 1..2g,

whose first g members are the forms of the first kind.  Differentiating a
basis form under the integral sign gives

    d/dt (x^(j-1) dx/y) = -(1/2) x^(j-1) f_t dx/y^3,

and pole orders are lowered by the reduction

    P dx/y^(2k+1)  ==  (A + 2 B'/(2k-1)) dx/y^(2k-1)   (mod exact forms)

after splitting P = A f + B f_x, which is possible because f is squarefree
over the parameter field.  At pole order one the relations d(x^m y) remove
x-degrees 2g and above.  The connection matrix M is column-based:

    nabla e_j = sum_k M[k][j] e_k,

so a full solution matrix Y[k][j] of periods satisfies dY = Y M and loop
monodromy acts on Y from the left.  The lower-left g x g block of M is the
matrix of the induced map from first-kind forms to the quotient, and it is
the object whose rank the rest of the package studies.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as _int_gcd

from ._sympy_bridge import factor_list
from .errors import PencilError
from .exact.poly import MultiPoly, exact_div, mv_gcd, mv_lcm, resultant
from .exact.ratfun import MultiRational
from .exact.linalg import RatMatrix
from .exact.unipoly import (
    XPoly,
    bezout_split_data,
    pp_add,
    pp_diff_x,
    pp_divmod_monic,
    pp_from_multipoly,
    pp_mul,
    pp_scale,
    pp_shift,
    pp_strip,
)

RESERVED_NAMES = ("x", "lam1", "lam2")


@dataclass(frozen=True)
class HyperellipticPencil:
    f: MultiPoly
    genus: int
    params: tuple[str, ...]
    discriminant: MultiPoly
    singular_factors: tuple[tuple[MultiPoly, int], ...]
    # U*f + V*f_x = r with everything polynomial; r depends on t only
    _split_u: tuple[MultiPoly, ...]
    _split_v: tuple[MultiPoly, ...]
    _split_r: MultiPoly

    @property
    def dim(self) -> int:
        return 2 * self.genus

    def f_poly(self) -> XPoly:
        return XPoly.from_multipoly(self.f)

    def __repr__(self) -> str:
        return f"HyperellipticPencil(y^2 = {self.f}, genus {self.genus})"


@dataclass(frozen=True)
class DeRhamElement:
    """Cohomology class in the basis x^(i-1) dx/y, i = 1..2g."""

    coords: tuple[MultiRational, ...]

    def __add__(self, other: "DeRhamElement") -> "DeRhamElement":
        return DeRhamElement(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def scale(self, c) -> "DeRhamElement":
        c = MultiRational._coerce(c)
        return DeRhamElement(tuple(a * c for a in self.coords))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def __eq__(self, other) -> bool:
        return self.coords == other.coords


@dataclass(frozen=True)
class ConnectionMatrix:
    """Matrix of the parameter derivative on the de Rham basis.

    Convention: nabla_d e_j = sum_k M[k][j] e_k, so that the period matrix
    satisfies dY = Y M.  Blocks refer to the splitting into first-kind and
    complementary halves; the lower-left block T is the one induced on
    first-kind forms modulo first-kind forms.
    """

    parameter: str
    parameter_index: int
    genus: int
    matrix: RatMatrix

    @property
    def block_r(self) -> RatMatrix:
        g = self.genus
        return self.matrix.block(0, g, 0, g)

    @property
    def block_s(self) -> RatMatrix:
        g = self.genus
        return self.matrix.block(0, g, g, 2 * g)

    @property
    def block_t(self) -> RatMatrix:
        g = self.genus
        return self.matrix.block(g, 2 * g, 0, g)

    @property
    def block_u(self) -> RatMatrix:
        g = self.genus
        return self.matrix.block(g, 2 * g, g, 2 * g)


def validate_pencil(f: MultiPoly, params=None) -> HyperellipticPencil:
    """Check the model and precompute discriminant data.

    f must be monic in x of odd degree >= 3 with coefficients in Q[t].
    Even-degree input is rejected; moving a root to infinity by a Moebius
    substitution is up to the caller.
    """
    if f.degree("x") < 0 or "x" not in f.used_vars():
        raise PencilError("polynomial must involve x")
    n = f.degree("x")
    if n % 2 == 0:
        raise PencilError("unsupported model (use odd-degree form)")
    if n < 3:
        raise PencilError("degree in x must be at least 3")
    lc = f.lc("x")
    if not (lc.is_constant() and lc.constant_value() == 1):
        raise PencilError("polynomial must be monic in x")
    inferred = tuple(v for v in f.used_vars() if v != "x")
    if params is None:
        params = inferred
    params = tuple(params)
    for p in params:
        if p in RESERVED_NAMES:
            raise PencilError(f"parameter name '{p}' is reserved")
    if len(params) > 2:
        raise PencilError("at most two parameters are supported")
    if any(v not in params for v in inferred):
        missing = [v for v in inferred if v not in params]
        raise PencilError(f"undeclared parameters in polynomial: {missing}")
    g = (n - 1) // 2
    fx = f.diff("x")
    res = resultant(f, fx, "x")
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    disc = (res * sign).restrict()
    if disc.is_zero():
        raise PencilError("pencil everywhere singular")
    factors = tuple(factor_list(disc))
    U, V, r = bezout_split_data(f)
    return HyperellipticPencil(
        f=f,
        genus=g,
        params=params,
        discriminant=disc,
        singular_factors=factors,
        _split_u=tuple(U.as_univariate("x")),
        _split_v=tuple(V.as_univariate("x")),
        _split_r=r,
    )


def reduce_form(pencil: HyperellipticPencil, P, pole_order: int) -> DeRhamElement:
    """Exact coordinates of P dx/y^pole_order in the basis x^(i-1) dx/y.

    The result differs from the input by an exact form.  Idempotent on the
    basis monomials x^(i-1) with pole_order 1.

    All intermediate arithmetic is polynomial: the numerator rides over the
    single common denominator den * r**k, where r is the subresultant
    scalar of (f, f_x).  Only the final coordinates get normalized.
    """
    if pole_order < 1 or pole_order % 2 == 0:
        raise PencilError("pole order must be a positive odd integer")
    if isinstance(P, MultiPoly):
        num = pp_from_multipoly(P)
        den = MultiPoly.const(1)
    elif isinstance(P, XPoly):
        cleared, den = P.clear_denominators_raw()
        num = pp_from_multipoly(cleared)
    else:
        raise TypeError("P must be a MultiPoly or XPoly")
    f = pp_from_multipoly(pencil.f)
    fx = pp_diff_x(f)
    U = pp_strip(list(pencil._split_u))
    V = pp_strip(list(pencil._split_v))
    r = pencil._split_r
    k = (pole_order - 1) // 2
    while k >= 1:
        # num/den = A f + B f_x with deg B < deg f; drop one pole order:
        # next = A + 2 B' / (2k-1), denominator picks up a factor r
        q, B = pp_divmod_monic(pp_mul(num, V), f)
        A = pp_add(pp_mul(num, U), pp_mul(q, fx))
        num = pp_add(pp_scale(A, Fraction(2 * k - 1)), pp_scale(pp_diff_x(B), 2))
        den = den * r * (2 * k - 1)
        k -= 1
    dim = pencil.dim
    while len(num) - 1 >= dim:
        m = len(num) - 1 - dim
        # d(x^m y) = (m x^(m-1) f + x^m f_x / 2) dx / y is exact
        exact = pp_add(pp_scale(pp_shift(f, m - 1) if m else [], m),
                       pp_scale(pp_shift(fx, m), Fraction(1, 2)))
        if m == 0:
            exact = pp_scale(fx, Fraction(1, 2))
        lead = exact[-1].constant_value()
        num = pp_add(num, pp_scale(exact, -num[-1] * (1 / lead)))
        if num and len(num) - 1 >= m + dim:
            raise AssertionError("degree reduction failed to make progress")
    num += [MultiPoly.zero(())] * (dim - len(num))
    coords = [MultiRational(num[i], den) for i in range(dim)]
    return DeRhamElement(tuple(coords))


def gauss_manin_matrix(pencil: HyperellipticPencil, parameter) -> ConnectionMatrix:
    """Connection matrix for one parameter derivative.

    Columns are the reductions of -(1/2) x^(j-1) f_t dx/y^3; entries have
    denominators supported on the discriminant locus.
    """
    if isinstance(parameter, int):
        index = parameter
        name = pencil.params[parameter]
    else:
        name = parameter
        index = pencil.params.index(name)
    ft = XPoly.from_multipoly(pencil.f.diff(name))
    dim = pencil.dim
    cols = []
    for j in range(dim):
        P = ft.shift(j) * Fraction(-1, 2)
        cols.append(reduce_form(pencil, P, 3).coords)
    M = RatMatrix.from_columns(cols, dim)
    return ConnectionMatrix(parameter=name, parameter_index=index, genus=pencil.genus, matrix=M)


def all_connection_matrices(pencil: HyperellipticPencil) -> list[ConnectionMatrix]:
    return [gauss_manin_matrix(pencil, i) for i in range(len(pencil.params))]


def kodaira_spencer_block(M: ConnectionMatrix) -> RatMatrix:
    """Lower-left g x g block: first-kind forms to the quotient."""
    return M.block_t


def curvature(M1: ConnectionMatrix, M2: ConnectionMatrix) -> RatMatrix:
    """d2 M1 - d1 M2 - (M1 M2 - M2 M1); identically zero for a flat family.

    The sign of the commutator is pinned by the dY = Y M convention: equating
    the mixed partials of Y gives d2 M1 - d1 M2 = M1 M2 - M2 M1.
    """
    A, B = M1.matrix, M2.matrix
    return A.diff(M2.parameter) - B.diff(M1.parameter) - (A * B - B * A)


def denominators_regular(pencil: HyperellipticPencil, M: ConnectionMatrix) -> bool:
    """Every denominator factor divides the discriminant or is a monomial."""
    disc = pencil.discriminant
    for row in M.matrix.data:
        for entry in row:
            d = entry.den
            if d.is_constant():
                continue
            while True:
                g = mv_gcd(d, disc)
                if g.is_constant():
                    break
                d = exact_div(d, g)
            if d.is_constant():
                continue
            if len(d.terms) != 1:
                return False
            if "x" in d.used_vars():
                return False
    return True


def first_basis_ode(M: ConnectionMatrix) -> tuple[MultiPoly, MultiPoly, MultiPoly]:
    """Second-order equation a2 u'' + a1 u' + a0 u = 0 for periods of e_1.

    Genus one only; eliminates the second coordinate from the first-order
    system, clears denominators and normalizes content and sign.
    """
    if M.genus != 1:
        raise PencilError("second-order elimination implemented for genus 1")
    t = M.parameter
    m11, m12 = M.matrix[0, 0], M.matrix[0, 1]
    m21, m22 = M.matrix[1, 0], M.matrix[1, 1]
    if m21.is_zero():
        raise PencilError("first basis vector satisfies a first-order equation")
    # u' = m11 u + m21 v, v' = m12 u + m22 v  (periods pair rows of Y)
    c1 = m11 + m22 + m21.diff(t) / m21
    c0 = m11.diff(t) - m11 * (m21.diff(t) / m21) + m21 * m12 - m22 * m11
    # u'' - c1 u' - c0 u = 0; clear to polynomial coefficients
    den = mv_lcm(c1.den, c0.den)
    a2 = den
    a1 = -(c1.num * exact_div(den, c1.den))
    a0 = -(c0.num * exact_div(den, c0.den))
    cont = mv_gcd(mv_gcd(a2, a1), a0)
    if not cont.is_constant():
        a2, a1, a0 = exact_div(a2, cont), exact_div(a1, cont), exact_div(a0, cont)
    return _joint_normalize(a2, a1, a0)


def _joint_normalize(*polys: MultiPoly) -> tuple[MultiPoly, ...]:
    """Scale a tuple by one rational so all are integer with joint content 1
    and the first nonzero one has positive leading coefficient."""
    den = 1
    for p in polys:
        for c in p.terms.values():
            den = den * c.denominator // _int_gcd(den, c.denominator)
    num = 0
    for p in polys:
        for c in p.terms.values():
            num = _int_gcd(num, (c * den).numerator)
    scale = Fraction(den, num)
    out = [p * scale for p in polys]
    for p in out:
        if not p.is_zero():
            if p.leading()[1] < 0:
                out = [-q for q in out]
            break
    return tuple(out)
