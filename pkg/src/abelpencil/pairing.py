"""Cup-product pairing via formal residues at the point at infinity.

For an odd-degree model there is a single point at infinity; with the local
parameter s one has x = s**-2 and y = s**-(2g+1) u(s), where u is the power
series square root of s**(4g+2) f(s**-2), u(0) = 1.  Every basis form is
regular on the affine curve, so the global cup product collapses to

    J[i][j] = res_s ( (int e_i) * e_j ),

the residue of the antiderivative of one form against the other.  The
antiderivative constant is irrelevant (res of an exact form vanishes) and
is pinned to zero for reproducibility.  Skewness of J is automatic from
res(d(F G)) = 0; the upper-left g x g block vanishes because first-kind
forms have nonnegative valuation; and J is horizontal for the connection:
dJ = M^T J + J M as an exact identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .derham import ConnectionMatrix, HyperellipticPencil
from .errors import InvariantError, PencilError, TruncationError
from .exact.linalg import RatMatrix, inverse
from .exact.ratfun import MultiRational, RAT_ONE, RAT_ZERO


class LaurentSeries:
    """Truncated Laurent series over the rational-function field.

    Coefficients are known exactly for exponents < prec; the stored dict
    holds only the nonzero ones.
    """

    __slots__ = ("coeffs", "prec")

    def __init__(self, coeffs: dict, prec: int):
        self.coeffs = {e: c for e, c in coeffs.items() if e < prec and not c.is_zero()}
        self.prec = prec

    @staticmethod
    def zero(prec: int) -> "LaurentSeries":
        return LaurentSeries({}, prec)

    @staticmethod
    def one(prec: int) -> "LaurentSeries":
        return LaurentSeries({0: RAT_ONE}, prec)

    def valuation(self):
        """Exponent of the lowest nonzero known coefficient, or None if the
        series is zero to the stated precision."""
        return min(self.coeffs) if self.coeffs else None

    def coeff(self, e: int) -> MultiRational:
        if e >= self.prec:
            raise TruncationError(f"coefficient of s^{e} undetermined; increase truncation")
        return self.coeffs.get(e, RAT_ZERO)

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        prec = min(self.prec, other.prec)
        coeffs = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = coeffs.get(e, RAT_ZERO) + c
            if s.is_zero():
                coeffs.pop(e, None)
            else:
                coeffs[e] = s
        return LaurentSeries(coeffs, prec)

    def __neg__(self) -> "LaurentSeries":
        return LaurentSeries({e: -c for e, c in self.coeffs.items()}, self.prec)

    def __sub__(self, other: "LaurentSeries") -> "LaurentSeries":
        return self + (-other)

    def scale(self, c) -> "LaurentSeries":
        c = MultiRational._coerce(c)
        return LaurentSeries({e: c * v for e, v in self.coeffs.items()}, self.prec)

    def shift(self, k: int) -> "LaurentSeries":
        return LaurentSeries({e + k: c for e, c in self.coeffs.items()}, self.prec + k)

    def __mul__(self, other: "LaurentSeries") -> "LaurentSeries":
        va = self.valuation()
        vb = other.valuation()
        if va is None or vb is None:
            # zero up to precision; the product is zero at least that far out
            pa = self.prec if va is None else self.prec
            va_eff = self.prec if va is None else va
            vb_eff = other.prec if vb is None else vb
            return LaurentSeries.zero(min(self.prec + vb_eff, other.prec + va_eff))
        prec = min(self.prec + vb, other.prec + va)
        coeffs: dict[int, MultiRational] = {}
        for ea, ca in self.coeffs.items():
            for eb, cb in other.coeffs.items():
                e = ea + eb
                if e >= prec:
                    continue
                s = coeffs.get(e, RAT_ZERO) + ca * cb
                if s.is_zero():
                    coeffs.pop(e, None)
                else:
                    coeffs[e] = s
        return LaurentSeries(coeffs, prec)

    def diff_s(self) -> "LaurentSeries":
        return LaurentSeries(
            {e - 1: c * e for e, c in self.coeffs.items() if e != 0}, self.prec - 1
        )

    def antiderivative(self) -> "LaurentSeries":
        """Termwise integral with the s^0 constant pinned to zero."""
        res = self.coeffs.get(-1, RAT_ZERO)
        if not res.is_zero():
            raise InvariantError("cannot integrate a series with nonzero residue")
        out = {e + 1: c * Fraction(1, e + 1) for e, c in self.coeffs.items() if e != -1}
        return LaurentSeries(out, self.prec + 1)

    def inverse(self) -> "LaurentSeries":
        v = self.valuation()
        if v is None:
            raise ZeroDivisionError("inverse of a (truncated) zero series")
        lead = self.coeffs[v]
        terms = self.prec - v  # number of known coefficients
        inv_lead = lead.inverse()
        # b solves a*b = 1; recurse on coefficients of the unit part
        a = {e - v: c for e, c in self.coeffs.items()}
        b = {0: inv_lead}
        for n in range(1, terms):
            acc = RAT_ZERO
            for k in range(1, n + 1):
                ak = a.get(k)
                if ak is not None:
                    bk = b.get(n - k)
                    if bk is not None:
                        acc = acc + ak * bk
            if not acc.is_zero():
                b[n] = -inv_lead * acc
        return LaurentSeries({e - v: c for e, c in b.items()}, self.prec - 2 * v)

    def sqrt_unit(self) -> "LaurentSeries":
        """Square root of a series with constant term 1 (branch u(0) = 1)."""
        if self.coeff(0) != RAT_ONE:
            raise ValueError("series must have constant term 1")
        if any(e < 0 for e in self.coeffs):
            raise ValueError("series must be a power series")
        n_terms = self.prec
        a = self.coeffs
        u: dict[int, MultiRational] = {0: RAT_ONE}
        half = MultiRational.from_poly(Fraction(1, 2))
        for n in range(1, n_terms):
            acc = a.get(n, RAT_ZERO)
            for k in range(1, n):
                uk = u.get(k)
                if uk is not None:
                    un = u.get(n - k)
                    if un is not None:
                        acc = acc - uk * un
            c = half * acc
            if not c.is_zero():
                u[n] = c
        return LaurentSeries(u, self.prec)

    def residue(self) -> MultiRational:
        """Coefficient of s^-1; raises TruncationError if undetermined."""
        if self.prec < 0:
            raise TruncationError("increase truncation")
        return self.coeffs.get(-1, RAT_ZERO)

    def __str__(self) -> str:
        if not self.coeffs:
            return f"O(s^{self.prec})"
        parts = [f"({c})*s^{e}" for e, c in sorted(self.coeffs.items())]
        return " + ".join(parts) + f" + O(s^{self.prec})"

    __repr__ = __str__


@dataclass(frozen=True)
class CupMatrix:
    """Pairing Gram matrix in the de Rham basis; skew with lagrangian
    first-kind block."""

    matrix: RatMatrix
    truncation: int

    @property
    def genus(self) -> int:
        return self.matrix.rows // 2


def expand_at_infinity(pencil: HyperellipticPencil, j: int, N: int):
    """(series of e_j, its antiderivative) at the point at infinity.

    j is 1-based; e_j = x^(j-1) dx/y = -2 s^(2(g-j)) / u(s) ds, so the
    valuation is 2(g-j) and e_j is regular at infinity exactly when j <= g.
    """
    g = pencil.genus
    if not 1 <= j <= 2 * g:
        raise PencilError(f"basis index {j} out of range 1..{2*g}")
    u = _branch_unit(pencil, N)
    series = u.inverse().scale(-2).shift(2 * (g - j))
    # parity: u is even in s, so odd coefficients vanish and res(e_j) = 0
    anti = series.antiderivative()
    return series, anti


def _branch_unit(pencil: HyperellipticPencil, N: int) -> LaurentSeries:
    """u(s) with u^2 = s^(4g+2) f(s^-2), u(0) = 1."""
    g = pencil.genus
    coeffs = {}
    for i, c in enumerate(pencil.f.as_univariate("x")):
        if not c.is_zero():
            coeffs[4 * g + 2 - 2 * i] = MultiRational.from_poly(c.restrict())
    w = LaurentSeries(coeffs, N)
    return w.sqrt_unit()


def cup_matrix(pencil: HyperellipticPencil, N: int | None = None) -> CupMatrix:
    """Residue pairing of the full basis, with automatic retruncation.

    Default truncation is 8g+6; on a TruncationError the order doubles, at
    most twice.  The returned matrix is exactly skew, the first-kind block
    vanishes, and the determinant is a nonzero rational function.
    """
    g = pencil.genus
    dim = 2 * g
    attempt = N if N is not None else 8 * g + 6
    last_error = None
    for _ in range(3):
        try:
            forms = []
            antis = []
            for j in range(1, dim + 1):
                series, anti = expand_at_infinity(pencil, j, attempt)
                forms.append(series)
                antis.append(anti)
            rows = []
            for i in range(dim):
                row = []
                for j in range(dim):
                    row.append((antis[i] * forms[j]).residue())
                rows.append(row)
            J = RatMatrix(rows)
            _check_cup(J, g)
            return CupMatrix(matrix=J, truncation=attempt)
        except TruncationError as exc:
            last_error = exc
            attempt *= 2
    raise TruncationError(f"residues undetermined at truncation {attempt // 2}: {last_error}")


def _check_cup(J: RatMatrix, g: int) -> None:
    dim = 2 * g
    for i in range(dim):
        for j in range(dim):
            if not (J[i, j] + J[j, i]).is_zero():
                raise InvariantError("cup matrix is not skew")
    for i in range(g):
        for j in range(g):
            if not J[i, j].is_zero():
                raise InvariantError("first-kind block of the cup matrix is nonzero")
    from .exact.linalg import det

    if det(J).is_zero():
        raise InvariantError("degenerate pairing")


def standard_symplectic(g: int) -> RatMatrix:
    J0 = RatMatrix.zeros(2 * g, 2 * g)
    data = [row[:] for row in J0.data]
    for i in range(g):
        data[i][g + i] = RAT_ONE
        data[g + i][i] = -RAT_ONE
    return RatMatrix(data)


def symplectify(J: CupMatrix) -> RatMatrix:
    """Block-upper-triangular G with G^T J G the standard symplectic form.

    The span of the first g basis vectors (the first-kind forms) is
    preserved.  With J = [[0, B], [-B^T, C]] the choice is
    G = [[I, Bti C Bti / 2], [0, B^{-1}]] written with Bti = B^{-T}.
    """
    g = J.genus
    M = J.matrix
    B = M.block(0, g, g, 2 * g)
    C = M.block(g, 2 * g, g, 2 * g)
    try:
        Binv = inverse(B)
    except ValueError as exc:
        raise PencilError("degenerate pairing") from exc
    Ctil = Binv.transpose() * C * Binv
    Q = Ctil * Fraction(1, 2)
    top = RatMatrix.identity(g).hstack(Q)
    bottom = RatMatrix.zeros(g, g).hstack(Binv)
    G = RatMatrix(top.data + bottom.data)
    if not (G.transpose() * M * G) == standard_symplectic(g):
        raise InvariantError("symplectic base change failed to normalize the pairing")
    return G


def transform_connection(M: ConnectionMatrix, G: RatMatrix) -> ConnectionMatrix:
    """Connection matrix in the base changed by G: G^{-1} (dG + M G)."""
    Ginv = inverse(G)
    moved = Ginv * (G.diff(M.parameter) + M.matrix * G)
    return ConnectionMatrix(
        parameter=M.parameter,
        parameter_index=M.parameter_index,
        genus=M.genus,
        matrix=moved,
    )


def horizontality_residual(J: CupMatrix, M: ConnectionMatrix) -> RatMatrix:
    """dJ - (M^T J + J M); identically zero because the pairing is flat."""
    Jm = J.matrix
    return Jm.diff(M.parameter) - (M.matrix.transpose() * Jm + Jm * M.matrix)
