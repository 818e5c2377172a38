"""Exact linear algebra over the rational-function field.

Rank runs fraction-free: rows are cleared to polynomials, stripped of
content, and eliminated Bareiss-style with the pivot chosen as the lowest
total-degree nonzero entry, which is what keeps intermediate entries at
minor size.  Kernels and inverses use straight field arithmetic on these
small matrices and clear denominators only at the end.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import MultiPoly, exact_div, mv_gcd, mv_lcm
from .ratfun import MultiRational, RAT_ONE, RAT_ZERO


class RatMatrix:
    __slots__ = ("rows", "cols", "data")

    def __init__(self, data):
        self.data = [[MultiRational._coerce(e) for e in row] for row in data]
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.data else 0
        if any(len(row) != self.cols for row in self.data):
            raise ValueError("ragged matrix")

    # ------------------------------------------------------------------

    @staticmethod
    def zeros(rows: int, cols: int) -> "RatMatrix":
        return RatMatrix([[RAT_ZERO] * cols for _ in range(rows)])

    @staticmethod
    def identity(n: int) -> "RatMatrix":
        return RatMatrix(
            [[RAT_ONE if i == j else RAT_ZERO for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def from_columns(columns, rows: int) -> "RatMatrix":
        return RatMatrix([[col[i] for col in columns] for i in range(rows)])

    def column(self, j: int) -> list[MultiRational]:
        return [self.data[i][j] for i in range(self.rows)]

    def columns(self) -> list[list[MultiRational]]:
        return [self.column(j) for j in range(self.cols)]

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other) -> bool:
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and all(
                self.data[i][j] == other.data[i][j]
                for i in range(self.rows)
                for j in range(self.cols)
            )
        )

    __hash__ = None

    def is_zero(self) -> bool:
        return all(e.is_zero() for row in self.data for e in row)

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        return RatMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.data, other.data)
            ]
        )

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return RatMatrix(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.data, other.data)
            ]
        )

    def __neg__(self) -> "RatMatrix":
        return RatMatrix([[-a for a in row] for row in self.data])

    def __mul__(self, other):
        if isinstance(other, RatMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            return RatMatrix(
                [
                    [
                        sum(
                            (self.data[i][k] * other.data[k][j] for k in range(self.cols)),
                            RAT_ZERO,
                        )
                        for j in range(other.cols)
                    ]
                    for i in range(self.rows)
                ]
            )
        c = MultiRational._coerce(other)
        return RatMatrix([[a * c for a in row] for row in self.data])

    __rmul__ = __mul__

    def matvec(self, vec) -> list[MultiRational]:
        return [
            sum((self.data[i][k] * vec[k] for k in range(self.cols)), RAT_ZERO)
            for i in range(self.rows)
        ]

    def transpose(self) -> "RatMatrix":
        return RatMatrix([[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "RatMatrix":
        return RatMatrix([row[c0:c1] for row in self.data[r0:r1]])

    def hstack(self, other: "RatMatrix") -> "RatMatrix":
        if self.rows != other.rows:
            raise ValueError("row mismatch")
        return RatMatrix([ra + rb for ra, rb in zip(self.data, other.data)])

    def diff(self, name: str) -> "RatMatrix":
        return RatMatrix([[a.diff(name) for a in row] for row in self.data])

    def subs(self, values: dict) -> "RatMatrix":
        return RatMatrix([[a.subs(values) for a in row] for row in self.data])

    def eval_scalar(self, values: dict):
        return [[a.eval_scalar(values) for a in row] for row in self.data]

    def map(self, fn) -> "RatMatrix":
        return RatMatrix([[fn(a) for a in row] for row in self.data])

    def __str__(self) -> str:
        return "[" + "; ".join(", ".join(str(a) for a in row) for row in self.data) + "]"

    __repr__ = __str__


# ----------------------------------------------------------------------
# fraction-free rank


def _cleared_poly_rows(M: RatMatrix) -> list[list[MultiPoly]]:
    """Clear each row by the lcm of its denominators and strip content."""
    out = []
    for row in M.data:
        den = MultiPoly.const(1)
        for e in row:
            if not e.is_zero():
                den = mv_lcm(den, e.den)
        cleared = []
        for e in row:
            if e.is_zero():
                cleared.append(MultiPoly.zero(den.vars))
            else:
                cleared.append(e.num * exact_div(den, e.den))
        cont = MultiPoly.zero(())
        for p in cleared:
            cont = mv_gcd(cont, p)
            if cont.is_constant() and not cont.is_zero():
                break
        if not cont.is_zero() and not cont.is_constant():
            cleared = [exact_div(p, cont) if not p.is_zero() else p for p in cleared]
        out.append(cleared)
    return out


def rank(M: RatMatrix) -> int:
    """Generic rank over the full rational-function field.

    Fraction-free Bareiss elimination on denominator-cleared rows; pivots
    are the lowest total-degree nonzero entries.
    """
    grid = _cleared_poly_rows(M)
    n, m = M.rows, M.cols
    prev = MultiPoly.const(1)
    r = 0
    k = 0
    while r < n and k < m:
        piv = None
        best = None
        for i in range(r, n):
            for j in range(k, m):
                e = grid[i][j]
                if not e.is_zero():
                    d = e.total_degree()
                    if best is None or d < best:
                        best = d
                        piv = (i, j)
        if piv is None:
            break
        pi, pj = piv
        grid[r], grid[pi] = grid[pi], grid[r]
        for row in grid:
            row[k], row[pj] = row[pj], row[k]
        pivot = grid[r][k]
        for i in range(r + 1, n):
            head = grid[i][k]
            for j in range(k + 1, m):
                grid[i][j] = exact_div(pivot * grid[i][j] - head * grid[r][j], prev)
            grid[i][k] = MultiPoly.zero(())
        prev = pivot
        r += 1
        k += 1
    return r


# ----------------------------------------------------------------------
# field-arithmetic echelon form, kernel, inverse


def _rref(M: RatMatrix):
    """Reduced row echelon form over the field; returns (grid, pivot_cols)."""
    grid = [row[:] for row in M.data]
    n, m = M.rows, M.cols
    pivots = []
    r = 0
    for k in range(m):
        piv = None
        best = None
        for i in range(r, n):
            e = grid[i][k]
            if not e.is_zero():
                d = e.num.total_degree() + e.den.total_degree()
                if best is None or d < best:
                    best = d
                    piv = i
        if piv is None:
            continue
        grid[r], grid[piv] = grid[piv], grid[r]
        inv = grid[r][k].inverse()
        grid[r] = [e * inv for e in grid[r]]
        for i in range(n):
            if i != r and not grid[i][k].is_zero():
                c = grid[i][k]
                grid[i] = [a - c * b for a, b in zip(grid[i], grid[r])]
        pivots.append(k)
        r += 1
        if r == n:
            break
    return grid, pivots


def kernel_basis(M: RatMatrix) -> list[list[MultiRational]]:
    """Basis of the right kernel, vectors cleared to content-1 polynomials."""
    grid, pivots = _rref(M)
    m = M.cols
    free = [j for j in range(m) if j not in pivots]
    basis = []
    for j in free:
        vec = [RAT_ZERO] * m
        vec[j] = RAT_ONE
        for r, pc in enumerate(pivots):
            vec[pc] = -grid[r][j]
        basis.append(_clear_vector(vec))
    return basis


def _clear_vector(vec: list[MultiRational]) -> list[MultiRational]:
    den = MultiPoly.const(1)
    for e in vec:
        if not e.is_zero():
            den = mv_lcm(den, e.den)
    cleared = [e * MultiRational.from_poly(den) for e in vec]
    cont = MultiPoly.zero(())
    for e in cleared:
        if not e.is_zero():
            cont = mv_gcd(cont, e.as_poly())
        if cont.is_constant() and not cont.is_zero():
            break
    if not cont.is_zero() and not cont.is_constant():
        inv = MultiRational.from_poly(cont).inverse()
        cleared = [e * inv for e in cleared]
    # normalize integer content jointly
    nums = [e.as_poly() for e in cleared]
    scale = Fraction(0)
    for p in nums:
        if not p.is_zero():
            s, _ = p.int_normalize()
            scale = s if scale == 0 else Fraction(
                _frac_gcd(scale, s)
            )
    if scale not in (0, 1):
        inv = MultiRational.from_poly(MultiPoly.const(scale)).inverse()
        cleared = [e * inv for e in cleared]
    return cleared


def _frac_gcd(a: Fraction, b: Fraction) -> Fraction:
    from math import gcd, lcm

    return Fraction(gcd(a.numerator, b.numerator), lcm(a.denominator, b.denominator))


def inverse(M: RatMatrix) -> RatMatrix:
    if M.rows != M.cols:
        raise ValueError("inverse of a non-square matrix")
    n = M.rows
    aug = RatMatrix([row + ident_row for row, ident_row in zip(M.data, RatMatrix.identity(n).data)])
    grid, pivots = _rref(aug)
    if len(pivots) < n or pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return RatMatrix([row[n:] for row in grid[:n]])


def det(M: RatMatrix) -> MultiRational:
    """Exact determinant via field-arithmetic elimination (small matrices)."""
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    grid = [row[:] for row in M.data]
    n = M.rows
    acc = RAT_ONE
    for k in range(n):
        piv = None
        for i in range(k, n):
            if not grid[i][k].is_zero():
                piv = i
                break
        if piv is None:
            return RAT_ZERO
        if piv != k:
            grid[k], grid[piv] = grid[piv], grid[k]
            acc = -acc
        pivot = grid[k][k]
        acc = acc * pivot
        inv = pivot.inverse()
        for i in range(k + 1, n):
            if grid[i][k].is_zero():
                continue
            c = grid[i][k] * inv
            grid[i] = [a - c * b for a, b in zip(grid[i], grid[k])]
    return acc


def rank_specialized(M: RatMatrix, point: dict) -> int:
    """Rank after substituting exact rational values for all parameters."""
    rows = []
    for row in M.data:
        rows.append([e.eval_scalar(point) for e in row])
    n, m = len(rows), len(rows[0]) if rows else 0
    r = 0
    for k in range(m):
        piv = None
        for i in range(r, n):
            if rows[i][k] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        c = rows[r][k]
        rows[r] = [a / c for a in rows[r]]
        for i in range(n):
            if i != r and rows[i][k] != 0:
                f = rows[i][k]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == n:
            break
    return r
