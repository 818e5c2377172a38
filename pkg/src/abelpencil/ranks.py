"""Rank invariants of the pencil and endomorphism decompositions.

Three generic ranks are attached to the family, all computed exactly over
the parameter field:

  span_rank            rank of the full derivative span of the first-kind
                       forms modulo the first-kind forms (iterate v -> dv + Mv
                       until the dimension stabilizes);
  ks_rank              rank of the total Kodaira-Spencer map, the g x (d*g)
                       concatenation of the lower-left connection blocks;
  ks_directional_rank  the best single tangent direction, computed as the
                       rank of lam1 T1 + lam2 T2 over the field extended by
                       auxiliary lam variables (a generic combination
                       realizes the maximum: every minor is a polynomial in
                       the lam's).

The chain ks_directional_rank <= ks_rank <= span_rank <= g always holds,
and the family is isotrivial exactly when all the blocks vanish.

Endomorphism candidates are accepted only if they commute with the
connection; the de Rham module then splits along the factors of their
(constant, squarefree) minimal polynomial, and each factor reports its
first-kind and quotient multiplicities and its own Kodaira-Spencer rank.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import sympy

from .derham import ConnectionMatrix, HyperellipticPencil
from .errors import InvariantError, PencilError
from .exact.linalg import RatMatrix, kernel_basis, rank
from .exact.poly import MultiPoly
from .exact.ratfun import MultiRational, RAT_ONE, RAT_ZERO

LAMBDA_NAMES = ("lam1", "lam2")


@dataclass(frozen=True)
class RankReport:
    genus: int
    span_rank: int
    ks_rank: int
    ks_directional_rank: int
    isotrivial: bool
    span_dimension: int
    stabilization_steps: int

    def chain_ok(self) -> bool:
        return (
            0
            <= self.ks_directional_rank
            <= self.ks_rank
            <= self.span_rank
            <= self.genus
        )


@dataclass(frozen=True)
class EndoFactor:
    coeffs: tuple[Fraction, ...]  # monic factor of the minimal polynomial
    degree: int
    component_dim: int          # dimension over the factor field
    first_kind_dim: int         # multiplicity of the first-kind part
    quotient_dim: int           # multiplicity of the quotient part
    ks_rank: int                # Kodaira-Spencer rank on the component

    def poly_string(self) -> str:
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "1" if k == 0 else ("X" if k == 1 else f"X^{k}")
            if k == 0:
                parts.append(f"{c}")
            elif abs(c) == 1:
                parts.append(mono if c > 0 else f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


@dataclass(frozen=True)
class EndoDecomposition:
    endo: RatMatrix
    minpoly: tuple[Fraction, ...]
    factors: tuple[EndoFactor, ...]


def first_kind_span_rank(
    pencil: HyperellipticPencil, mats: list[ConnectionMatrix]
) -> tuple[int, int, int]:
    """(rank beyond the first-kind block, span dimension, growth steps).

    Iterates V -> V + sum_i (d_i V + M_i V) on a spanning set of column
    vectors, pruning to a basis each round.  The span is over the function
    field, so the coordinatewise derivative genuinely matters.
    """
    g = pencil.genus
    dim = 2 * g
    cols = [_unit_column(i, dim) for i in range(g)]
    current = rank(RatMatrix.from_columns(cols, dim))
    steps = 0
    while True:
        new_cols = list(cols)
        for M in mats:
            name = M.parameter
            for col in cols:
                dcol = [c.diff(name) for c in col]
                mcol = M.matrix.matvec(col)
                new_cols.append([a + b for a, b in zip(dcol, mcol)])
        stacked = RatMatrix.from_columns(new_cols, dim)
        new_rank = rank(stacked)
        if new_rank == current:
            break
        steps += 1
        if steps > 2 * g:
            raise InvariantError("derivative span failed to stabilize within 2g steps")
        cols = _prune_to_basis(stacked, new_rank)
        current = new_rank
    return current - g, current, steps


def _unit_column(i: int, dim: int) -> list[MultiRational]:
    return [RAT_ONE if k == i else RAT_ZERO for k in range(dim)]


def _prune_to_basis(M: RatMatrix, expected: int) -> list[list[MultiRational]]:
    from .exact.linalg import _rref

    _, pivots = _rref(M)
    if len(pivots) != expected:
        raise InvariantError("rank disagreement between elimination routes")
    return [M.column(j) for j in pivots]


def ks_rank(blocks: list[RatMatrix]) -> int:
    """Rank of the concatenated Kodaira-Spencer blocks [T1 | ... | Td]."""
    stacked = blocks[0]
    for B in blocks[1:]:
        stacked = stacked.hstack(B)
    return rank(stacked)


def ks_directional_rank(blocks: list[RatMatrix]) -> int:
    """Max rank of a single combination, via auxiliary lam variables.

    rank over Q(t, lam) of sum lam_i T_i equals the max over directions:
    each minor determinant is a polynomial in the lam's, so vanishing at
    the generic point forces vanishing everywhere.
    """
    if len(blocks) > len(LAMBDA_NAMES):
        raise PencilError("at most two parameters are supported")
    acc = None
    for name, B in zip(LAMBDA_NAMES, blocks):
        lam = MultiRational.from_poly(MultiPoly.var(name))
        term = B * lam
        acc = term if acc is None else acc + term
    return rank(acc)


def rank_report(pencil: HyperellipticPencil, mats: list[ConnectionMatrix]) -> RankReport:
    blocks = [M.block_t for M in mats]
    r_prime = ks_rank(blocks)
    r_dir = ks_directional_rank(blocks)
    r, span_dim, steps = first_kind_span_rank(pencil, mats)
    iso = all(B.is_zero() for B in blocks)
    report = RankReport(
        genus=pencil.genus,
        span_rank=r,
        ks_rank=r_prime,
        ks_directional_rank=r_dir,
        isotrivial=iso,
        span_dimension=span_dim,
        stabilization_steps=steps,
    )
    if not report.chain_ok():
        raise InvariantError("rank chain violated")
    if iso != (r_prime == 0) or (iso and r != 0):
        raise InvariantError("isotriviality criteria disagree")
    return report


# ----------------------------------------------------------------------
# endomorphism decomposition


def _vec(M: RatMatrix) -> list[MultiRational]:
    return [e for row in M.data for e in row]


def minimal_polynomial(e: RatMatrix) -> tuple[Fraction, ...]:
    """Monic minimal polynomial; requires constant coefficients.

    Powers of e are vectorized and the first linear dependence over the
    function field is extracted from a kernel vector.
    """
    n = e.rows
    powers = [RatMatrix.identity(n)]
    for _ in range(n):
        powers.append(powers[-1] * e)
    for k in range(1, n + 1):
        stacked = RatMatrix.from_columns([_vec(P) for P in powers[: k + 1]], n * n)
        ker = kernel_basis(stacked)
        if ker:
            vec = ker[0]
            lead = vec[k]
            if lead.is_zero():
                raise InvariantError("kernel vector with zero top coefficient")
            coeffs = []
            inv = lead.inverse()
            for c in vec:
                cc = c * inv
                if not cc.is_constant():
                    raise PencilError(
                        "minimal polynomial has parameter-dependent coefficients"
                    )
                coeffs.append(cc.constant_value())
            return tuple(coeffs)
    raise InvariantError("no minimal polynomial of degree <= n found")


def _factor_constant_poly(coeffs: tuple[Fraction, ...]):
    X = sympy.Symbol("X")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * X ** k for k, c in enumerate(coeffs))
    _, factors = sympy.factor_list(sympy.Poly(expr, X))
    out = []
    for fac, mult in factors:
        poly = sympy.Poly(fac, X)
        monic = poly.monic()
        fc = [Fraction(int(sympy.Rational(c).p), int(sympy.Rational(c).q)) for c in monic.all_coeffs()]
        fc.reverse()
        out.append((tuple(fc), int(mult)))
    out.sort(key=lambda fm: (len(fm[0]), fm[0]))
    return out


def _poly_at_matrix(coeffs: tuple[Fraction, ...], e: RatMatrix) -> RatMatrix:
    n = e.rows
    acc = RatMatrix.zeros(n, n)
    for c in reversed(coeffs):
        acc = acc * e + RatMatrix.identity(n) * MultiRational.from_poly(c)
    return acc


def horizontality_defect(e: RatMatrix, M: ConnectionMatrix) -> RatMatrix:
    """d e - (e M - M e); zero iff e commutes with the connection.

    The commutator order follows the column convention for M: writing a
    section as coordinates c, the connection acts as dc + Mc, and e acts
    as c -> ec, so compatibility reads de + Me = eM."""
    A = M.matrix
    return e.diff(M.parameter) - (e * A - A * e)


def endo_decompose(
    pencil: HyperellipticPencil, e: RatMatrix, mats: list[ConnectionMatrix]
) -> EndoDecomposition:
    """Split the de Rham module along a horizontal endomorphism.

    The candidate must commute with the connection and have a constant,
    squarefree minimal polynomial whose factors are irreducible over Q.
    Each kernel component ker q(e) reports dimensions per factor field and
    the Kodaira-Spencer rank of its first-kind part.
    """
    g = pencil.genus
    dim = 2 * g
    if e.rows != dim or e.cols != dim:
        raise PencilError(f"endomorphism must be {dim}x{dim}")
    for M in mats:
        if not horizontality_defect(e, M).is_zero():
            raise PencilError("not an endomorphism of (H, nabla)")
    minpoly = minimal_polynomial(e)
    factors = _factor_constant_poly(minpoly)
    if any(m > 1 for _, m in factors):
        raise PencilError("non-semisimple endomorphism unsupported")
    blocks = [M.block_t for M in mats]
    omega = RatMatrix.from_columns([_unit_column(i, dim) for i in range(g)], dim)
    out = []
    total = 0
    for coeffs, _ in factors:
        q_of_e = _poly_at_matrix(coeffs, e)
        comp = kernel_basis(q_of_e)
        comp_dim = len(comp)
        if comp_dim == 0:
            raise InvariantError("factor of the minimal polynomial with trivial kernel")
        deg = len(coeffs) - 1
        if comp_dim % deg:
            raise InvariantError("component dimension not divisible by the factor degree")
        total += comp_dim
        K = RatMatrix.from_columns(comp, dim)
        _check_nabla_stable(K, mats, comp_dim)
        inter = _intersection_with_omega(K, omega)
        if len(inter) % deg:
            # the first-kind part is not a module over the factor field;
            # resolving this needs the per-embedding eigenbasis, which is
            # out of scope here
            raise PencilError(
                "first-kind part is not free over the factor field; "
                "per-embedding splitting unsupported"
            )
        r_lam = len(inter) // deg
        s_lam = comp_dim // deg - r_lam
        theta_rank = _component_ks_rank(inter, blocks, g)
        out.append(
            EndoFactor(
                coeffs=tuple(coeffs),
                degree=deg,
                component_dim=comp_dim // deg,
                first_kind_dim=r_lam,
                quotient_dim=s_lam,
                ks_rank=theta_rank,
            )
        )
    if total != dim:
        raise InvariantError("component dimensions do not fill the de Rham module")
    return EndoDecomposition(endo=e, minpoly=minpoly, factors=tuple(out))


def _check_nabla_stable(K: RatMatrix, mats, comp_dim: int) -> None:
    for M in mats:
        name = M.parameter
        moved = []
        for j in range(K.cols):
            col = K.column(j)
            dcol = [c.diff(name) for c in col]
            mcol = M.matrix.matvec(col)
            moved.append([a + b for a, b in zip(dcol, mcol)])
        stacked = K.hstack(RatMatrix.from_columns(moved, K.rows))
        if rank(stacked) != comp_dim:
            raise InvariantError("endomorphism component is not stable under the connection")


def _intersection_with_omega(K: RatMatrix, omega: RatMatrix):
    """Basis of (column span of K) intersected with the first-kind span."""
    joint = K.hstack(omega)
    inter = []
    for ker in kernel_basis(joint):
        alpha = ker[: K.cols]
        vec = K.matvec(alpha)
        inter.append(vec)
    if not inter:
        return []
    I = RatMatrix.from_columns(inter, K.rows)
    from .exact.linalg import _rref

    _, pivots = _rref(I)
    return [I.column(j) for j in pivots]


def _component_ks_rank(inter, blocks, g: int) -> int:
    if not inter:
        return 0
    cols = []
    for T in blocks:
        for w in inter:
            top = w[:g]
            cols.append(T.matvec(top))
    stacked = RatMatrix.from_columns(cols, g)
    return rank(stacked)


def first_kind_free(decomposition: EndoDecomposition) -> bool:
    """True iff every factor is balanced: first-kind and quotient
    multiplicities agree (the first-kind bundle is then a free module over
    the endomorphism algebra)."""
    if not decomposition.factors:
        raise PencilError("empty decomposition")
    return all(f.first_kind_dim == f.quotient_dim for f in decomposition.factors)
