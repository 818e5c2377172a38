"""Numeric continuation of the period system and certified monodromy.

The period matrix solves dY = Y M(t) with Y(t0) = Id, and loop monodromy
acts on Y from the left.  Everything here runs in double precision with an
embedded Dormand-Prince 5(4) stepper plus a fixed half-step revalidation
pass; the exact layer owns all symbolic truth, so the numerics only ever
certify inequalities (defect sizes, singular value gaps).

Loops are planned deterministically: the basepoint sits on the real axis
left of every singular value, each finite loop walks a comb below the real
axis, circles its singular value counterclockwise and walks back, and one
big clockwise circle represents the loop around infinity.  With the loops
ordered left to right the composite is null-homotopic, which shows up as
gamma_inf @ gamma_k @ ... @ gamma_1 = Id up to integration error.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .derham import ConnectionMatrix, HyperellipticPencil, all_connection_matrices
from .errors import InconclusiveError, InvariantError, PencilError
from .exact.linalg import RatMatrix
from .pairing import cup_matrix

# ----------------------------------------------------------------------
# paths


@dataclass(frozen=True)
class Segment:
    start: complex
    end: complex

    def at(self, tau: float) -> complex:
        return self.start + tau * (self.end - self.start)

    def velocity(self, tau: float) -> complex:
        return self.end - self.start

    def reversed(self) -> "Segment":
        return Segment(self.end, self.start)


@dataclass(frozen=True)
class Arc:
    center: complex
    radius: float
    angle0: float
    angle1: float

    def at(self, tau: float) -> complex:
        phi = self.angle0 + tau * (self.angle1 - self.angle0)
        return self.center + self.radius * cmath.exp(1j * phi)

    def velocity(self, tau: float) -> complex:
        phi = self.angle0 + tau * (self.angle1 - self.angle0)
        return 1j * (self.angle1 - self.angle0) * self.radius * cmath.exp(1j * phi)

    def reversed(self) -> "Arc":
        return Arc(self.center, self.radius, self.angle1, self.angle0)


@dataclass(frozen=True)
class Loop:
    pieces: tuple
    about: complex | None  # None marks the loop around infinity

    def label(self) -> str:
        if self.about is None:
            return "infinity"
        z = self.about
        return f"{z.real:.6g}" + (f"{z.imag:+.6g}i" if abs(z.imag) > 1e-12 else "")


@dataclass(frozen=True)
class PathPlan:
    basepoint: Fraction
    loops: tuple[Loop, ...]
    clearance: float
    singular_values: tuple[complex, ...]


def singular_values_numeric(pencil: HyperellipticPencil) -> list[complex]:
    """Roots of the squarefree part of the discriminant (one parameter)."""
    if len(pencil.params) != 1:
        raise PencilError("numeric continuation needs a one-parameter pencil")
    roots: list[complex] = []
    for fac, _ in pencil.singular_factors:
        name = pencil.params[0]
        coeffs = [c.constant_value() for c in fac.as_univariate(name)]
        if len(coeffs) <= 1:
            continue
        arr = np.array([complex(c) for c in reversed(coeffs)])
        roots.extend(np.roots(arr).tolist())
    roots.sort(key=lambda z: (round(z.real, 12), round(z.imag, 12)))
    return roots


def plan_loops(pencil: HyperellipticPencil) -> PathPlan:
    """Deterministic basepoint and loop system for the punctured line.

    Clearance is half the minimal distance between singular values (a unit
    scale substitutes when there are fewer than two).  Every planned piece
    is checked against the clearance; violations are planning errors.
    """
    sing = singular_values_numeric(pencil)
    if len(sing) >= 2:
        dmin = min(
            abs(a - b) for i, a in enumerate(sing) for b in sing[i + 1 :]
        )
        rho = dmin / 2
    elif len(sing) == 1:
        rho = max(1.0, abs(sing[0])) / 2
    else:
        rho = 1.0
    left = min((z.real for z in sing), default=0.0)
    t0 = Fraction(math.floor(left - 2 * rho))
    base = complex(t0)
    depth = min((z.imag for z in sing), default=0.0) - 2 * rho
    loops = []
    for s in sing:
        descend = Segment(base, complex(base.real, depth))
        across = Segment(complex(base.real, depth), complex(s.real, depth))
        up = Segment(complex(s.real, depth), s - 1j * rho)
        circle = Arc(s, rho, -math.pi / 2, 3 * math.pi / 2)
        pieces = (
            descend,
            across,
            up,
            circle,
            up.reversed(),
            across.reversed(),
            descend.reversed(),
        )
        loops.append(Loop(pieces=pieces, about=s))
    R = 2 * max([abs(z) for z in sing] + [abs(base)] + [1.0]) + 1
    reach = Segment(base, complex(-R, 0.0))
    big = Arc(0.0, R, math.pi, -math.pi)  # clockwise: inverse of all finite loops
    loops.append(Loop(pieces=(reach, big, reach.reversed()), about=None))
    plan = PathPlan(
        basepoint=t0,
        loops=tuple(loops),
        clearance=rho,
        singular_values=tuple(sing),
    )
    _check_clearance(plan)
    return plan


def _check_clearance(plan: PathPlan) -> None:
    for loop in plan.loops:
        for piece in loop.pieces:
            for k in range(129):
                z = piece.at(k / 128)
                for s in plan.singular_values:
                    if abs(z - s) < plan.clearance * 0.999:
                        raise PencilError("planned path violates the clearance radius")


# ----------------------------------------------------------------------
# compiled connection and the stepper


class CompiledConnection:
    """Connection matrix specialized for fast complex evaluation (d = 1)."""

    def __init__(self, M: ConnectionMatrix):
        if len({M.parameter}) != 1:
            raise PencilError("compilation needs a single parameter")
        self.parameter = M.parameter
        self.dim = M.matrix.rows
        self._entries = []
        for row in M.matrix.data:
            crow = []
            for e in row:
                num = _poly_coeffs_complex(e.num, M.parameter)
                den = _poly_coeffs_complex(e.den, M.parameter)
                crow.append((num, den))
            self._entries.append(crow)

    def eval(self, t: complex) -> np.ndarray:
        out = np.empty((self.dim, self.dim), dtype=complex)
        for i, row in enumerate(self._entries):
            for j, (num, den) in enumerate(row):
                out[i, j] = _horner(num, t) / _horner(den, t)
        return out


def _poly_coeffs_complex(p, name: str) -> list[complex]:
    if p.is_zero():
        return [0j]
    coeffs = p.as_univariate(name) if name in p.vars else [p]
    return [complex(c.constant_value()) for c in coeffs]


def _horner(coeffs: list[complex], t: complex) -> complex:
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


@dataclass
class NumericSolution:
    samples: list  # (t, Y) pairs recorded at piece boundaries
    end: np.ndarray
    error_estimate: float
    accepted_steps: int
    rejected_steps: int


# Dormand-Prince 5(4) tableau
_DP_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_DP_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_DP_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_DP_B4 = (
    5179 / 57600,
    0.0,
    7571 / 16695,
    393 / 640,
    -92097 / 339200,
    187 / 2100,
    1 / 40,
)


def _rhs(conn: CompiledConnection, piece, tau: float, Y: np.ndarray) -> np.ndarray:
    t = piece.at(tau)
    return (Y @ conn.eval(t)) * piece.velocity(tau)


def _integrate_piece_adaptive(conn, piece, Y, tol):
    tau = 0.0
    h = 0.1
    accepted = rejected = 0
    steps = []
    while tau < 1.0:
        h = min(h, 1.0 - tau)
        k = [None] * 7
        k[0] = _rhs(conn, piece, tau, Y)
        for i in range(1, 7):
            acc = np.zeros_like(Y)
            for j, a in enumerate(_DP_A[i]):
                if a:
                    acc = acc + a * k[j]
            k[i] = _rhs(conn, piece, tau + _DP_C[i] * h, Y + h * acc)
        y5 = Y + h * sum(b * ki for b, ki in zip(_DP_B5, k) if b)
        y4 = Y + h * sum(b * ki for b, ki in zip(_DP_B4, k) if b)
        scale = tol + tol * np.abs(Y).max()
        err = np.abs(y5 - y4).max() / scale
        if err <= 1.0:
            tau += h
            Y = y5
            accepted += 1
            steps.append(h)
        else:
            rejected += 1
        factor = 0.9 * (err ** -0.2) if err > 0 else 5.0
        h *= min(5.0, max(0.2, factor))
        if h < 1e-13:
            raise InconclusiveError("path too close to singularity")
    return Y, steps, accepted, rejected


def _integrate_piece_fixed(conn, piece, Y, steps):
    """Re-walk the accepted grid with halved steps (order-5 single steps)."""
    tau = 0.0
    for h_full in steps:
        for h in (h_full / 2, h_full / 2):
            k = [None] * 7
            k[0] = _rhs(conn, piece, tau, Y)
            for i in range(1, 7):
                acc = np.zeros_like(Y)
                for j, a in enumerate(_DP_A[i]):
                    if a:
                        acc = acc + a * k[j]
                k[i] = _rhs(conn, piece, tau + _DP_C[i] * h, Y + h * acc)
            Y = Y + h * sum(b * ki for b, ki in zip(_DP_B5, k) if b)
            tau += h
    return Y


def integrate_connection(
    conn: CompiledConnection, pieces, tol: float = 1e-10, y0: np.ndarray | None = None
) -> NumericSolution:
    """Continue Y along the concatenated pieces, with half-step validation.

    The primary pass is adaptive; the validation pass re-walks the accepted
    grid at half steps and the difference is the reported error estimate.
    det Y is monitored; a vanishing determinant marks a broken run.
    """
    dim = conn.dim
    Y = np.eye(dim, dtype=complex) if y0 is None else np.array(y0, dtype=complex)
    Yh = Y.copy()
    samples = [(pieces[0].at(0.0), Y.copy())] if pieces else []
    accepted = rejected = 0
    for piece in pieces:
        Y, steps, acc, rej = _integrate_piece_adaptive(conn, piece, Y, tol)
        Yh = _integrate_piece_fixed(conn, piece, Yh, steps)
        accepted += acc
        rejected += rej
        samples.append((piece.at(1.0), Y.copy()))
        if abs(np.linalg.det(Y)) < 1e-12:
            raise InvariantError("solution matrix degenerated along the path")
    err = float(np.abs(Y - Yh).max())
    return NumericSolution(
        samples=samples,
        end=Y,
        error_estimate=err,
        accepted_steps=accepted,
        rejected_steps=rejected,
    )


# ----------------------------------------------------------------------
# monodromy


@dataclass
class MonodromyReport:
    basepoint: Fraction
    loop_labels: list[str]
    matrices: list[np.ndarray]
    symplectic_defect: float
    product_defect: float
    algebra_dimension: int
    trace_table: list[complex]
    tolerance: float
    integration_error: float


def monodromy(
    pencil: HyperellipticPencil,
    plan: PathPlan | None = None,
    tol: float = 1e-10,
    truncation: int | None = None,
) -> MonodromyReport:
    """One matrix per planned loop, plus the certified invariants.

    Matrices act on the left; with the plan's left-to-right loop order the
    product gamma_inf @ ... @ gamma_1 returns to the identity.  Each matrix
    preserves the exact cup pairing evaluated at the basepoint.
    """
    if plan is None:
        plan = plan_loops(pencil)
    M = all_connection_matrices(pencil)[0]
    conn = CompiledConnection(M)
    mats = []
    labels = []
    total_err = 0.0
    for loop in plan.loops:
        sol = integrate_connection(conn, loop.pieces, tol)
        mats.append(sol.end)
        labels.append(loop.label())
        total_err += sol.error_estimate
    prod = np.eye(conn.dim, dtype=complex)
    for gamma in mats:
        prod = gamma @ prod
    product_defect = float(np.abs(prod - np.eye(conn.dim)).max())
    J = cup_matrix(pencil, truncation).matrix
    point = {pencil.params[0]: plan.basepoint}
    Jnum = np.array(
        [[complex(e.eval_scalar(point)) for e in row] for row in J.data]
    )
    scale = float(np.abs(Jnum).max())
    sympl = 0.0
    for gamma in mats:
        sympl = max(sympl, float(np.abs(gamma.T @ Jnum @ gamma - Jnum).max()) / scale)
    dim_alg = algebra_dimension(mats, tol=1e-8, word_cap=2 * pencil.genus)
    return MonodromyReport(
        basepoint=plan.basepoint,
        loop_labels=labels,
        matrices=mats,
        symplectic_defect=sympl,
        product_defect=product_defect,
        algebra_dimension=dim_alg,
        trace_table=[complex(np.trace(g)) for g in mats],
        tolerance=tol,
        integration_error=total_err,
    )


def algebra_dimension(matrices, tol: float = 1e-8, word_cap: int | None = None) -> int:
    """Dimension of the span of words of bounded length in the matrices.

    Words up to length word_cap (default: matrix size) together with the
    identity are vectorized and the numeric rank is read off the singular
    values at the relative threshold tol.  Full rank n^2 certifies
    irreducibility of the generated module.
    """
    if not matrices:
        raise PencilError("need at least one matrix")
    n = matrices[0].shape[0]
    cap = word_cap if word_cap is not None else n
    words = [np.eye(n, dtype=complex)]
    layer = [np.eye(n, dtype=complex)]
    for _ in range(cap):
        nxt = []
        for W in layer:
            for G in matrices:
                nxt.append(W @ G)
        words.extend(nxt)
        layer = nxt
    stacked = np.array([w.flatten() for w in words])
    sv = np.linalg.svd(stacked, compute_uv=False)
    if sv[0] == 0:
        return 0
    return int(np.sum(sv > tol * sv[0]))


# ----------------------------------------------------------------------
# independence of first-kind integrals and their derivatives


@dataclass
class ColumnKey:
    kind: str  # "Y" or "dY"
    row: int  # 1-based homology row
    form: int  # 1-based first-kind index (j <= g)
    power: int  # exponent of the t multiplier

    def label(self) -> str:
        base = f"t^{self.power}*" if self.power else ""
        mat = "Y" if self.kind == "Y" else "dY"
        return f"{base}{mat}[{self.row}][{self.form}]"


@dataclass
class IndependenceVerdict:
    independent: bool
    gap: float
    degree_bound: int
    samples: int
    tolerance: float
    columns: list[ColumnKey]
    coefficients: list[complex] | None  # aligned with columns when dependent
    zero_columns: list[ColumnKey]
    sample_points: list[complex]

    @property
    def kind(self) -> str:
        return "independent" if self.independent else "relation_candidate"


def _sampling_path(plan: PathPlan):
    """Non-closed comb path that winds below the singular set twice and
    above it once, so consecutive sweeps sample different sheets of Y.

    Single-sheet samples leave the monomial-multiplied column family
    nearly degenerate (the entries flatten towards their common asymptotic
    behaviour); crossing between sheets is what pushes the smallest
    singular value far above the integration noise.
    """
    sing = plan.singular_values
    rho = plan.clearance
    base = complex(plan.basepoint)
    right = max([z.real for z in sing] + [base.real + 1.0]) + 2 * rho
    depth = min([z.imag for z in sing] + [0.0]) - rho
    height = max([z.imag for z in sing] + [0.0]) + rho
    lo_l = complex(base.real, depth)
    lo_r = complex(right, depth)
    hi_r = complex(right, height)
    hi_l = complex(base.real, height)
    wind = (
        Segment(lo_l, lo_r),
        Segment(lo_r, hi_r),
        Segment(hi_r, hi_l),
        Segment(hi_l, lo_l),
    )
    return (Segment(base, lo_l),) + wind + wind + (Segment(lo_l, lo_r),)


def first_kind_independence(
    pencil: HyperellipticPencil,
    degree_bound: int = 3,
    samples: int = 200,
    tol: float = 1e-6,
    step_tol: float = 1e-13,
) -> IndependenceVerdict:
    """Search for function-field relations among first-kind period entries
    and their derivatives, with polynomial multipliers up to degree_bound.

    The family { t^m Y[k][j], t^m (dY)[k][j] : j <= g, m <= degree_bound }
    is evaluated by continuation at `samples` points along a non-closed
    path; columns are scaled to unit norm and the verdict comes from the
    singular value gap: retained over discarded must reach 1/tol, else the
    test is inconclusive.  Relations are only refuted up to the stated
    degree bound.
    """
    if len(pencil.params) != 1:
        raise PencilError("independence test needs a one-parameter pencil")
    g = pencil.genus
    dim = 2 * g
    n_columns = 2 * dim * g * (degree_bound + 1)
    if samples < 2 * n_columns:
        raise InconclusiveError(
            f"inconclusive: need at least {2 * n_columns} samples for "
            f"{n_columns} columns"
        )
    plan = plan_loops(pencil)
    M = all_connection_matrices(pencil)[0]
    conn = CompiledConnection(M)
    pieces = _sampling_path(plan)
    per = [samples // len(pieces)] * len(pieces)
    for i in range(samples - sum(per)):
        per[i] += 1
    Y = np.eye(dim, dtype=complex)
    points = []
    values = []  # (t, Y, dY)
    integration_error = 0.0
    for piece, count in zip(pieces, per):
        prev = 0.0
        for idx in range(count):
            tau = (idx + 1) / count
            sol = integrate_connection(
                conn, [Segment(piece.at(prev), piece.at(tau))], step_tol, y0=Y
            )
            Y = sol.end
            integration_error += sol.error_estimate
            prev = tau
            t = piece.at(tau)
            dY = Y @ conn.eval(t)
            points.append(t)
            values.append((t, Y.copy(), dY))
    keys = []
    cols = []
    for kind in ("Y", "dY"):
        for k in range(1, dim + 1):
            for j in range(1, g + 1):
                for m in range(degree_bound + 1):
                    keys.append(ColumnKey(kind=kind, row=k, form=j, power=m))
                    col = np.array(
                        [
                            (t ** m) * (Ym[k - 1][j - 1] if kind == "Y" else dYm[k - 1][j - 1])
                            for (t, Ym, dYm) in values
                        ]
                    )
                    cols.append(col)
    A = np.array(cols).T  # samples x columns
    norms = np.linalg.norm(A, axis=0)
    floor_zero = 1e-12 * max(norms.max(), 1.0)
    zero_idx = [i for i, nv in enumerate(norms) if nv <= floor_zero]
    live_idx = [i for i in range(len(keys)) if i not in zero_idx]
    zero_keys = [keys[i] for i in zero_idx]
    if not live_idx:
        raise InconclusiveError("inconclusive: all columns vanished")
    B = A[:, live_idx] / norms[live_idx]
    sv = np.linalg.svd(B, compute_uv=False)
    C = len(live_idx)
    svd_noise = max(B.shape) * np.finfo(float).eps * sv[0]
    # Weyl bound: column-wise relative drift times sqrt(#columns)
    noise = max(svd_noise, math.sqrt(C) * integration_error)
    nrank = int(np.sum(sv > noise))
    if nrank == C:
        gap = float(sv[-1] / noise)
        if gap < 1 / tol and not zero_keys:
            raise InconclusiveError("inconclusive: increase Npts or precision")
        if zero_keys:
            # identically zero functions are definite relations
            coeffs = [0j] * len(keys)
            coeffs[zero_idx[0]] = 1 + 0j
            return IndependenceVerdict(
                independent=False,
                gap=float("inf"),
                degree_bound=degree_bound,
                samples=samples,
                tolerance=tol,
                columns=keys,
                coefficients=coeffs,
                zero_columns=zero_keys,
                sample_points=points,
            )
        return IndependenceVerdict(
            independent=True,
            gap=gap,
            degree_bound=degree_bound,
            samples=samples,
            tolerance=tol,
            columns=keys,
            coefficients=None,
            zero_columns=[],
            sample_points=points,
        )
    gap = float(sv[nrank - 1] / sv[nrank]) if sv[nrank] > 0 else float("inf")
    if gap < 1 / tol:
        raise InconclusiveError("inconclusive: increase Npts or precision")
    _, _, Vh = np.linalg.svd(B, full_matrices=True)
    rel = Vh[-1].conj()
    coeffs = [0j] * len(keys)
    for pos, i in enumerate(live_idx):
        coeffs[i] = complex(rel[pos] / norms[i])
    return IndependenceVerdict(
        independent=False,
        gap=gap,
        degree_bound=degree_bound,
        samples=samples,
        tolerance=tol,
        columns=keys,
        coefficients=coeffs,
        zero_columns=zero_keys,
        sample_points=points,
    )
