import random
from fractions import Fraction

import pytest
import sympy as sp

from abelpencil.derham import (
    curvature,
    denominators_regular,
    first_basis_ode,
    gauss_manin_matrix,
    kodaira_spencer_block,
    reduce_form,
    validate_pencil,
)
from abelpencil.errors import PencilError
from abelpencil.exact.poly import MultiPoly
from abelpencil.exact.ratfun import MultiRational
from abelpencil.exact.unipoly import XPoly

from oracles import entries_match, sympy_connection_matrix

x = MultiPoly.var("x")
t = MultiPoly.var("t")

# golden connection matrices, frozen from the independent sympy reduction
# (see test_gauss_manin_matches_oracle, which recomputes them live)
GOLDEN_LEGENDRE = [
    ["-1/(2*t - 2)", "-1/(2*t - 2)"],
    ["1/(2*t^2 - 2*t)", "1/(2*t - 2)"],
]
GOLDEN_GENUS2 = [
    [
        "(-t^2 + 6*t - 11)/(2*t^3 - 12*t^2 + 22*t - 12)",
        "-3/(t^3 - 6*t^2 + 11*t - 6)",
        "(-3*t)/(t^3 - 6*t^2 + 11*t - 6)",
        "(-3*t^2)/(t^3 - 6*t^2 + 11*t - 6)",
    ],
    [
        "(-t^2 + 6*t + 11)/(2*t^4 - 12*t^3 + 22*t^2 - 12*t)",
        "(-t^2 + 6*t + 11)/(2*t^3 - 12*t^2 + 22*t - 12)",
        "(11*t - 3)/(t^3 - 6*t^2 + 11*t - 6)",
        "(11*t^2 - 3*t)/(t^3 - 6*t^2 + 11*t - 6)",
    ],
    [
        "(-t - 12)/(2*t^4 - 12*t^3 + 22*t^2 - 12*t)",
        "(-t - 12)/(2*t^3 - 12*t^2 + 22*t - 12)",
        "(-t^2 - 12*t)/(2*t^3 - 12*t^2 + 22*t - 12)",
        "(-18*t^2 + 11*t - 6)/(2*t^3 - 12*t^2 + 22*t - 12)",
    ],
    [
        "3/(2*t^4 - 12*t^3 + 22*t^2 - 12*t)",
        "3/(2*t^3 - 12*t^2 + 22*t - 12)",
        "(3*t)/(2*t^3 - 12*t^2 + 22*t - 12)",
        "(3*t^2)/(2*t^3 - 12*t^2 + 22*t - 12)",
    ],
]


def mat_strings(M):
    return [[str(e) for e in row] for row in M.data]


# ----------------------------------------------------------------------
# validate_pencil


def test_validate_legendre(legendre_pencil):
    p = legendre_pencil
    assert p.genus == 1
    assert p.discriminant == t ** 2 * (t - 1) ** 2
    assert {str(f) for f, _ in p.singular_factors} == {"t", "t - 1"}
    assert all(m == 2 for _, m in p.singular_factors)


def test_validate_constant():
    p = validate_pencil(x ** 3 - 1)
    assert p.genus == 1
    assert p.singular_factors == ()
    assert p.params == ()


def test_validate_genus2(genus2_pencil):
    p = genus2_pencil
    assert p.genus == 2
    assert {str(f) for f, _ in p.singular_factors} == {"t", "t - 1", "t - 2", "t - 3"}


def test_validate_rejects_even_degree():
    with pytest.raises(PencilError, match="odd-degree"):
        validate_pencil(x ** 4 - t)


def test_validate_rejects_quadratic():
    with pytest.raises(PencilError):
        validate_pencil(x - t)


def test_validate_rejects_nonmonic():
    with pytest.raises(PencilError, match="monic"):
        validate_pencil(t * x ** 3 - 1)


def test_validate_rejects_everywhere_singular():
    with pytest.raises(PencilError, match="singular"):
        validate_pencil(x ** 3 - 3 * t * x ** 2 + 3 * t ** 2 * x - t ** 3)  # (x-t)^3


def test_validate_rejects_reserved_parameter():
    lam = MultiPoly.var("lam1")
    with pytest.raises(PencilError, match="reserved"):
        validate_pencil(x ** 3 - lam)


def test_validate_rejects_too_many_parameters():
    a, b, c = (MultiPoly.var(v) for v in ("a", "b", "c"))
    with pytest.raises(PencilError):
        validate_pencil(x ** 3 + a * x ** 2 + b * x + c)


# ----------------------------------------------------------------------
# reduce_form


def test_reduce_fx_over_y3_vanishes(legendre_pencil):
    got = reduce_form(legendre_pencil, legendre_pencil.f.diff("x"), 3)
    assert got.is_zero()


def test_reduce_isotrivial_basis_derivatives(iso_pencil):
    # d/dt e_j = -(1/2) x^(j-1) f_t dx/y^3 with f_t = -1 here, so the
    # integrands are +1/2 and +x/2; the matrix diag(-1/(6t), 1/(6t)) follows
    half = Fraction(1, 2)
    one = reduce_form(iso_pencil, MultiPoly.const(half, ("x",)), 3)
    assert [str(c) for c in one.coords] == ["-1/(6*t)", "0"]
    two = reduce_form(iso_pencil, MultiPoly.const(half, ("x",)) * x, 3)
    assert [str(c) for c in two.coords] == ["0", "1/(6*t)"]
    # linearity pins the opposite sign
    neg = reduce_form(iso_pencil, MultiPoly.const(-half, ("x",)) * x, 3)
    assert [str(c) for c in neg.coords] == ["0", "-1/(6*t)"]


def test_reduce_idempotent_on_basis(legendre_pencil, genus2_pencil):
    for pencil in (legendre_pencil, genus2_pencil):
        dim = pencil.dim
        for i in range(dim):
            got = reduce_form(pencil, x ** i, 1)
            expected = [MultiRational.from_poly(int(k == i)) for k in range(dim)]
            assert list(got.coords) == expected


def test_reduce_exact_forms_vanish(legendre_pencil, genus2_pencil, iso_pencil):
    # d(x^m / y) = (m x^(m-1) f - x^m f_x / 2) dx / y^3 must reduce to zero
    for pencil in (legendre_pencil, genus2_pencil, iso_pencil):
        f = pencil.f
        fx = f.diff("x")
        for m in range(1, 2 * pencil.genus + 3):
            P = f.shift("x", m - 1) * m - fx.shift("x", m) * Fraction(1, 2)
            got = reduce_form(pencil, P, 3)
            assert got.is_zero(), (pencil, m)


def test_reduce_rejects_bad_pole_order(legendre_pencil):
    with pytest.raises(PencilError):
        reduce_form(legendre_pencil, x, 2)
    with pytest.raises(PencilError):
        reduce_form(legendre_pencil, x, -1)


def test_reduce_high_pole_order(legendre_pencil):
    # consistency across pole orders: P f dx/y^5 reduces like P dx/y^3
    f = legendre_pencil.f
    P = x ** 2 - 3 * x
    via5 = reduce_form(legendre_pencil, P * f, 5)
    via3 = reduce_form(legendre_pencil, P, 3)
    assert via5 == via3


# ----------------------------------------------------------------------
# gauss_manin_matrix


def test_gm_constant_pencil_is_zero(constant_mats):
    assert constant_mats[0].matrix.is_zero()


def test_gm_isotrivial_diagonal(iso_mats):
    M = iso_mats[0]
    assert mat_strings(M.matrix) == [["-1/(6*t)", "0"], ["0", "1/(6*t)"]]


def test_gm_legendre_golden(legendre_mats):
    assert mat_strings(legendre_mats[0].matrix) == GOLDEN_LEGENDRE


def test_gm_genus2_golden(genus2_mats):
    assert mat_strings(genus2_mats[0].matrix) == GOLDEN_GENUS2


def test_gauss_manin_matches_oracle(legendre_mats, genus2_mats):
    xs = sp.Symbol("x")
    oracle = sympy_connection_matrix(xs * (xs - 1) * (xs - sp.Symbol("t")), xs, "t")
    assert entries_match(mat_strings(legendre_mats[0].matrix), oracle, "t")
    oracle2 = sympy_connection_matrix(
        xs * (xs - 1) * (xs - 2) * (xs - 3) * (xs - sp.Symbol("t")), xs, "t"
    )
    assert entries_match(mat_strings(genus2_mats[0].matrix), oracle2, "t")


def test_gm_denominators_regular(legendre_pencil, legendre_mats, genus2_pencil, genus2_mats):
    assert denominators_regular(legendre_pencil, legendre_mats[0])
    assert denominators_regular(genus2_pencil, genus2_mats[0])


def test_gm_leibniz_consistency(legendre_pencil, legendre_mats):
    # nabla(c e_j) = c' e_j + c nabla(e_j) for function coefficients c(t)
    rng = random.Random(23)
    pencil = legendre_pencil
    M = legendre_mats[0].matrix
    f, fx, ft = pencil.f, pencil.f.diff("x"), pencil.f.diff("t")
    for j in range(2):
        c = MultiPoly.const(rng.randint(1, 5)) * t ** rng.randint(1, 3) + rng.randint(-4, 4)
        # direct route: d/dt (c x^j dx/y) at pole order 3
        P = c.diff("t") * f.shift("x", j) - c * ft.shift("x", j) * Fraction(1, 2)
        direct = reduce_form(pencil, P, 3)
        cr = MultiRational.from_poly(c)
        dc = MultiRational.from_poly(c.diff("t"))
        expected = [
            (dc if k == j else MultiRational.from_poly(0)) + cr * M[k, j]
            for k in range(2)
        ]
        assert list(direct.coords) == expected


def test_kodaira_spencer_blocks(iso_mats, legendre_mats, constant_mats):
    assert kodaira_spencer_block(iso_mats[0]).is_zero()
    assert kodaira_spencer_block(constant_mats[0]).is_zero()
    T = kodaira_spencer_block(legendre_mats[0])
    assert not T.is_zero()
    assert str(T[0, 0]) == "1/(2*t^2 - 2*t)"


def test_first_basis_ode_legendre(legendre_mats):
    a2, a1, a0 = first_basis_ode(legendre_mats[0])
    # t(1-t) u'' + (1-2t) u' - u/4 = 0, scaled to integer coefficients
    assert (a2, a1, a0) == (4 * t ** 2 - 4 * t, 8 * t - 4, MultiPoly.const(1))


def test_first_basis_ode_needs_coupling(iso_mats):
    with pytest.raises(PencilError, match="first-order"):
        first_basis_ode(iso_mats[0])


def test_flatness_two_parameters(genus2_two_param_mats):
    M1, M2 = genus2_two_param_mats
    assert curvature(M1, M2).is_zero()


def test_blocks_partition(legendre_mats):
    M = legendre_mats[0]
    g = M.genus
    full = M.matrix
    assert M.block_r[0, 0] == full[0, 0]
    assert M.block_s[0, 0] == full[0, g]
    assert M.block_t[0, 0] == full[g, 0]
    assert M.block_u[0, 0] == full[g, g]
