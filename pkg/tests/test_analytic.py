import cmath
import math

import numpy as np
import pytest

from abelpencil.analytic import (
    Arc,
    CompiledConnection,
    Segment,
    algebra_dimension,
    first_kind_independence,
    integrate_connection,
    monodromy,
    plan_loops,
    singular_values_numeric,
)
from abelpencil.derham import all_connection_matrices, validate_pencil
from abelpencil.errors import InconclusiveError, PencilError
from abelpencil.exact.poly import MultiPoly

x = MultiPoly.var("x")
t = MultiPoly.var("t")


# ----------------------------------------------------------------------
# planning


def test_singular_values(legendre_pencil, genus2_pencil):
    assert sorted(z.real for z in singular_values_numeric(legendre_pencil)) == pytest.approx([0.0, 1.0])
    assert sorted(z.real for z in singular_values_numeric(genus2_pencil)) == pytest.approx(
        [0.0, 1.0, 2.0, 3.0]
    )


def test_plan_geometry(legendre_pencil):
    plan = plan_loops(legendre_pencil)
    assert plan.clearance == pytest.approx(0.5)
    assert complex(plan.basepoint).real < 0
    # one loop per singular value plus the loop around infinity
    assert len(plan.loops) == 3
    assert plan.loops[-1].about is None


def test_plan_requires_one_parameter(genus2_two_param_pencil):
    with pytest.raises(PencilError):
        plan_loops(genus2_two_param_pencil)


# ----------------------------------------------------------------------
# integration


def test_zero_connection_gives_identity(constant_pencil, constant_mats):
    conn = CompiledConnection(constant_mats[0])
    sol = integrate_connection(conn, [Segment(0j, 3 + 1j)], 1e-10)
    assert np.abs(sol.end - np.eye(2)).max() == 0.0


def test_contractible_loop_is_identity(legendre_mats):
    conn = CompiledConnection(legendre_mats[0])
    square = [
        Segment(-1 + 0j, -1 - 1j),
        Segment(-1 - 1j, -2 - 1j),
        Segment(-2 - 1j, -2 + 0j),
        Segment(-2 + 0j, -1 + 0j),
    ]
    sol = integrate_connection(conn, square, 1e-10)
    assert np.abs(sol.end - np.eye(2)).max() < 1e-8
    assert sol.error_estimate < 1e-8


def test_homotopic_paths_agree(legendre_mats):
    conn = CompiledConnection(legendre_mats[0])
    a = integrate_connection(conn, [Segment(-1 + 0j, -1 - 2j), Segment(-1 - 2j, -3 - 2j), Segment(-3 - 2j, -3 + 0j)], 1e-10)
    b = integrate_connection(conn, [Segment(-1 + 0j, -3 + 0j)], 1e-10)
    # both paths stay left of the singularities and are homotopic
    assert np.abs(a.end - b.end).max() < 1e-8


def test_isotrivial_monodromy_order_six(iso_pencil):
    rep = monodromy(iso_pencil, tol=1e-10)
    gamma = rep.matrices[0]
    assert np.abs(np.linalg.matrix_power(gamma, 6) - np.eye(2)).max() < 1e-8
    expected = np.diag([cmath.exp(-1j * math.pi / 3), cmath.exp(1j * math.pi / 3)])
    assert np.abs(gamma - expected).max() < 1e-8
    assert rep.algebra_dimension == 2
    assert rep.product_defect < 1e-8


def test_legendre_monodromy_unipotent(legendre_pencil):
    rep = monodromy(legendre_pencil, tol=1e-10)
    finite = [m for lbl, m in zip(rep.loop_labels, rep.matrices) if lbl != "infinity"]
    assert len(finite) == 2
    for gamma in finite:
        assert abs(np.trace(gamma) - 2) < 1e-8
        assert np.abs((gamma - np.eye(2)) @ (gamma - np.eye(2))).max() < 1e-8
    assert rep.product_defect < 1e-8
    assert rep.symplectic_defect < 1e-8
    assert rep.algebra_dimension == 4


def test_constant_monodromy_identity(constant_pencil):
    rep = monodromy(constant_pencil, tol=1e-10)
    for gamma in rep.matrices:
        assert np.abs(gamma - np.eye(2)).max() < 1e-10


def test_defects_scale_with_tolerance(legendre_pencil):
    # order sanity: shrinking the step tolerance 10x must shrink the
    # certified defects at least 4x (away from the roundoff floor)
    loose = monodromy(legendre_pencil, tol=1e-5)
    tight = monodromy(legendre_pencil, tol=1e-6)
    assert tight.product_defect <= loose.product_defect / 4 or loose.product_defect < 1e-12
    assert (
        tight.integration_error <= loose.integration_error / 4
        or loose.integration_error < 1e-12
    )


# ----------------------------------------------------------------------
# algebra dimension


def test_algebra_dimension_identity_only():
    assert algebra_dimension([np.eye(3)], tol=1e-8) == 1


def test_algebra_dimension_diagonal_pair():
    m = np.diag([2.0 + 0j, 0.5 + 0j])
    assert algebra_dimension([m], tol=1e-8, word_cap=2) == 2


def test_algebra_dimension_conjugation_invariant(legendre_pencil):
    rep = monodromy(legendre_pencil, tol=1e-10)
    base = rep.algebra_dimension
    rng = np.random.default_rng(5)
    C = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    Cinv = np.linalg.inv(C)
    conj = [C @ m @ Cinv for m in rep.matrices]
    assert algebra_dimension(conj, tol=2e-8, word_cap=2) == base


def test_algebra_dimension_requires_input():
    with pytest.raises(PencilError):
        algebra_dimension([], tol=1e-8)


# ----------------------------------------------------------------------
# independence


def test_legendre_independent(legendre_pencil):
    v = first_kind_independence(legendre_pencil, degree_bound=3, samples=200)
    assert v.independent
    assert v.gap >= 1e6
    assert v.zero_columns == []


def test_isotrivial_relation_recovered(iso_pencil):
    v = first_kind_independence(iso_pencil, degree_bound=3, samples=200)
    assert not v.independent
    assert v.gap >= 1e6
    # the nonvanishing row satisfies u + 6t u' = 0: at every sample the
    # evaluated coefficient pair must be proportional to (1, 6t)
    by_key = dict(zip([k.label() for k in v.columns], v.coefficients))
    for row in (1, 2):
        cy = {k.power: c for k, c in zip(v.columns, v.coefficients) if k.kind == "Y" and k.row == row}
        cd = {k.power: c for k, c in zip(v.columns, v.coefficients) if k.kind == "dY" and k.row == row}
        weight = max(abs(c) for c in list(cy.values()) + list(cd.values()))
        if weight < 1e-9:
            continue  # the relation may be supported on a single row
        for tp in v.sample_points[::25]:
            a = sum(c * tp ** m for m, c in cy.items())
            b = sum(c * tp ** m for m, c in cd.items())
            assert abs(b - 6 * tp * a) <= 1e-6 * max(abs(a), abs(b))


def test_constant_pencil_zero_derivative_columns(constant_pencil):
    v = first_kind_independence(constant_pencil, degree_bound=2, samples=60)
    assert not v.independent
    assert any(key.kind == "dY" for key in v.zero_columns)


def test_independence_requires_one_parameter(genus2_two_param_pencil):
    with pytest.raises(PencilError):
        first_kind_independence(genus2_two_param_pencil)


def test_undersampled_is_inconclusive(legendre_pencil):
    # fewer samples than columns cannot certify anything
    with pytest.raises(InconclusiveError):
        first_kind_independence(legendre_pencil, degree_bound=3, samples=12)
