import math

import numpy as np
import pytest

from dhym.errors import InadmissibleFieldError
from dhym.torus import (
    analytic_phase_field,
    build_torus_problem,
    hessian_entries,
    newton_solve,
    phase_consistency_error,
    phase_field,
    residual,
    residual_linearization,
    trig_field,
    verify_solution,
)


def test_background_angle():
    prob = build_torus_problem(3, 3, None, 16)
    assert abs(prob.theta0 - 2 * math.atan2(1, 3)) < 1e-15
    assert abs(1 / math.tan(prob.theta0) - (3 * 3 - 1) / (3 + 3)) < 1e-14
    assert prob.theta0 < math.pi / 2  # hypercritical


def test_boundary_background_rejected():
    with pytest.raises(ValueError):
        build_torus_problem(1, 1, None, 16)  # a1*a2 = 1 boundary
    with pytest.raises(ValueError):
        build_torus_problem(-3, -3, None, 16)


def test_oversized_perturbation_rejected_with_point():
    with pytest.raises(InadmissibleFieldError, match="grid point"):
        build_torus_problem(3, 3, (5.0, 1, 1), 32)


def test_trig_field_mean_zero():
    f = trig_field(0.1, 1, 2, 64)
    assert abs(f.mean()) < 1e-15
    assert abs(f.max() - 0.1) < 1e-12


def test_flat_problem_residual_zero():
    prob = build_torus_problem(3, 3, None, 16)
    r = residual(prob, np.zeros((16, 16)))
    assert np.abs(r).max() == 0.0
    rep = newton_solve(prob)
    assert rep.converged and rep.iterations == 0


def test_manufactured_solution_is_exact_discretely():
    prob = build_torus_problem(3, 3, (0.1, 1, 1), 32)
    r = residual(prob, -prob.psi0)
    assert np.abs(r).max() < 1e-13


def test_nonzero_residual_off_solution():
    prob = build_torus_problem(3, 3, (0.1, 1, 1), 32)
    r = residual(prob, np.zeros((32, 32)))
    assert np.abs(r).max() > 1e-2


def test_gauge_invariance_exact():
    # constant fields are annihilated by the stencil exactly
    h11, h12, h22 = hessian_entries(np.full((16, 16), 0.7), 1.0 / 16)
    assert np.abs(h11).max() == 0.0 and np.abs(h12).max() == 0.0 and np.abs(h22).max() == 0.0
    # with psi0 = 0 and dyadic phi the shifted residual is bit-identical
    prob = build_torus_problem(3, 3, None, 16)
    phi = np.round(trig_field(0.05, 1, 1, 16) * 2**20) / 2**20
    r1 = residual(prob, phi)
    r2 = residual(prob, phi + 1.0)
    assert np.array_equal(r1, r2)


def test_newton_manufactured_recovery():
    prob = build_torus_problem(3, 3, (0.1, 1, 1), 64)
    rep = newton_solve(prob, tol=1e-10, max_iter=30)
    assert rep.converged
    star = -prob.psi0
    assert np.abs(rep.phi - (star - star.mean())).max() < 1e-6
    assert rep.residual_max < 1e-10
    ver = verify_solution(prob, rep.phi, tol=1e-10)
    assert ver["phase_width_ok"] and ver["mean_phase_ok"] and ver["hypercritical"]
    assert abs(ver["mean_phase"] - prob.theta0) < 1e-8


def test_newton_near_admissibility_cap():
    # amplitude close to the rejection threshold (background phase grazing
    # pi) still converges; the report carries the damping log
    amp = 0.3
    prob = build_torus_problem(3, 3, (amp, 1, 1), 32)
    q0 = phase_field(prob, np.zeros((32, 32)))
    assert q0.max() > 3.0  # genuinely near the cap
    rep = newton_solve(prob, tol=1e-9, max_iter=60)
    assert rep.converged, rep.history
    assert rep.phase_max < math.pi / 2
    assert rep.damping_halvings >= 0


def test_newton_failure_report_at_damping_floor():
    # an incompatible constant target is unreachable by mean-zero
    # potentials: the line search halves down to its floor and reports a
    # clean failure instead of looping
    from dhym.torus import TorusProblem

    good = build_torus_problem(3, 3, None, 16)
    bad = TorusProblem(
        a1=good.a1,
        a2=good.a2,
        psi0=good.psi0,
        n=good.n,
        theta0=good.theta0 - 0.4,
        psi0_spec=None,
    )
    rep = newton_solve(bad, tol=1e-9, max_iter=10)
    assert not rep.converged
    assert rep.damping_halvings >= 1
    assert rep.residual_max > 0.1


def test_jacobian_matches_finite_differences():
    prob = build_torus_problem(3, 3, (0.05, 1, 1), 32)
    phi = (
        0.02 * trig_field(1.0, 1, 1, 32)
        + 0.01 * trig_field(1.0, 2, 1, 32)
        + 0.005 * trig_field(1.0, 1, 3, 32)
    )
    phi -= phi.mean()
    lin = residual_linearization(prob, phi)
    delta = 0.5 * trig_field(1.0, 2, 2, 32) + 0.3 * trig_field(1.0, 1, 2, 32)
    eps = 1e-6
    fd = (residual(prob, phi + eps * delta) - residual(prob, phi - eps * delta)) / (2 * eps)
    an = lin(delta)
    assert np.abs(fd - an).max() / np.abs(an).max() < 1e-6


def test_consistency_error_second_order():
    e16 = phase_consistency_error(3, 3, (0.1, 1, 1), 16)
    e32 = phase_consistency_error(3, 3, (0.1, 1, 1), 32)
    e64 = phase_consistency_error(3, 3, (0.1, 1, 1), 64)
    assert 3.5 < e16 / e32 < 4.5
    assert 3.5 < e32 / e64 < 4.5


def test_analytic_phase_limits():
    # with no perturbation the closed-form phase is the constant angle
    q = analytic_phase_field(3, 3, (0.0, 1, 1), 16)
    assert np.abs(q - 2 * math.atan2(1, 3)).max() < 1e-14


def test_phase_confinement_along_iterates():
    prob = build_torus_problem(3, 3, (0.3, 1, 1), 32)
    rep = newton_solve(prob, tol=1e-9)
    assert rep.converged
    q = phase_field(prob, rep.phi)
    assert q.min() > 0 and q.max() < math.pi / 2


def test_inadmissible_iterate_raises():
    prob = build_torus_problem(3, 3, (0.1, 1, 1), 32)
    huge = 40.0 * trig_field(1.0, 1, 1, 32)
    with pytest.raises(InadmissibleFieldError):
        residual(prob, huge)


def test_torus_angle_matches_class_level_angle():
    # the flat product surface with background eigenvalues (a1, a2) has
    # exact class-level data alpha = a1*F1 + a2*F2, omega = F1 + F2 on the
    # doubly ruled surface model: there cot(theta0) = (a1*a2 - 1)/(a1 + a2)
    # as an exact rational, and the solver's target angle is its arccot
    from fractions import Fraction

    from dhym.criteria import full_verdict
    from dhym.variety import CohomClass, build_builtin, complex_wedge_integral

    m = build_builtin("p1xp1")
    for a1, a2 in ((3, 3), (2, 4), (5, 2)):
        alpha = CohomClass([a1, a2])
        re, im = complex_wedge_integral(m.ambient, alpha, m.omega, 2)
        assert re == 2 * (a1 * a2 - 1) and im == 2 * (a1 + a2)
        class_cot = Fraction(a1 * a2 - 1, a1 + a2)
        assert re / im == class_cot
        prob = build_torus_problem(a1, a2, (0.05, 1, 1), 32)
        assert abs(prob.theta0 - math.atan2(a1 + a2, a1 * a2 - 1)) < 1e-15
        assert abs(1 / math.tan(prob.theta0) - float(class_cot)) < 1e-12
        # the solved potential realizes the class-level angle pointwise
        rep = newton_solve(prob, tol=1e-10)
        assert rep.converged
        q = phase_field(prob, rep.phi)
        assert np.abs(q - prob.theta0).max() < 1e-9
        # and the class-level verdict certifies the calibrated space
        v = full_verdict(m, alpha)
        assert v.solvable and v.cot_theta0 == class_cot
