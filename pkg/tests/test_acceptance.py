"""Acceptance suite: every exit criterion at its stated tolerance.

Each test prints one PASS line (run with -s to stream them); a failure of
any assertion is the corresponding FAIL.
"""

import math
import random
import time
from fractions import Fraction as F

import numpy as np
import pytest

from dhym.central_charge import (
    ComplexPoly,
    nonvanishing_certificate,
    winding_angle,
)
from dhym.criteria import (
    LABEL_B_OBSTRUCTED,
    check_claim_inequalities,
    check_kahlerity,
    check_stability_inequalities,
    chern_vector,
    cot_theta0_rational,
    full_verdict,
)
from dhym.phase import HermitianPair, complex_quotient, lagrangian_phase
from dhym.polynomials import QPoly
from dhym.report import run_counterexample
from dhym.stability import family_inequality_polynomial, h_omega_verdict
from dhym.torus import (
    build_torus_problem,
    newton_solve,
    phase_consistency_error,
    phase_field,
)
from dhym.variety import CohomClass, build_builtin, packaged_model
from oracles import numeric_winding_phi


def _ok(name: str) -> None:
    print(f"ACCEPTANCE PASS: {name}")


# -- criterion 1: golden blow-up reproduction (exact, < 1 s) -----------------


def test_criterion_1_golden_blowup_reproduction():
    t0 = time.monotonic()
    doc = run_counterexample()  # raises GoldenMismatchError on any drift
    elapsed = time.monotonic() - t0
    assert doc["square_integral"] == {"re": "32", "im": "26"}
    assert doc["ambient_charge"] == {"re": "-16", "im": "13"}
    assert doc["tan_theta0"] == "13/16"
    assert doc["obstruction_value"] == "-3/16"
    assert doc["verdict"]["label"] == LABEL_B_OBSTRUCTED == (
        "condition-(B)-holds, H_omega-obstructed"
    )
    assert elapsed < 1.0, f"golden reproduction took {elapsed:.3f}s"
    _ok("golden blow-up reproduction (exact values, obstructed verdict, < 1 s)")


# -- criteria 2 + 3: random passing threefold population ---------------------


@pytest.fixture(scope="module")
def passing_population():
    rng = random.Random(20260810)
    population = []
    t0 = time.monotonic()

    cp3 = build_builtin("cp3")
    while sum(1 for m, *_ in population if m is cp3) < 200:
        w = F(rng.randint(2, 40), 10)
        c = w * F(rng.randint(174, 900), 100)  # ratio just above sqrt(3) and up
        alpha, omega = CohomClass([c]), CohomClass([w])
        v = full_verdict(cp3, alpha, omega)
        if v.solvable:
            population.append((cp3, alpha, omega, v))

    blowup3 = packaged_model("blp_cp3")
    while sum(1 for m, *_ in population if m is blowup3) < 150:
        c = F(rng.randint(18, 60), 10)
        alpha = blowup3.omega.scale(c) + CohomClass(
            [F(rng.randint(-20, 20), 40), F(rng.randint(-20, 20), 40)]
        )
        v = full_verdict(blowup3, alpha, blowup3.omega)
        if v.solvable:
            population.append((blowup3, alpha, blowup3.omega, v))

    product = packaged_model("cp1xcp2")
    while sum(1 for m, *_ in population if m is product) < 150:
        c = F(rng.randint(18, 60), 10)
        alpha = CohomClass(
            [c + F(rng.randint(-20, 20), 40), c + F(rng.randint(-20, 20), 40)]
        )
        v = full_verdict(product, alpha, product.omega)
        if v.solvable:
            population.append((product, alpha, product.omega, v))

    return population, time.monotonic() - t0


def test_criterion_2_theta0_consistency(passing_population):
    population, gen_time = passing_population
    t0 = time.monotonic()
    assert len(population) >= 500
    for model, alpha, omega, verdict in population:
        a = chern_vector(model, alpha, omega)
        cot = cot_theta0_rational(a)
        assert cot == verdict.cot_theta0
        assert abs((math.pi - verdict.phi_x) - math.atan2(1.0, float(cot))) < 1e-9
    elapsed = gen_time + (time.monotonic() - t0)
    assert elapsed < 60.0, f"population + consistency took {elapsed:.1f}s"
    _ok(
        f"theta0 consistency on {len(population)} passing class pairs over "
        f"cp3 + 2 custom threefolds, < 1e-9, in {elapsed:.1f}s"
    )


def test_criterion_3_implied_inequalities_soundness(passing_population):
    population, _ = passing_population
    violations = 0
    for model, alpha, omega, verdict in population:
        cot = verdict.cot_theta0
        k_ok, _ = check_kahlerity(model, alpha, omega)
        s_ok, s_det = check_stability_inequalities(model, alpha, omega, cot)
        c_ok, c_det = check_claim_inequalities(model, alpha, omega, cot)
        if not (k_ok and s_ok and c_ok):
            violations += 1
            continue
        ambient_stability = [
            d["value"] for d in s_det if d["subvariety"] == model.ambient.name
        ]
        if ambient_stability != [F(0)]:
            violations += 1
        a = chern_vector(model, alpha, omega)
        den = 3 * a.a2 - a.a0
        want1 = (2 * a.a2 * a.a3 - a.a3 * a.a0 + 3 * a.a1 * a.a2) / den
        want2 = (3 * a.a1 * a.a2 + a.a2 * a.a3 + a.a1 * a.a0 - a.a0 * a.a3) / den
        ambient_claim = {
            d["k"]: d["value"] for d in c_det if d["subvariety"] == model.ambient.name
        }
        if ambient_claim[1] != want1 or ambient_claim[2] != want2:
            violations += 1
    assert violations == 0
    _ok(
        "Kahlerity, stability (exact ambient equality) and wedge-ladder "
        f"closed forms hold on all {len(population)} passing pairs; 0 violations"
    )


# -- criterion 4: winding vs numeric continuation oracle ---------------------


def _random_certified_charge(rng: random.Random) -> ComplexPoly:
    p = rng.randint(1, 4)
    vol = F(rng.randint(1, 12), rng.randint(1, 4))
    lead = {1: (0, vol), 2: (vol, 0), 3: (0, -vol), 0: (-vol, 0)}[p % 4]
    re = [F(rng.randint(-20, 20), rng.randint(1, 10)) for _ in range(p)] + [F(lead[0])]
    im = [F(rng.randint(-20, 20), rng.randint(1, 10)) for _ in range(p)] + [F(lead[1])]
    return ComplexPoly(QPoly(re), QPoly(im))


def test_criterion_4_winding_oracle_equivalence():
    rng = random.Random(424242)
    checked = 0
    while checked < 1000:
        z = _random_certified_charge(rng)
        if not nonvanishing_certificate(z).common_root_free:
            continue
        rep = winding_angle(z)
        oracle = numeric_winding_phi(z)
        assert abs(rep.phi - oracle) < 1e-6, (z, rep.phi, oracle)
        wrap = (rep.phi - rep.arg_z1) % (2 * math.pi)
        assert min(wrap, 2 * math.pi - wrap) < 1e-9
        checked += 1
    _ok(
        "winding of 1000 random certified charges (p <= 4) matches the dense "
        "numeric continuation within 1e-6 and the principal argument mod 2pi "
        "within 1e-9"
    )


# -- criterion 5: test-family positivity certificates ------------------------


def test_criterion_5_family_certificates():
    cp3 = build_builtin("cp3")
    rep = h_omega_verdict(cp3, CohomClass([2]))
    assert rep.nonempty is True
    assert all(c.valid for c in rep.certificates.values())

    blowup = build_builtin("blp_cp2")
    rep2 = h_omega_verdict(
        blowup, blowup.cohom_class("6,1"), blowup.cohom_class("2,-1")
    )
    assert rep2.nonempty is False
    assert rep2.witness == {"subvariety": "E", "t": 0, "value": F(-3, 16)}

    # derivative identity is asserted inside every construction; exercise it
    # across models, cycles and random rational cotangents
    rng = random.Random(5150)
    models = [blowup, cp3, packaged_model("blp_cp3"), packaged_model("cp1xcp2")]
    built = 0
    for _ in range(120):
        m = rng.choice(models)
        alpha = CohomClass(
            [F(rng.randint(-9, 9), rng.randint(1, 5)) for _ in m.basis]
        )
        cot = F(rng.randint(-15, 15), rng.randint(1, 8))
        for v in m.subvarieties:
            g = family_inequality_polynomial(v, alpha, m.omega, cot)
            assert g.degree <= v.dim
            built += 1
    assert built > 400
    _ok(
        "family certificates: cp3 alpha=2H nonempty, blow-up classes "
        "obstructed with witness -3/16 at the exceptional curve, derivative "
        f"identity exact on {built} generated family polynomials"
    )


# -- criterion 6: pointwise phase identities ----------------------------------


def test_criterion_6_phase_operator_identities():
    rng = np.random.default_rng(606060)
    for _ in range(10_000):
        n = int(rng.integers(1, 6))
        a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        a = (a + a.conj().T) / 2
        b = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        b = b @ b.conj().T + 0.3 * np.eye(n)
        pair = HermitianPair(a, b)
        q = complex_quotient(pair)  # soundness-checked against the eigenvalues
        pt = lagrangian_phase(pair)
        scale = max(1.0, abs(q))
        assert abs(abs(q) - pt.modulus) <= 1e-10 * scale
        predicted = pt.modulus * complex(math.cos(pt.q), math.sin(pt.q))
        assert abs(q - predicted) <= 1e-10 * scale
    for n in range(1, 6):
        pt = lagrangian_phase(HermitianPair(np.zeros((n, n)), np.eye(n)))
        assert abs(pt.q - n * math.pi / 2) < 1e-14
    _ok(
        "product formula on 10^4 random Hermitian pairs (n <= 5) within "
        "1e-10 relative; zero-form phase equals n*pi/2 within 1e-14"
    )


# -- criterion 7: manufactured torus solve ------------------------------------


def test_criterion_7_torus_manufactured_solution():
    t0 = time.monotonic()
    prob = build_torus_problem(3, 3, (0.1, 1, 1), 64)
    rep = newton_solve(prob, tol=1e-9, max_iter=40)
    elapsed = time.monotonic() - t0
    assert rep.converged
    star = -prob.psi0
    star -= star.mean()
    assert np.abs(rep.phi - star).max() < 1e-6
    assert rep.residual_max < 1e-8
    assert elapsed < 60.0, f"solve took {elapsed:.1f}s"

    e32 = phase_consistency_error(3, 3, (0.1, 1, 1), 32)
    e64 = phase_consistency_error(3, 3, (0.1, 1, 1), 64)
    ratio = e32 / e64
    assert 3.5 <= ratio <= 4.5, ratio

    q = phase_field(prob, rep.phi)
    theta0 = 2 * math.atan2(1, 3)
    assert abs(prob.theta0 - theta0) < 1e-15
    assert np.abs(q - theta0).max() < 1e-6
    assert q.min() > 0 and q.max() < math.pi / 2
    _ok(
        "manufactured torus solution recovered to 1e-6 with residual < 1e-8 "
        f"in {elapsed:.2f}s; grid-consistency ratio {ratio:.2f} in [3.5, 4.5]; "
        "phase constant at 2*arccot(3) inside (0, pi/2)"
    )
