"""Adversarial windings: clustered crossings, high multiplicities, roots
grazing the endpoint, near-vanishing moduli. Every case is checked against
the dense numeric continuation oracle."""

import math
from fractions import Fraction as F

from dhym.central_charge import (
    ComplexPoly,
    nonvanishing_certificate,
    winding_angle,
)
from dhym.polynomials import QPoly
from oracles import numeric_winding_phi


def poly_from_roots(roots, lead=1) -> QPoly:
    out = QPoly([F(lead)])
    for r in roots:
        out = out * QPoly([-F(r), 1])
    return out


def check_against_oracle(z, tol=1e-6):
    assert nonvanishing_certificate(z).common_root_free
    rep = winding_angle(z)
    assert abs(rep.phi - numeric_winding_phi(z)) < tol, (rep.phi, numeric_winding_phi(z))
    wrap = (rep.phi - rep.arg_z1) % (2 * math.pi)
    assert min(wrap, 2 * math.pi - wrap) < 1e-9
    return rep


def test_triple_root_crossing_flips_sign():
    # p = 4, re = -(t - 3/2)^3 (t - 5/2): the cubed root is a genuine
    # crossing (odd multiplicity), not a touch
    re = poly_from_roots([F(3, 2), F(3, 2), F(3, 2), F(5, 2)], lead=-1)
    im = poly_from_roots([2, F(7, 2)], lead=F(1, 3))
    z = ComplexPoly(re, im)
    rep = check_against_oracle(z)
    parts = [ev.part for ev in rep.crossings]
    assert parts.count("re") == 2 and parts.count("im") == 2
    assert not rep.touches


def test_quadruple_touch_contributes_nothing():
    # p = 4, im = c*(t - 2)^4 on top of a crossing-free re
    re = QPoly([F(-1), 0, 0, 0, F(-1)])  # -1 - t^4 < 0 everywhere
    im = poly_from_roots([2, 2, 2, 2], lead=F(1, 100))
    z = ComplexPoly(re, im)
    # leading pair (-1, 1/100) is off the -(-i)^4 ray: rescale im to degree 3
    im = poly_from_roots([2, 2, 2], lead=F(1, 100)) * QPoly([1])
    z = ComplexPoly(re, im)
    # multiplicity 3 is odd: crossing expected instead; build an honest
    # even-multiplicity touch at degree < p
    im = poly_from_roots([2, 2], lead=F(1, 100))
    z = ComplexPoly(re, im)
    rep = check_against_oracle(z)
    assert len(rep.touches) == 1 and rep.touches[0].part == "im"
    assert not rep.crossings
    assert rep.quadrant_steps == 0


def test_clustered_crossings_separated_exactly():
    # three crossings inside a window of width 1/1000 around t = 2
    re = poly_from_roots([2, 2 + F(1, 1000)], lead=1)
    im = poly_from_roots([2 + F(1, 2000)], lead=F(1, 7))
    z = ComplexPoly(re, im)
    rep = check_against_oracle(z, tol=1e-6)
    assert len(rep.crossings) == 3
    # descending t order, alternating parts
    assert [ev.part for ev in rep.crossings] == ["re", "im", "re"]
    for a, b in zip(rep.crossings, rep.crossings[1:]):
        assert a.lo >= b.hi


def test_crossing_grazing_the_endpoint():
    eps = F(1, 10**6)
    re = poly_from_roots([1 + eps, -5], lead=1)
    im = QPoly([0, F(1, 3)])
    z = ComplexPoly(re, im)
    rep = check_against_oracle(z, tol=1e-5)
    assert len(rep.crossings) == 1
    assert rep.crossings[0].lo >= 1
    # z(1) sits just past the crossing: phi is just above pi/2
    assert math.pi / 2 < rep.phi < math.pi / 2 + 0.01


def test_root_exactly_at_one_is_endpoint_boundary():
    # re vanishes exactly at t = 1: z(1) is on the imaginary axis and phi
    # must land exactly on the quadrant boundary pi/2
    re = poly_from_roots([1, -3], lead=1)
    im = QPoly([0, F(1, 2)])
    z = ComplexPoly(re, im)
    rep = check_against_oracle(z, tol=1e-6)
    assert abs(rep.phi - math.pi / 2) < 1e-15
    assert rep.im_z1 == F(1, 2) and rep.re_z1 == 0


def test_near_vanishing_modulus():
    # |z| dips to ~5e-5 between two crossings without vanishing: the im
    # root sits strictly between the two re roots
    re = poly_from_roots([2, 2 + F(1, 100)], lead=1)
    im = poly_from_roots([2 + F(1, 200)], lead=F(1, 100))
    z = ComplexPoly(re, im)
    rep = check_against_oracle(z, tol=1e-5)
    assert len(rep.crossings) == 3
    # the loop around the origin is real: a full extra turn relative to
    # the principal argument at t = 1
    assert rep.phi > 3 * math.pi / 2


def test_many_alternating_crossings():
    # p = 4 with interlaced rational roots: seven crossings
    re = poly_from_roots([F(3, 2), F(5, 2), F(7, 2), F(9, 2)], lead=-1)
    im = poly_from_roots([2, 3, 4], lead=F(-1, 2))
    z = ComplexPoly(re, im)
    rep = check_against_oracle(z)
    assert len(rep.crossings) == 7
    assert [ev.part for ev in rep.crossings] == [
        "re", "im", "re", "im", "re", "im", "re"
    ]


def test_rational_roots_on_dyadic_midpoints():
    # roots placed exactly where naive bisection would sample first
    re = poly_from_roots([F(3, 2), F(5, 2)], lead=1)
    im = QPoly([0, 1])
    z = ComplexPoly(re, im)
    rep = check_against_oracle(z)
    assert len(rep.crossings) == 2
    for ev in rep.crossings:
        assert ev.lo != ev.hi


def test_big_coefficient_spread():
    re = QPoly([F(10**9), F(-7, 10**6), F(1, 2)])
    im = QPoly([F(-3, 10**4), F(10**5)])
    z = ComplexPoly(re, im)
    rep = check_against_oracle(z, tol=1e-4)
    assert rep.tail_start > 10**3
