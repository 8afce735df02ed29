"""Central charges of subvarieties and their winding angles.

The charge attached to a p-dimensional cycle V and classes (alpha, omega) is
the complex polynomial

    Z(t) = -(-i)^p / p! * integral_V (t*omega + i*alpha)^p,

with exact Gaussian-rational coefficients. On [1, +inf] a nonvanishing
charge traces a curve whose continuous argument, anchored at the asymptotic
direction -(p-2)*pi/2 of the leading term, defines the lifted angle of the
cycle; the slicing angle is the anchored argument at t = 1.

Quadrant bookkeeping is exact: axis crossings are isolated with Sturm
sequences on the odd-multiplicity square-free factors of Re Z and Im Z, so
the winding is correct in exact multiples of pi/2. Floating point enters
only in the final fractional angle at t = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .errors import DegenerateChargeError, SoundnessError, UncertifiedChargeError
from .polynomials import (
    QPoly,
    RootInterval,
    cauchy_root_bound,
    count_roots_from,
    isolate_roots,
    nonroot_point,
    parity_parts,
    poly_gcd,
    separate_intervals,
)
from .variety import CohomClass, SubvarietyModel, wedge_mix_integral

# sign of -(-i)^k by k mod 4, split as (real part, imaginary part)
_UNIT = {0: (-1, 0), 1: (0, 1), 2: (1, 0), 3: (0, -1)}


@dataclass(frozen=True)
class ComplexPoly:
    """Polynomial in t with Gaussian-rational coefficients, split into
    exact real and imaginary parts."""

    re: QPoly
    im: QPoly

    @property
    def degree(self) -> int:
        return max(self.re.degree, self.im.degree)

    @property
    def is_zero(self) -> bool:
        return self.re.is_zero and self.im.is_zero

    def value(self, t) -> tuple[Fraction, Fraction]:
        """Exact Gaussian-rational value at rational t."""
        return self.re(t), self.im(t)

    def leading_pair(self) -> tuple[Fraction, Fraction]:
        p = self.degree
        return self.re.coeff(p), self.im.coeff(p)

    def __repr__(self) -> str:
        return f"ComplexPoly(re={self.re!r}, im={self.im!r})"


def charge_polynomial(v: SubvarietyModel, alpha: CohomClass, omega: CohomClass) -> ComplexPoly:
    """Exact charge polynomial of the cycle V for the pair (alpha, omega).

    The t^k coefficient is -(-i)^k * C(p,k)/p! * integral_V omega^k wedge
    alpha^(p-k); in particular the leading coefficient is a positive multiple
    of the unit -(-i)^p, which anchors the winding at infinity.
    """
    p = v.dim
    re = [Fraction(0)] * (p + 1)
    im = [Fraction(0)] * (p + 1)
    for k in range(p + 1):
        mix = wedge_mix_integral(v, omega, alpha, k)  # omega^k wedge alpha^(p-k)
        coeff = Fraction(comb(p, k), factorial(p)) * mix
        sr, si = _UNIT[k % 4]
        re[k] = sr * coeff
        im[k] = si * coeff
    return ComplexPoly(QPoly(re), QPoly(im))


def charge_value(z: ComplexPoly, t) -> tuple[Fraction, Fraction]:
    """Exact evaluation of a charge; the physical charge of V is z at t = 1."""
    return z.value(t)


@dataclass(frozen=True)
class NonvanishingCertificate:
    """Exact decision that Re and Im share no root on [1, +inf).

    ``gcd_degree`` is the degree of gcd(Re, Im) over the rationals and
    ``gcd_roots_ge_1`` its number of distinct real roots in [1, +inf); the
    charge vanishes somewhere on [1, +inf] iff that count is positive (the
    point t = +inf is covered by the nonzero leading coefficient).
    """

    common_root_free: bool
    gcd_degree: int
    gcd_roots_ge_1: int
    re_roots_ge_1: int
    im_roots_ge_1: int

    def __bool__(self) -> bool:
        return self.common_root_free


def nonvanishing_certificate(z: ComplexPoly) -> NonvanishingCertificate:
    """Certify z(t) != 0 for every t in [1, +inf]. Exact: reduces to counting
    real roots >= 1 of gcd(Re z, Im z) with a Sturm sequence."""
    if z.is_zero:
        raise DegenerateChargeError("charge polynomial is identically zero")
    g = poly_gcd(z.re, z.im)
    # gcd(f, 0) = f: if one part vanishes identically, common zeros are the
    # zeros of the other part.
    if g.degree <= 0:
        common = 0
    else:
        common = count_roots_from(g, 1, closed=True)
    count = lambda f: 0 if f.is_zero or f.degree <= 0 else count_roots_from(f, 1, closed=True)
    return NonvanishingCertificate(
        common_root_free=(common == 0),
        gcd_degree=g.degree,
        gcd_roots_ge_1=common,
        re_roots_ge_1=count(z.re),
        im_roots_ge_1=count(z.im),
    )


@dataclass(frozen=True)
class AxisEvent:
    """Certified zero of one component on (1, T): a crossing when the
    multiplicity parity is odd, a tangential touch when even."""

    part: str  # "re" or "im"
    lo: Fraction
    hi: Fraction
    crossing: bool


@dataclass(frozen=True)
class AngleReport:
    """Winding result: lifted angle, slicing angle, both in radians, plus the
    exact data that certifies them."""

    theta_hat: float
    phi: float
    arg_z1: float
    im_z1: Fraction
    re_z1: Fraction
    crossings: tuple[AxisEvent, ...]
    touches: tuple[AxisEvent, ...]
    quadrant_steps: int
    tail_start: Fraction
    certificate: NonvanishingCertificate


_QUADRANT_SIGNS = {0: (1, 1), 1: (-1, 1), 2: (-1, -1), 3: (1, -1)}


def _expected_leading_axis(p: int) -> tuple[int, int]:
    return _UNIT[p % 4]


def certified_tail_start(z: ComplexPoly) -> Fraction:
    """Rational T >= 1 beyond which neither component changes sign and the
    curve stays within pi/6 of the leading-term direction: T dominates the
    Cauchy root bounds of both components, and the lower-order coefficient
    mass at T is at most half the leading term."""
    p = z.degree
    lead = max(abs(z.re.coeff(p)), abs(z.im.coeff(p)))
    t = Fraction(2)
    for f in (z.re, z.im):
        if not f.is_zero and f.degree > 0:
            t = max(t, cauchy_root_bound(f))
    while sum((abs(z.re.coeff(k)) + abs(z.im.coeff(k))) * t**k for k in range(p)) * 2 > lead * t**p:
        t *= 2
    return t


def _sign_pair(z: ComplexPoly, t: Fraction) -> tuple[int, int]:
    re, im = z.value(t)
    return (re > 0) - (re < 0), (im > 0) - (im < 0)


def _axis_events(z: ComplexPoly, T: Fraction) -> tuple[list[RootInterval], list[RootInterval]]:
    intervals: list[RootInterval] = []
    for part_name, f in (("re", z.re), ("im", z.im)):
        if f.is_zero or f.degree <= 0:
            continue
        odd, even = parity_parts(f)
        for poly, crossing in ((odd, True), (even, False)):
            if poly.degree <= 0:
                continue
            intervals.extend(isolate_roots(poly, Fraction(1), T, tag=(part_name, crossing)))
    intervals = separate_intervals(intervals)
    flips = [iv for iv in intervals if iv.tag[1]]
    touches = [iv for iv in intervals if not iv.tag[1]]
    return flips, touches


def winding_angle(z: ComplexPoly, tail_start=None) -> AngleReport:
    """Track the continuous argument of z(t) from t = +inf down to t = 1.

    The branch is anchored at -(p-2)*pi/2 exactly (no modular reduction),
    the value of the argument at +inf. Quadrant transitions accumulate in
    exact multiples of pi/2 via Sturm-isolated sign changes of Re and Im;
    only the fractional angle at t = 1 uses a floating-point arctangent.
    Returns the slicing angle phi = A(1) and the lifted angle
    theta_hat = phi + (p-2)*pi/2. A tail_start override can extend the
    certified truncation point (it is clamped from below), which must not
    change the result; that stability is part of the test suite.
    """
    cert = nonvanishing_certificate(z)
    if not cert:
        raise UncertifiedChargeError(
            "charge vanishes on [1, +inf); the winding angle is undefined"
        )
    p = z.degree
    if p < 1:
        raise DegenerateChargeError("winding needs a nonconstant charge")
    lead_re, lead_im = z.leading_pair()
    exp_re, exp_im = _expected_leading_axis(p)
    if (
        (exp_re == 0) != (lead_re == 0)
        or (exp_im == 0) != (lead_im == 0)
        or exp_re * lead_re < 0
        or exp_im * lead_im < 0
    ):
        raise DegenerateChargeError(
            f"leading coefficient ({lead_re}, {lead_im}) does not lie on the "
            f"-(-i)^{p} ray; the anchored winding convention does not apply"
        )

    anchor_halfpis = 2 - p  # A(+inf) = (2-p) * pi/2
    # an override may extend the certified tail but never shrink it: below
    # the certified bound whole turns could alias mod 4 in the quadrant walk
    T = certified_tail_start(z)
    if tail_start is not None:
        T = max(T, Fraction(tail_start))

    # degenerate axis-bound charges: one component identically zero
    if z.re.is_zero or z.im.is_zero:
        phi = anchor_halfpis * (math.pi / 2)
        re1, im1 = z.value(1)
        return AngleReport(
            theta_hat=phi + (p - 2) * (math.pi / 2),
            phi=phi,
            arg_z1=math.atan2(float(im1), float(re1)),
            im_z1=im1,
            re_z1=re1,
            crossings=(),
            touches=(),
            quadrant_steps=0,
            tail_start=T,
            certificate=cert,
        )

    flips, touches = _axis_events(z, T)
    flips.sort(key=lambda iv: iv.lo, reverse=True)  # t decreasing
    if flips:
        # the lowest crossing exceeds 1 strictly; open a gap above t = 1
        while flips[-1].lo <= 1:
            flips[-1].refine()

    sig = _sign_pair(z, T)
    candidates = [anchor_halfpis - 1, anchor_halfpis]
    q = None
    for cand in candidates:
        if _QUADRANT_SIGNS[cand % 4] == sig:
            q = cand
            break
    if q is None:
        raise SoundnessError(
            f"sign pattern {sig} at the certified tail start {T} is not adjacent "
            f"to the asymptotic direction; tail bound violated"
        )

    polys = [z.re, z.im]
    steps = 0
    for i, iv in enumerate(flips):
        below_hi = iv.lo
        below_lo = flips[i + 1].hi if i + 1 < len(flips) else Fraction(1)
        if below_lo > below_hi:
            raise SoundnessError("crossing intervals are not separated")
        s = nonroot_point(polys, below_lo, below_hi)
        new_sig = _sign_pair(z, s)
        if _QUADRANT_SIGNS[(q - 1) % 4] == new_sig:
            q -= 1
        elif _QUADRANT_SIGNS[(q + 1) % 4] == new_sig:
            q += 1
        elif _QUADRANT_SIGNS[q % 4] == new_sig:
            # parity bookkeeping said "crossing" but signs did not change
            raise SoundnessError("odd-multiplicity root produced no sign change")
        else:
            raise SoundnessError("sign pattern jumped across two quadrants")
        steps += 1

    re1, im1 = z.value(1)
    base = q * (math.pi / 2)
    arg1 = math.atan2(float(im1), float(re1))
    if re1 == 0 or im1 == 0:
        # t = 1 sits exactly on an axis: phi is the matching boundary of the
        # final quadrant, found exactly by congruence mod 4 half-turns.
        axis = {(1, 0): 0, (0, 1): 1, (-1, 0): 2, (0, -1): 3}[
            ((re1 > 0) - (re1 < 0), (im1 > 0) - (im1 < 0))
        ]
        if q % 4 == axis:
            phi = base
        elif (q + 1) % 4 == axis:
            phi = base + math.pi / 2
        else:
            raise SoundnessError("endpoint axis does not bound the final quadrant")
    else:
        frac = (arg1 - base) % (2 * math.pi)
        if not -1e-9 < frac < math.pi / 2 + 1e-9:
            raise SoundnessError("endpoint argument escaped the certified quadrant")
        phi = base + min(max(frac, 0.0), math.pi / 2)

    as_events = lambda ivs: tuple(
        AxisEvent(iv.tag[0], iv.lo, iv.hi, iv.tag[1]) for iv in ivs
    )
    return AngleReport(
        theta_hat=phi + (p - 2) * (math.pi / 2),
        phi=phi,
        arg_z1=arg1,
        im_z1=im1,
        re_z1=re1,
        crossings=as_events(flips),
        touches=as_events(sorted(touches, key=lambda iv: iv.lo, reverse=True)),
        quadrant_steps=steps,
        tail_start=T,
        certificate=cert,
    )


def charge_report(v: SubvarietyModel, alpha: CohomClass, omega: CohomClass) -> AngleReport:
    """Charge polynomial, certificate and winding for one cycle in one call."""
    return winding_angle(charge_polynomial(v, alpha, omega))
