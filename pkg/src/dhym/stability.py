"""Test families and exact positivity certificates for non-emptiness of the
space of almost calibrated potentials.

The machinery instantiates the linear family alpha_t = alpha + t*omega and
decides, for every cycle V in the model's family, whether

    integral_V Re(alpha_t + i*omega)^p - cot(Theta0) * Im(alpha_t + i*omega)^p

is positive for all t in [0, inf), where Theta0 = theta0 + pi/2 is the
test-family angle of the hypercritical phase theta0. Each value is an exact
polynomial in t of degree p; positivity on the half-line is decided by a
Sturm root count, never by sampling. cot(Theta0) = -1/cot(theta0) stays
rational whenever cot(theta0) is, so the entire pipeline is exact.

A positive certificate for every cycle establishes non-emptiness relative to
the family; a failure at any single (V, t) refutes non-emptiness of the
hypercritical branch outright, since positivity for all t >= 0 is a
necessary condition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from . import criteria as _criteria
from .errors import InconsistentAngleError, ModelError, SoundnessError
from .polynomials import QPoly, count_roots_from, isolate_roots, cauchy_root_bound
from .variety import CohomClass, SubvarietyModel, VarietyModel, complex_wedge_integral

T_WITNESS_CAP = Fraction(2) ** 60

SUFFICIENCY_CAVEAT = (
    "non-emptiness certificate is family-relative: it assumes the listed "
    "subvariety family is adequate"
)
OBSTRUCTION_NOTE = (
    "obstruction witness refutes the hypercritical branch: positivity for "
    "all t >= 0 is necessary once the phase is hypercritical"
)
PROJECTIVITY_CAVEAT = (
    "restricting the wedge ladder to m = 0 is sufficient only for "
    "projective models, which this tool cannot verify"
)


@dataclass
class FamilySpec:
    """Linear test family alpha + t*direction with its target angle."""

    base: CohomClass
    direction: CohomClass
    theta: float  # the test-family angle, Theta0 = theta0 + pi/2 in the hypercritical use
    t_witness: Fraction | None = None


def cot_shifted(cot_theta0: Fraction) -> Fraction:
    """Exact cot(theta0 + pi/2) = -tan(theta0) = -1/cot(theta0)."""
    cot_theta0 = Fraction(cot_theta0)
    if cot_theta0 == 0:
        raise InconsistentAngleError(
            "cot(theta0) = 0 sits on the pi/2 boundary; supply the shifted "
            "cotangent explicitly"
        )
    return -1 / cot_theta0


def linear_family(
    model: VarietyModel,
    alpha: CohomClass,
    theta: float,
    direction: CohomClass | None = None,
) -> FamilySpec:
    """Family alpha + t*direction, direction defaulting to the model's
    Kahler class. The direction must pass the family-relative Kahlerity
    test; a non-Kahler direction cannot be monotone in the Kahler cone."""
    direction = model.omega if direction is None else direction
    ok, _ = _criteria.check_kahlerity(model, direction, model.omega)
    if not ok:
        raise ModelError("family direction fails the family-relative Kahlerity test")
    return FamilySpec(base=alpha, direction=direction, theta=float(theta))


def validate_test_family(model: VarietyModel, family: FamilySpec) -> bool:
    """Check the three test-family requirements for the linear family.

    The first two hold by construction (base at t = 0; Kahler direction is
    strictly monotone). The third needs a witness T with
    alpha_T - cot(theta/n)*omega Kahler; we search by doubling T against a
    rational upper bound of the cotangent, so success is sound. Returns
    False with no witness if the cap is reached (indeterminate).
    """
    n = model.dim
    c = 1.0 / math.tan(family.theta / n)
    cbar = Fraction(math.ceil(c * 2**24), 2**24)  # rational upper bound
    t = Fraction(1)
    while t <= T_WITNESS_CAP:
        shifted = family.base + family.direction.scale(t) - model.omega.scale(cbar)
        ok, _ = _criteria.check_kahlerity(model, shifted, model.omega)
        if ok:
            family.t_witness = t
            return True
        t *= 2
    family.t_witness = None
    return False


def family_inequality_polynomial(
    v: SubvarietyModel,
    alpha: CohomClass,
    omega: CohomClass,
    cot_big_theta: Fraction,
    direction: CohomClass | None = None,
) -> QPoly:
    """Exact polynomial in t of the family inequality value over V.

    Coefficient of t^k is C(p,k) * (Re - cot * Im) of
    integral_V direction^k wedge (alpha + i*omega)^(p-k). The derivative
    identity d/dt g_p = p * (g_(p-1) wedged with the direction) is asserted
    exactly on every call; it must hold by the binomial recurrence, so a
    failure is an implementation bug.
    """
    cot = Fraction(cot_big_theta)
    direction = omega if direction is None else direction
    p = v.dim

    def ladder(power: int, extra_wedges: int) -> QPoly:
        coeffs = []
        for k in range(power + 1):
            re, im = complex_wedge_integral(
                v, alpha, omega, power - k, [direction] * (k + extra_wedges)
            )
            coeffs.append(comb(power, k) * (re - cot * im))
        return QPoly(coeffs)

    g = ladder(p, 0)
    if p >= 1:
        lower = ladder(p - 1, 1)
        if g.derivative() != p * lower:
            raise SoundnessError(
                f"family polynomial derivative identity failed on {v.name!r}"
            )
    return g


@dataclass(frozen=True)
class PositivityCertificate:
    """Sturm-certified sign behaviour of a polynomial on [0, inf)."""

    polynomial: QPoly
    value_at_0: Fraction
    roots_in_open_positive: int
    strict: bool
    valid: bool


def check_family_positivity(poly: QPoly, strict: bool = True) -> PositivityCertificate:
    """Certify poly > 0 on [0, inf) (or >= 0 with equality only at 0 when
    strict is False). Exact: sign at 0 plus a Sturm count of roots in
    (0, inf)."""
    if poly.is_zero:
        return PositivityCertificate(poly, Fraction(0), 0, strict, valid=not strict)
    v0 = poly(0)
    roots = count_roots_from(poly, 0) if poly.degree > 0 else 0
    if v0 > 0:
        valid = roots == 0
    elif v0 == 0 and not strict:
        valid = roots == 0 and poly.leading > 0
    else:
        valid = False
    return PositivityCertificate(poly, v0, roots, strict, valid)


def check_remark_condition(
    model: VarietyModel,
    alpha: CohomClass,
    omega: CohomClass,
    chi: CohomClass,
    cot_theta0: Fraction,
) -> tuple[bool, list[dict]]:
    """Exact positivity of every value
    integral_V (Re(alpha+i*omega)^(p-m) - cot(theta0+pi/2) * Im(...)^(p-m))
    wedge chi^m, over all listed V and 0 <= m <= p, for a Kahler class chi.

    With chi = omega this is the t-derivative ladder of the linear family.
    The full ladder is what this function decides; dropping the m > 0
    values is a sound weakening only on projective models, which cannot be
    verified from intersection data, so callers relying on m = 0 alone
    must treat the conclusion as hypothesis-conditional
    (PROJECTIVITY_CAVEAT).
    """
    ok_chi, _ = _criteria.check_kahlerity(model, chi, model.omega)
    if not ok_chi:
        raise ModelError("chi fails the family-relative Kahlerity test")
    cot = cot_shifted(cot_theta0)
    ok = True
    details = []
    for v in model.subvarieties:
        for m in range(v.dim + 1):
            re, im = complex_wedge_integral(v, alpha, omega, v.dim - m, [chi] * m)
            val = re - cot * im
            passed = val > 0
            ok = ok and passed
            details.append({"subvariety": v.name, "m": m, "value": val, "positive": passed})
    return ok, details


@dataclass
class HOmegaReport:
    """Family-relative verdict on non-emptiness of the almost calibrated space."""

    nonempty: bool | None
    scope: str  # "hypercritical" or "out-of-hypercritical-scope" or "indeterminate"
    theta0: float | None
    cot_theta0: Fraction | None
    cot_big_theta: Fraction | None
    t_witness: Fraction | None
    certificates: dict[str, PositivityCertificate]
    witness: dict | None
    caveats: tuple[str, ...]


def _first_violation(name: str, cert: PositivityCertificate) -> dict:
    if cert.value_at_0 <= 0:
        return {"subvariety": name, "t": Fraction(0), "value": cert.value_at_0}
    poly = cert.polynomial
    bound = max(cauchy_root_bound(poly), Fraction(1))
    ivs = isolate_roots(poly, 0, bound)
    lo, hi = (ivs[0].lo, ivs[0].hi) if ivs else (None, None)
    return {"subvariety": name, "root_between": (lo, hi), "value": None}


def h_omega_verdict(
    model: VarietyModel,
    alpha: CohomClass,
    omega: CohomClass | None = None,
    cot_theta0: Fraction | None = None,
) -> HOmegaReport:
    """Bundle family validation and all per-cycle positivity certificates.

    ``cot_theta0`` is the exact cotangent of the hypercritical angle; when
    omitted it is computed from the classes (threefolds via the Chern
    vector, surfaces via the quadrant of the squared class). A value
    outside (0, inf) means the phase is not hypercritical and the question
    is out of scope for this machinery.
    """
    omega = model.omega if omega is None else omega
    if cot_theta0 is None:
        # Arg of integral (alpha + i*omega)^n determines the angle; for a
        # threefold re/im equals the Chern-vector expression
        # (a3 - 3*a1)/(3*a2 - a0)
        x = model.ambient
        re, im = complex_wedge_integral(x, alpha, omega, x.dim)
        cot_theta0 = re / im if (re > 0 and im > 0) else None

    if cot_theta0 is None or cot_theta0 <= 0:
        return HOmegaReport(
            nonempty=None,
            scope="out-of-hypercritical-scope",
            theta0=None,
            cot_theta0=cot_theta0,
            cot_big_theta=None,
            t_witness=None,
            certificates={},
            witness=None,
            caveats=(SUFFICIENCY_CAVEAT,),
        )

    cot_theta0 = Fraction(cot_theta0)
    theta0 = math.atan2(1.0, float(cot_theta0))  # arccot on (0, pi)
    big_theta = theta0 + math.pi / 2
    cot_big = cot_shifted(cot_theta0)

    family = linear_family(model, alpha, theta=big_theta, direction=omega)
    family_ok = validate_test_family(model, family)

    certificates = {}
    witness = None
    all_valid = True
    for v in model.subvarieties:
        g = family_inequality_polynomial(v, alpha, omega, cot_big, direction=omega)
        cert = check_family_positivity(g, strict=True)
        certificates[v.name] = cert
        if not cert.valid:
            all_valid = False
            if witness is None:
                witness = _first_violation(v.name, cert)

    if not all_valid:
        nonempty, scope = False, "hypercritical"
        caveats = (OBSTRUCTION_NOTE,)
    elif not family_ok:
        nonempty, scope = None, "indeterminate"
        caveats = (SUFFICIENCY_CAVEAT, "test-family witness search hit its cap")
    else:
        nonempty, scope = True, "hypercritical"
        caveats = (SUFFICIENCY_CAVEAT,)

    return HOmegaReport(
        nonempty=nonempty,
        scope=scope,
        theta0=theta0,
        cot_theta0=cot_theta0,
        cot_big_theta=cot_big,
        t_witness=family.t_witness,
        certificates=certificates,
        witness=witness,
        caveats=caveats,
    )
