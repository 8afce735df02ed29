"""Solvability criteria for the hypercritical dHYM equation on threefolds.

For a threefold the decision reduces to three class-level conditions:

  (i)   the Chern-number inequality a3*a0 < 9*a1*a2, where
        a_i = integral_X alpha^i wedge omega^(3-i);
  (ii)  Im Z_X > 0 and the slicing angle of the ambient charge lies in
        (pi/2, pi);
  (iii) for every proper subvariety V in the family, Im Z_V > 0 and the
        slicing angle of V exceeds that of X.

When they hold, three further statements are theorems rather than extra
conditions: every Kahlerity integral of alpha is positive, the stability
inequalities against cot(theta0) hold with exact equality on X, and the
ladder of wedge inequalities against powers of alpha holds. The verdict
recomputes them as soundness assertions; a violation is reported as a bug,
never as a negative verdict.

Rational comparisons are exact. Comparisons of transcendental angles carry a
1e-12 indeterminate band and raise BorderlineError instead of silently
resolving.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .central_charge import AngleReport, charge_polynomial, winding_angle
from .errors import (
    BorderlineError,
    InconsistentAngleError,
    ModelError,
    SoundnessError,
    UncertifiedChargeError,
)
from .variety import (
    CohomClass,
    SubvarietyModel,
    VarietyModel,
    complex_wedge_integral,
    wedge_mix_integral,
)

ANGLE_BAND = 1e-12

LABEL_SOLVABLE = "solvable-hypercritical (family-relative)"
LABEL_NOT_SOLVABLE = "not-solvable (family-relative)"
LABEL_B_OBSTRUCTED = "condition-(B)-holds, H_omega-obstructed"
LABEL_B_NONEMPTY = "condition-(B)-holds, H_omega-nonempty (family-relative)"
LABEL_B_FAILS = "condition-(B)-fails"
LABEL_OUT_OF_SCOPE = "out-of-hypercritical-scope"


@dataclass(frozen=True)
class ChernVector:
    """a_i = integral_X alpha^i wedge omega^(3-i) for a threefold."""

    a0: Fraction
    a1: Fraction
    a2: Fraction
    a3: Fraction

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a0, self.a1, self.a2, self.a3)


def chern_vector(model: VarietyModel, alpha: CohomClass, omega: CohomClass) -> ChernVector:
    if model.dim != 3:
        raise ModelError(f"Chern vector needs a threefold, model {model.name!r} has dim {model.dim}")
    x = model.ambient
    a = [wedge_mix_integral(x, alpha, omega, i) for i in range(4)]
    if a[0] <= 0:
        raise ModelError("omega volume must be positive")
    return ChernVector(*a)


def check_chern_inequality(a: ChernVector) -> bool:
    """Strict exact comparison a3*a0 < 9*a1*a2."""
    return a.a3 * a.a0 < 9 * a.a1 * a.a2


def _strictly_between(x: float, lo: float, hi: float, what: str) -> bool:
    if abs(x - lo) < ANGLE_BAND or abs(x - hi) < ANGLE_BAND:
        raise BorderlineError(f"{what} = {x!r} is within {ANGLE_BAND} of an endpoint of ({lo}, {hi})")
    return lo < x < hi


def check_condition_ii(z_x) -> bool:
    """Im Z_X(1) > 0 (exact) and ambient slicing angle in (pi/2, pi)."""
    report = z_x if isinstance(z_x, AngleReport) else winding_angle(z_x)
    p = _report_degree(report)
    if p != 3:
        raise ModelError("ambient charge condition is only defined in dimension 3")
    if report.im_z1 <= 0:
        return False
    return _strictly_between(report.phi, math.pi / 2, math.pi, "ambient slicing angle")


def _report_degree(report: AngleReport) -> int:
    # phi = theta_hat - (p-2)*pi/2 pins p
    return round((report.theta_hat - report.phi) / (math.pi / 2)) + 2


def check_condition_iii(reports: Mapping[str, AngleReport], phi_x: float) -> bool:
    """Every proper cycle: Im Z_V(1) > 0 (exact) and phi_V > phi_X."""
    for name, rep in reports.items():
        if rep.im_z1 <= 0:
            return False
        if abs(rep.phi - phi_x) < ANGLE_BAND:
            raise BorderlineError(
                f"slicing angle of {name!r} within {ANGLE_BAND} of the ambient angle"
            )
        if rep.phi <= phi_x:
            return False
    return True


def cot_theta0_rational(a: ChernVector) -> Fraction:
    """Exact cot(theta0) = (a3 - 3*a1) / (3*a2 - a0)."""
    den = 3 * a.a2 - a.a0
    if den == 0:
        raise InconsistentAngleError(
            "3*a2 = a0: the cohomological angle sits on the pi/2 boundary"
        )
    return (a.a3 - 3 * a.a1) / den


def check_kahlerity(model: VarietyModel, alpha: CohomClass, omega: CohomClass):
    """Positivity of every integral_V alpha^k wedge omega^(p-k), k = 1..p,
    over the whole family: the numerical Kahlerity test for alpha."""
    details = []
    ok = True
    for v in model.subvarieties:
        for k in range(1, v.dim + 1):
            val = wedge_mix_integral(v, alpha, omega, k)
            passed = val > 0
            ok = ok and passed
            details.append({"subvariety": v.name, "k": k, "value": val, "positive": passed})
    return ok, details


def _hypercritical_guard(x: SubvarietyModel, alpha: CohomClass, omega: CohomClass) -> tuple[Fraction, Fraction]:
    re, im = complex_wedge_integral(x, alpha, omega, x.dim)
    if re <= 0 or im <= 0:
        raise InconsistentAngleError(
            f"integral of (alpha + i*omega)^{x.dim} = {re} + {im}i is outside the "
            "open first quadrant; no hypercritical angle exists for these classes"
        )
    return re, im


def check_stability_inequalities(
    model: VarietyModel, alpha: CohomClass, omega: CohomClass, cot_t0: Fraction
):
    """Exact stability values integral_V Re(alpha+i*omega)^p
    - cot_t0 * Im(alpha+i*omega)^p: zero on the ambient cycle (enforced
    exactly), strictly positive on proper cycles."""
    cot_t0 = Fraction(cot_t0)
    _hypercritical_guard(model.ambient, alpha, omega)
    details = []
    ok = True
    for v in model.subvarieties:
        re, im = complex_wedge_integral(v, alpha, omega, v.dim)
        val = re - cot_t0 * im
        if v.dim == model.dim:
            if val != 0:
                raise InconsistentAngleError(
                    f"ambient stability value is {val}, not 0: cot_t0 does not "
                    "match the classes"
                )
            passed = True
        else:
            passed = val > 0
        ok = ok and passed
        details.append({"subvariety": v.name, "value": val, "ok": passed})
    return ok, details


def check_claim_inequalities(
    model: VarietyModel, alpha: CohomClass, omega: CohomClass, cot_t0: Fraction
):
    """Ladder of exact inequalities
    integral_V (Re(alpha+i*omega)^k - cot_t0 * Im(...)^k) wedge alpha^(p-k):
    nonnegative on the ambient cycle, strictly positive on proper cycles,
    with the ambient k = 1, 2 values checked against their closed forms."""
    cot_t0 = Fraction(cot_t0)
    n = model.dim
    details = []
    ok = True
    for v in model.subvarieties:
        for k in range(1, v.dim + 1):
            re, im = complex_wedge_integral(v, alpha, omega, k, [alpha] * (v.dim - k))
            val = re - cot_t0 * im
            passed = (val >= 0) if v.dim == n else (val > 0)
            ok = ok and passed
            details.append({"subvariety": v.name, "k": k, "value": val, "ok": passed})
    if n == 3:
        a = chern_vector(model, alpha, omega)
        den = 3 * a.a2 - a.a0
        if den != 0:
            closed = {
                1: (2 * a.a2 * a.a3 - a.a3 * a.a0 + 3 * a.a1 * a.a2) / den,
                2: (3 * a.a1 * a.a2 + a.a2 * a.a3 + a.a1 * a.a0 - a.a0 * a.a3) / den,
            }
            ambient = {d["k"]: d["value"] for d in details if d["subvariety"] == model.ambient.name}
            for k, want in closed.items():
                if ambient[k] != want:
                    raise SoundnessError(
                        f"ambient ladder value for k={k} is {ambient[k]}, "
                        f"closed form gives {want}"
                    )
    return ok, details


@dataclass
class CriteriaVerdict:
    """Machine-readable verdict; always relative to the model's family."""

    model: str
    dim: int
    label: str
    solvable: bool | None
    chern_ok: bool | None
    cond2_ok: bool | None
    cond3_ok: bool | None
    kahlerity_ok: bool | None
    stability_ok: bool | None
    claim_ok: bool | None
    condition_b_ok: bool | None
    theta0: float | None
    cot_theta0: Fraction | None
    phi_x: float | None
    chern: ChernVector | None
    reports: dict[str, AngleReport] = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    family_relative: bool = True
    family_note: str | None = None
    h_omega: object = None  # stability_family report for n = 2 runs


def _all_charge_reports(model, alpha, omega) -> tuple[dict[str, AngleReport], dict[str, str]]:
    reports: dict[str, AngleReport] = {}
    failures: dict[str, str] = {}
    for v in model.subvarieties:
        try:
            reports[v.name] = winding_angle(charge_polynomial(v, alpha, omega))
        except UncertifiedChargeError as exc:
            failures[v.name] = str(exc)
    return reports, failures


def _validate_omega(model: VarietyModel, omega: CohomClass) -> None:
    for v in model.subvarieties:
        if v.integrate([omega] * v.dim) <= 0:
            raise ModelError(
                f"supplied omega is not positive on {v.name!r}; not a Kahler class "
                "for this family"
            )


def full_verdict(model: VarietyModel, alpha: CohomClass, omega: CohomClass | None = None) -> CriteriaVerdict:
    """Aggregate verdict. Threefolds run the full pipeline; surfaces run the
    charge/Im subset together with the test-family obstruction machinery."""
    from . import stability  # deferred: stability imports this module's helpers

    omega = model.omega if omega is None else omega
    _validate_omega(model, omega)
    reports, failures = _all_charge_reports(model, alpha, omega)
    x_name = model.ambient.name
    proper = {n: r for n, r in reports.items() if n != x_name}

    verdict = CriteriaVerdict(
        model=model.name,
        dim=model.dim,
        label=LABEL_NOT_SOLVABLE,
        solvable=None,
        chern_ok=None,
        cond2_ok=None,
        cond3_ok=None,
        kahlerity_ok=None,
        stability_ok=None,
        claim_ok=None,
        condition_b_ok=None,
        theta0=None,
        cot_theta0=None,
        phi_x=None,
        chern=None,
        reports=reports,
        details={"uncertified": failures},
        family_note=model.family_note,
    )

    all_certified = not failures
    # the positive-imaginary-charge condition is exact rational arithmetic on
    # Z_V(1); it stays decidable even when a winding is uncertified
    verdict.condition_b_ok = all(
        charge_polynomial(v, alpha, omega).value(1)[1] > 0 for v in model.subvarieties
    )

    if model.dim == 3:
        a = chern_vector(model, alpha, omega)
        verdict.chern = a
        verdict.chern_ok = check_chern_inequality(a)
        x_report = reports.get(x_name)
        verdict.cond2_ok = bool(
            x_report is not None and check_condition_ii(x_report)
        )
        if x_report is not None:
            verdict.phi_x = x_report.phi
            verdict.cond3_ok = all_certified and check_condition_iii(proper, x_report.phi)
        else:
            verdict.cond3_ok = False
        verdict.solvable = bool(verdict.chern_ok and verdict.cond2_ok and verdict.cond3_ok)
        verdict.label = LABEL_SOLVABLE if verdict.solvable else LABEL_NOT_SOLVABLE

        if verdict.solvable:
            cot = cot_theta0_rational(a)
            verdict.cot_theta0 = cot
            verdict.theta0 = math.pi - x_report.phi
            # theorems under (i)-(iii): failures are soundness bugs
            k_ok, k_det = check_kahlerity(model, alpha, omega)
            s_ok, s_det = check_stability_inequalities(model, alpha, omega, cot)
            c_ok, c_det = check_claim_inequalities(model, alpha, omega, cot)
            verdict.kahlerity_ok = k_ok
            verdict.stability_ok = s_ok
            verdict.claim_ok = c_ok
            verdict.details.update(kahlerity=k_det, stability=s_det, claim=c_det)
            if not (k_ok and s_ok and c_ok):
                raise SoundnessError(
                    "criteria (i)-(iii) hold but an implied inequality failed: "
                    f"kahlerity={k_ok}, stability={s_ok}, claim={c_ok} "
                    f"on model {model.name!r}"
                )
        return verdict

    if model.dim == 2:
        x = model.ambient
        re, im = complex_wedge_integral(x, alpha, omega, 2)
        verdict.details["ambient_power_integral"] = (re, im)
        if re <= 0 or im <= 0:
            verdict.label = LABEL_OUT_OF_SCOPE
            verdict.solvable = False
            return verdict
        # hypercritical angle: tan(theta0) = im/re exactly
        verdict.cot_theta0 = re / im
        verdict.theta0 = math.atan2(float(im), float(re))
        h = stability.h_omega_verdict(model, alpha, omega, cot_theta0=re / im)
        verdict.h_omega = h
        if not verdict.condition_b_ok:
            verdict.label = LABEL_B_FAILS
            verdict.solvable = False
        elif h.nonempty:
            verdict.label = LABEL_B_NONEMPTY
            verdict.solvable = True
        else:
            verdict.label = LABEL_B_OBSTRUCTED
            verdict.solvable = False
        return verdict

    raise ModelError(
        f"full verdict implemented for dim 2 and 3 only; model {model.name!r} has dim {model.dim}"
    )
