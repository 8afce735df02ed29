"""Report assembly: JSON-able dictionaries, the golden blow-up reproduction,
and coefficient sweeps.

Serialization contract: exact rationals are emitted as strings (never as
floats), angles as floats rounded to 12 significant digits, key order fixed
by construction, so identical invocations produce byte-identical documents.
"""

from __future__ import annotations

import csv
import io
from fractions import Fraction

from . import __version__
from .central_charge import AngleReport, ComplexPoly, charge_polynomial
from .criteria import LABEL_B_OBSTRUCTED, CriteriaVerdict, full_verdict
from .errors import BorderlineError, GoldenMismatchError
from .stability import HOmegaReport, PositivityCertificate
from .variety import (
    CohomClass,
    VarietyModel,
    build_builtin,
    complex_wedge_integral,
    parse_rational,
)


def fmt_float(x) -> float:
    """Round to 12 significant digits for stable serialized output."""
    return float(f"{float(x):.12g}")


def fmt_rat(x: Fraction) -> str:
    return str(Fraction(x))


def poly_strings(p) -> list[str]:
    return [fmt_rat(c) for c in p.coeffs]


def complex_poly_dict(z: ComplexPoly) -> dict:
    return {"re_coeffs": poly_strings(z.re), "im_coeffs": poly_strings(z.im)}


def angle_report_dict(rep: AngleReport) -> dict:
    return {
        "theta_hat": fmt_float(rep.theta_hat),
        "phi": fmt_float(rep.phi),
        "arg_z1": fmt_float(rep.arg_z1),
        "z1": {"re": fmt_rat(rep.re_z1), "im": fmt_rat(rep.im_z1)},
        "quadrant_steps": rep.quadrant_steps,
        "tail_start": fmt_rat(rep.tail_start),
        "certificate": {
            "common_root_free": rep.certificate.common_root_free,
            "gcd_degree": rep.certificate.gcd_degree,
            "gcd_roots_ge_1": rep.certificate.gcd_roots_ge_1,
            "re_roots_ge_1": rep.certificate.re_roots_ge_1,
            "im_roots_ge_1": rep.certificate.im_roots_ge_1,
        },
        "crossings": [
            {"part": ev.part, "lo": fmt_rat(ev.lo), "hi": fmt_rat(ev.hi)}
            for ev in rep.crossings
        ],
        "touches": [
            {"part": ev.part, "lo": fmt_rat(ev.lo), "hi": fmt_rat(ev.hi)}
            for ev in rep.touches
        ],
    }


def positivity_dict(cert: PositivityCertificate) -> dict:
    return {
        "polynomial": poly_strings(cert.polynomial),
        "value_at_0": fmt_rat(cert.value_at_0),
        "roots_in_open_positive": cert.roots_in_open_positive,
        "strict": cert.strict,
        "valid": cert.valid,
    }


def h_omega_dict(rep: HOmegaReport) -> dict:
    witness = None
    if rep.witness is not None:
        witness = {"subvariety": rep.witness["subvariety"]}
        if rep.witness.get("value") is not None:
            witness["t"] = fmt_rat(rep.witness["t"])
            witness["value"] = fmt_rat(rep.witness["value"])
        else:
            lo, hi = rep.witness["root_between"]
            witness["root_between"] = [fmt_rat(lo), fmt_rat(hi)]
    return {
        "nonempty": rep.nonempty,
        "scope": rep.scope,
        "theta0": None if rep.theta0 is None else fmt_float(rep.theta0),
        "cot_theta0": None if rep.cot_theta0 is None else fmt_rat(rep.cot_theta0),
        "cot_shifted_angle": None if rep.cot_big_theta is None else fmt_rat(rep.cot_big_theta),
        "t_witness": None if rep.t_witness is None else fmt_rat(rep.t_witness),
        "certificates": {k: positivity_dict(v) for k, v in rep.certificates.items()},
        "witness": witness,
        "caveats": list(rep.caveats),
    }


def verdict_dict(v: CriteriaVerdict) -> dict:
    out = {
        "model": v.model,
        "dim": v.dim,
        "label": v.label,
        "solvable": v.solvable,
        "family_relative": v.family_relative,
        "chern_ok": v.chern_ok,
        "cond2_ok": v.cond2_ok,
        "cond3_ok": v.cond3_ok,
        "condition_b_ok": v.condition_b_ok,
        "kahlerity_ok": v.kahlerity_ok,
        "stability_ok": v.stability_ok,
        "claim_ok": v.claim_ok,
        "theta0": None if v.theta0 is None else fmt_float(v.theta0),
        "cot_theta0": None if v.cot_theta0 is None else fmt_rat(v.cot_theta0),
        "phi_x": None if v.phi_x is None else fmt_float(v.phi_x),
        "chern_vector": None if v.chern is None else [fmt_rat(a) for a in v.chern.as_tuple()],
        "angles": {name: angle_report_dict(r) for name, r in v.reports.items()},
        "warnings": [],
    }
    if v.family_note:
        out["warnings"].append(v.family_note)
    else:
        out["warnings"].append(
            "verdict is relative to the listed subvariety family"
        )
    uncert = v.details.get("uncertified") or {}
    for name, msg in uncert.items():
        out["warnings"].append(f"charge of {name!r} not certified: {msg}")
    if v.h_omega is not None:
        out["h_omega"] = h_omega_dict(v.h_omega)
    return out


def envelope(command: str, model: VarietyModel | None = None, **payload) -> dict:
    doc = {"command": command, "version": __version__}
    if model is not None:
        doc["model"] = model.name
    doc.update(payload)
    return doc


# ---------------------------------------------------------------------------
# golden reproduction


def run_counterexample() -> dict:
    """Rebuild the blow-up example with [omega] = 2H - E, [alpha] = 6H + E
    and assert its exact signature:

        integral (alpha + i omega)^2 = 32 + 26i,
        ambient charge at 1         = -16 + 13i,
        tan(theta0)                 = 13/16,
        integral_E (alpha + tan(theta0) omega) = -3/16,

    with Im Z_V > 0 on the whole family yet the almost calibrated space
    empty. Any mismatch raises GoldenMismatchError.
    """
    model = build_builtin("blp_cp2")
    alpha = model.cohom_class("6,1")
    omega = model.cohom_class("2,-1")
    x = model.ambient

    def expect(label, got, want):
        if got != want:
            raise GoldenMismatchError(f"{label}: got {got}, expected {want}")
        return got

    sq = complex_wedge_integral(x, alpha, omega, 2)
    expect("integral of (alpha + i*omega)^2", sq, (Fraction(32), Fraction(26)))

    z_x = charge_polynomial(x, alpha, omega)
    expect("ambient charge at t=1", z_x.value(1), (Fraction(-16), Fraction(13)))

    tan_theta0 = sq[1] / sq[0]
    expect("tan(theta0)", tan_theta0, Fraction(13, 16))

    e = model.subvariety("E")
    obstruction = e.integrate([alpha + omega.scale(tan_theta0)])
    expect("integral_E (alpha + tan(theta0)*omega)", obstruction, Fraction(-3, 16))

    charges = {}
    for v in model.subvarieties:
        zv = charge_polynomial(v, alpha, omega).value(1)
        if zv[1] <= 0:
            raise GoldenMismatchError(f"Im Z of {v.name!r} is {zv[1]}, expected > 0")
        charges[v.name] = {"re": fmt_rat(zv[0]), "im": fmt_rat(zv[1])}
    expect("charge of E", (charges["E"]["re"], charges["E"]["im"]), ("1", "1"))
    expect("charge of H-E", (charges["H-E"]["re"], charges["H-E"]["im"]), ("-7", "1"))
    expect("charge of H", (charges["H"]["re"], charges["H"]["im"]), ("-6", "2"))

    verdict = full_verdict(model, alpha, omega)
    expect("verdict label", verdict.label, LABEL_B_OBSTRUCTED)
    if verdict.h_omega.witness != {
        "subvariety": "E",
        "t": Fraction(0),
        "value": Fraction(-3, 16),
    }:
        raise GoldenMismatchError(
            f"obstruction witness mismatch: {verdict.h_omega.witness}"
        )

    doc = envelope(
        "counterexample",
        model,
        alpha=alpha.as_strings(),
        omega=omega.as_strings(),
        square_integral={"re": fmt_rat(sq[0]), "im": fmt_rat(sq[1])},
        ambient_charge={"re": "-16", "im": "13"},
        tan_theta0=fmt_rat(tan_theta0),
        obstruction_value=fmt_rat(obstruction),
        family_charges=charges,
        verdict=verdict_dict(verdict),
    )
    return doc


# ---------------------------------------------------------------------------
# sweeps


def parse_grid_spec(spec: str) -> list[list[Fraction]]:
    """Per-coefficient ranges 'lo..hi[:step]' or single rationals, comma
    separated: '1..10,-3..3' or '7/5..12/5:1/20' or '2,-1'."""
    axes = []
    for part in spec.split(","):
        part = part.strip()
        if ".." in part:
            lo_hi, _, step_s = part.partition(":")
            lo_s, _, hi_s = lo_hi.partition("..")
            lo, hi = parse_rational(lo_s), parse_rational(hi_s)
            step = parse_rational(step_s) if step_s else Fraction(1)
            if step <= 0 or hi < lo:
                raise ValueError(f"bad range {part!r}")
            vals = []
            v = lo
            while v <= hi:
                vals.append(v)
                v += step
            axes.append(vals)
        else:
            axes.append([parse_rational(part)])
    return axes


SWEEP_COLUMNS = [
    "alpha",
    "status",
    "a0",
    "a1",
    "a2",
    "a3",
    "chern_ok",
    "cond2_ok",
    "cond3_ok",
    "condition_b_ok",
    "phi_x",
    "theta0",
    "cot_theta0",
    "kahlerity_ok",
    "stability_ok",
    "claim_ok",
    "h_omega",
    "label",
]


def sweep_rows(model: VarietyModel, axes: list[list[Fraction]], omega: CohomClass | None = None):
    """One verdict row per grid point, deterministic order; per-row failures
    go to the status column instead of aborting the sweep."""
    import itertools

    omega = model.omega if omega is None else omega
    for combo in itertools.product(*axes):
        alpha = CohomClass(combo)
        row = {c: "" for c in SWEEP_COLUMNS}
        row["alpha"] = ";".join(fmt_rat(c) for c in combo)
        try:
            v = full_verdict(model, alpha, omega)
            row["status"] = "ok"
            if v.chern is not None:
                row.update(
                    a0=fmt_rat(v.chern.a0),
                    a1=fmt_rat(v.chern.a1),
                    a2=fmt_rat(v.chern.a2),
                    a3=fmt_rat(v.chern.a3),
                )
            for key in ("chern_ok", "cond2_ok", "cond3_ok", "condition_b_ok",
                        "kahlerity_ok", "stability_ok", "claim_ok"):
                val = getattr(v, key)
                row[key] = "" if val is None else str(val)
            row["phi_x"] = "" if v.phi_x is None else repr(fmt_float(v.phi_x))
            row["theta0"] = "" if v.theta0 is None else repr(fmt_float(v.theta0))
            row["cot_theta0"] = "" if v.cot_theta0 is None else fmt_rat(v.cot_theta0)
            if v.h_omega is not None:
                row["h_omega"] = v.h_omega.scope if v.h_omega.nonempty is None else (
                    "nonempty" if v.h_omega.nonempty else "obstructed"
                )
            elif v.solvable:
                row["h_omega"] = "nonempty"
            row["label"] = v.label
        except BorderlineError as exc:
            row["status"] = f"borderline: {exc}"
        except Exception as exc:  # per-row isolation is the contract
            row["status"] = f"error: {exc}"
        yield row


def sweep_csv(model: VarietyModel, axes, omega: CohomClass | None = None) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in sweep_rows(model, axes, omega):
        writer.writerow(row)
    return buf.getvalue()
