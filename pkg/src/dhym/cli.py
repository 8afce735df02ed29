"""Command-line surface.

Subcommands: check, charge, h-omega, counterexample, sweep, solve, phase.
Exit codes: 0 solvable / certified / ok, 1 negative verdict, 2 borderline
or indeterminate, 3 input error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__, report as _report
from .central_charge import charge_polynomial, winding_angle
from .criteria import full_verdict
from .errors import (
    BorderlineError,
    GoldenMismatchError,
    InadmissibleFieldError,
    ModelError,
    UncertifiedChargeError,
)
from .phase import HermitianPair, classify_branch, complex_quotient, lagrangian_phase
from .stability import h_omega_verdict
from .torus import build_torus_problem, newton_solve, verify_solution
from .variety import load_model, parse_rational

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INDETERMINATE = 2
EXIT_INPUT = 3


def _dump(doc: dict, as_json: bool, lines=None) -> None:
    if as_json:
        print(json.dumps(doc, indent=2))
    else:
        for line in lines or []:
            print(line)


def _load(args):
    model = load_model(args.model)
    alpha = model.cohom_class(args.alpha)
    omega = model.cohom_class(args.omega) if args.omega else model.omega
    return model, alpha, omega


def _add_class_flags(p, need_alpha=True):
    p.add_argument("--model", required=True, help="builtin name or path to a .model file")
    if need_alpha:
        p.add_argument("--alpha", required=True, help="comma-separated rational coefficients")
    p.add_argument("--omega", default=None, help="override the model's Kahler class")
    p.add_argument("--json", action="store_true", help="emit the full JSON report")


def cmd_check(args) -> int:
    model, alpha, omega = _load(args)
    try:
        verdict = full_verdict(model, alpha, omega)
    except BorderlineError as exc:
        print(f"borderline: {exc}", file=sys.stderr)
        return EXIT_INDETERMINATE
    doc = _report.envelope(
        "check",
        model,
        alpha=alpha.as_strings(),
        omega=omega.as_strings(),
        verdict=_report.verdict_dict(verdict),
    )
    _dump(doc, args.json, [f"{model.name}: {verdict.label}"])
    return EXIT_OK if verdict.solvable else EXIT_NEGATIVE


def cmd_charge(args) -> int:
    model, alpha, omega = _load(args)
    v = model.subvariety(args.subvariety) if args.subvariety else model.ambient
    z = charge_polynomial(v, alpha, omega)
    payload = {
        "subvariety": v.name,
        "polynomial": _report.complex_poly_dict(z),
    }
    lines = [f"Z_{v.name}(t): re={z.re!r} im={z.im!r}"]
    try:
        rep = winding_angle(z)
        payload["angles"] = _report.angle_report_dict(rep)
        lines.append(
            f"certified nonvanishing on [1, inf); phi={rep.phi:.12g} theta_hat={rep.theta_hat:.12g}"
        )
        code = EXIT_OK
    except UncertifiedChargeError as exc:
        payload["angles"] = None
        payload["uncertified"] = str(exc)
        lines.append(f"charge not certified: {exc}")
        code = EXIT_NEGATIVE
    doc = _report.envelope(
        "charge", model, alpha=alpha.as_strings(), omega=omega.as_strings(), **payload
    )
    _dump(doc, args.json, lines)
    return code


def cmd_h_omega(args) -> int:
    model, alpha, omega = _load(args)
    cot = parse_rational(args.cot_theta) if args.cot_theta else None
    rep = h_omega_verdict(model, alpha, omega, cot_theta0=cot)
    payload = {"h_omega": _report.h_omega_dict(rep)}
    if args.chi:
        from .stability import check_remark_condition

        chi = model.cohom_class(args.chi)
        if rep.cot_theta0 is None:
            payload["remark_condition"] = None
        else:
            ok, details = check_remark_condition(model, alpha, omega, chi, rep.cot_theta0)
            payload["remark_condition"] = {
                "ok": ok,
                "values": [
                    {
                        "subvariety": d["subvariety"],
                        "m": d["m"],
                        "value": _report.fmt_rat(d["value"]),
                        "positive": d["positive"],
                    }
                    for d in details
                ],
            }
    doc = _report.envelope(
        "h-omega", model, alpha=alpha.as_strings(), omega=omega.as_strings(), **payload
    )
    if rep.nonempty is True:
        line, code = "almost calibrated space: nonempty (family-relative)", EXIT_OK
    elif rep.nonempty is False:
        w = rep.witness or {}
        line, code = f"almost calibrated space: obstructed, witness {w}", EXIT_NEGATIVE
    else:
        line, code = f"almost calibrated space: {rep.scope}", EXIT_INDETERMINATE
    _dump(doc, args.json, [line])
    return code


def cmd_counterexample(args) -> int:
    try:
        doc = _report.run_counterexample()
    except GoldenMismatchError as exc:
        print(f"GOLDEN MISMATCH: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    lines = [
        "blow-up counterexample reproduced exactly:",
        f"  integral (alpha+i*omega)^2 = {doc['square_integral']['re']} + {doc['square_integral']['im']}i",
        f"  Z_X = {doc['ambient_charge']['re']} + {doc['ambient_charge']['im']}i",
        f"  tan(theta0) = {doc['tan_theta0']}",
        f"  obstruction at E: {doc['obstruction_value']}",
        f"  verdict: {doc['verdict']['label']}",
    ]
    _dump(doc, args.json, lines)
    return EXIT_OK


def cmd_sweep(args) -> int:
    model = load_model(args.model)
    omega = model.cohom_class(args.omega) if args.omega else model.omega
    axes = _report.parse_grid_spec(args.alpha_grid)
    if len(axes) != len(model.basis):
        raise ModelError(
            f"grid has {len(axes)} axes, model basis needs {len(model.basis)}"
        )
    text = _report.sweep_csv(model, axes, omega)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {text.count(chr(10)) - 1} rows to {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_solve(args) -> int:
    psi0 = None
    if args.psi0:
        amp, kx, ky = args.psi0.split(",")
        psi0 = (float(amp), int(kx), int(ky))
    prob = build_torus_problem(args.a1, args.a2, psi0, args.n)
    rep = newton_solve(prob, tol=args.tol, max_iter=args.max_iter)
    ver = verify_solution(prob, rep.phi, tol=args.tol)
    doc = _report.envelope(
        "solve",
        None,
        a=[args.a1, args.a2],
        psi0=list(psi0) if psi0 else None,
        n=args.n,
        theta0=_report.fmt_float(prob.theta0),
        converged=rep.converged,
        iterations=rep.iterations,
        residual_max=_report.fmt_float(rep.residual_max),
        phase_min=_report.fmt_float(rep.phase_min),
        phase_max=_report.fmt_float(rep.phase_max),
        damping_halvings=rep.damping_halvings,
        verification={k: (_report.fmt_float(v) if isinstance(v, float) else v) for k, v in ver.items()},
    )
    if args.csv_prefix:
        np.savetxt(f"{args.csv_prefix}_phi.csv", rep.phi, delimiter=",")
        from .torus import phase_field

        np.savetxt(f"{args.csv_prefix}_phase.csv", phase_field(prob, rep.phi), delimiter=",")
    _dump(
        doc,
        args.json,
        [
            f"theta0 = {prob.theta0:.12g}",
            f"converged = {rep.converged} after {rep.iterations} iterations, "
            f"max residual {rep.residual_max:.3e}",
            f"phase range [{rep.phase_min:.9f}, {rep.phase_max:.9f}]",
        ],
    )
    return EXIT_OK if rep.converged else EXIT_NEGATIVE


def _matrix_from_json(obj) -> np.ndarray:
    rows = []
    for row in obj:
        out = []
        for entry in row:
            if isinstance(entry, (list, tuple)):
                out.append(complex(entry[0], entry[1]))
            else:
                out.append(complex(entry))
        rows.append(out)
    return np.array(rows)


def cmd_phase(args) -> int:
    if args.input == "-":
        doc = json.load(sys.stdin)
    else:
        with open(args.input, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    pair = HermitianPair(_matrix_from_json(doc["alpha"]), _matrix_from_json(doc["omega"]))
    point = lagrangian_phase(pair)
    quotient = complex_quotient(pair)
    branch = classify_branch(point.q, pair.n)
    out = _report.envelope(
        "phase",
        None,
        n=pair.n,
        lambdas=[_report.fmt_float(l) for l in point.lambdas],
        q=_report.fmt_float(point.q),
        modulus=_report.fmt_float(point.modulus),
        branch=branch,
        quotient={"re": _report.fmt_float(quotient.real), "im": _report.fmt_float(quotient.imag)},
    )
    _dump(
        out,
        args.json,
        [
            f"lambdas = {list(point.lambdas)}",
            f"Q = {point.q:.12g} ({branch}), modulus = {point.modulus:.12g}",
        ],
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dhym",
        description="Exact solvability criteria and desk-scale numerics for the "
        "hypercritical deformed Hermitian-Yang-Mills equation on model varieties.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="full solvability verdict for a class pair")
    _add_class_flags(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("charge", help="charge polynomial, certificate and angles of one cycle")
    _add_class_flags(p)
    p.add_argument("--subvariety", default=None, help="cycle name (default: ambient)")
    p.set_defaults(func=cmd_charge)

    p = sub.add_parser("h-omega", help="test-family certificates for the almost calibrated space")
    _add_class_flags(p)
    p.add_argument("--cot-theta", default=None, help="exact rational cot(theta0) override, e.g. 2/11")
    p.add_argument("--chi", default=None, help="auxiliary Kahler class for the wedge-ladder check")
    p.set_defaults(func=cmd_h_omega)

    p = sub.add_parser("counterexample", help="golden blow-up reproduction (exact)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("sweep", help="verdict grid over class coefficients, CSV output")
    p.add_argument("--model", required=True)
    p.add_argument("--alpha-grid", required=True, help="per-coefficient 'lo..hi[:step]' ranges, comma separated")
    p.add_argument("--omega", default=None)
    p.add_argument("--out", default=None, help="CSV path (default: stdout)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("solve", help="Newton solve of the torus phase equation")
    p.add_argument("--a1", type=float, required=True)
    p.add_argument("--a2", type=float, required=True)
    p.add_argument("--psi0", default=None, help="perturbation recipe 'amp,kx,ky'")
    p.add_argument("--n", type=int, default=64)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--max-iter", type=int, default=50)
    p.add_argument("--csv-prefix", default=None, help="dump potential and phase fields as CSV")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("phase", help="pointwise phase of a Hermitian pair from JSON")
    p.add_argument("--input", default="-", help="JSON file with 'alpha' and 'omega' (default: stdin)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_phase)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BorderlineError as exc:
        print(f"borderline: {exc}", file=sys.stderr)
        return EXIT_INDETERMINATE
    except (ModelError, InadmissibleFieldError, ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
