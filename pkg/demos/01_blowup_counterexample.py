"""Walk through the blow-up example where every cycle has a positive
imaginary charge and yet the almost calibrated space is empty.

The variety is the blow-up of the projective plane at a point, with H the
pulled-back hyperplane class and E the exceptional curve (H^2 = 1,
E^2 = -1, H.E = 0). We take

    omega = 2H - E  (Kahler),     alpha = 6H + E.

Every step below is exact rational arithmetic.
"""

from dhym import (
    build_builtin,
    charge_polynomial,
    complex_wedge_integral,
    full_verdict,
    h_omega_verdict,
)

model = build_builtin("blp_cp2")
alpha = model.cohom_class("6,1")
omega = model.cohom_class("2,-1")

print("=== the ambient square integral ===")
re, im = complex_wedge_integral(model.ambient, alpha, omega, 2)
print(f"integral (alpha + i omega)^2 = {re} + {im}i")
print(f"first quadrant, so theta0 is hypercritical with tan(theta0) = {im/re}")

print("\n=== charges of the whole family ===")
for v in model.subvarieties:
    z = charge_polynomial(v, alpha, omega)
    zre, zim = z.value(1)
    print(f"  Z_{v.name:<4} (t=1) = {zre} + {zim}i    (Im > 0: {zim > 0})")

print("\n=== but the almost calibrated space is empty ===")
rep = h_omega_verdict(model, alpha, omega)
w = rep.witness
print(f"scope: {rep.scope}, nonempty: {rep.nonempty}")
print(
    f"witness: the family value over {w['subvariety']} at t = {w['t']} "
    f"is {w['value']} < 0"
)
print("(the value is integral_E (alpha + tan(theta0) omega) = -1 + 13/16 = -3/16)")

print("\n=== the aggregate verdict ===")
verdict = full_verdict(model, alpha, omega)
print(f"label: {verdict.label}")
