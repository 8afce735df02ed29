"""Decide hypercritical solvability on projective 3-space.

For alpha = c*H the three conditions reduce to a closed form: solvable
exactly when c > sqrt(3), i.e. when 3*arccot(c) < pi/2. The sweep below
brackets that boundary between the grid points 8/5 and 9/5.
"""

import math
from fractions import Fraction

from dhym import CohomClass, build_builtin, full_verdict

model = build_builtin("cp3")

print("=== alpha = 2H in detail ===")
alpha = CohomClass([2])
verdict = full_verdict(model, alpha)
a = verdict.chern
print(f"chern vector (a0, a1, a2, a3) = ({', '.join(str(x) for x in a.as_tuple())})")
print(f"(i)   chern inequality a3*a0 < 9*a1*a2:  {verdict.chern_ok}")
print(f"(ii)  Im Z_X > 0 and phi_X in (pi/2, pi): {verdict.cond2_ok}")
print(f"(iii) every proper cycle beats phi_X:     {verdict.cond3_ok}")
print(f"verdict: {verdict.label}")
print(f"cot(theta0) = {verdict.cot_theta0} (exact), theta0 = {verdict.theta0:.9f}")
print(f"cross-check: cot(3*arccot(2)) = {1/math.tan(3*math.atan2(1,2)):.9f}")

print("\n=== the implied inequalities (theorems, rechecked exactly) ===")
print(f"Kahlerity integrals positive: {verdict.kahlerity_ok}")
print(f"stability (ambient equality exact): {verdict.stability_ok}")
print(f"wedge ladder with closed forms: {verdict.claim_ok}")

print("\n=== sweep along alpha = c*H ===")
c = Fraction(7, 5)
while c <= Fraction(12, 5):
    v = full_verdict(model, CohomClass([c]))
    marker = "SOLVABLE" if v.solvable else "not solvable"
    print(f"  c = {str(c):>5}  ->  {marker}")
    c += Fraction(1, 5)
print(f"(boundary is sqrt(3) = {math.sqrt(3):.6f}, between 8/5 and 9/5)")
