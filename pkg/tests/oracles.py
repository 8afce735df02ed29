"""Independent brute-force oracles used to cross-check the exact pipeline.

These deliberately avoid the code paths they validate: the winding oracle
is a dense adaptive continuation of the floating-point argument, the
intersection oracle contracts a dense symmetrized tensor, and the shift
oracle is a scan-and-refine bisection bracket.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction


def _wrap(x: float) -> float:
    """Reduce to (-pi, pi]."""
    y = math.fmod(x + math.pi, 2 * math.pi)
    if y <= 0:
        y += 2 * math.pi
    return y - math.pi


def numeric_winding_phi(z, max_step_angle: float = 0.2) -> float:
    """Adaptive numeric continuation of arg z(t) from a large anchor down to
    t = 1, anchored at the asymptotic direction -(p-2)*pi/2.

    The step size is capped by a local derivative bound so that the curve
    cannot leave a safe disc (and in particular cannot loop around the
    origin) between consecutive samples; without that cap, tight clusters
    of axis crossings can alias away a full half-turn.
    """
    p = z.degree
    re = [float(c) for c in z.re.coeffs]
    im = [float(c) for c in z.im.coeffs]
    mags = [
        abs(float(z.re.coeff(k))) + abs(float(z.im.coeff(k))) for k in range(p + 1)
    ]

    def val(t: float) -> complex:
        acc_r = 0.0
        for c in reversed(re):
            acc_r = acc_r * t + c
        acc_i = 0.0
        for c in reversed(im):
            acc_i = acc_i * t + c
        return complex(acc_r, acc_i)

    def deriv_bound(t: float) -> float:
        # |z'(s)| for s in [1, t], coefficientwise, monotone in t >= 1
        return sum(k * c * t ** (k - 1) for k, c in enumerate(mags) if k) or 1e-300

    lead = max(abs(float(z.re.coeff(p))), abs(float(z.im.coeff(p))))
    bulk = max(mags[:p], default=0.0)
    t = 64.0 * (1.0 + bulk / lead)

    anchor = -(p - 2) * math.pi / 2
    arg = anchor + _wrap(math.atan2(val(t).imag, val(t).real) - anchor)

    dt = (t - 1.0) / 256.0
    cur_z = val(t)
    cur = math.atan2(cur_z.imag, cur_z.real)
    while t > 1.0:
        # inside the cap the curve stays within a quarter of |z| of the
        # sample, so the wrapped difference is the true argument change
        cap = 0.25 * abs(cur_z) / deriv_bound(t)
        dt = min(dt, t - 1.0, max(cap, 1e-13 * max(1.0, t)))
        while True:
            t_next = t - dt
            nxt_z = val(t_next)
            nxt = math.atan2(nxt_z.imag, nxt_z.real)
            delta = _wrap(nxt - cur)
            chord_ok = abs(nxt_z - cur_z) <= 0.3 * max(
                min(abs(cur_z), abs(nxt_z)), 1e-300
            )
            if (abs(delta) <= max_step_angle and chord_ok) or dt < 1e-13 * max(1.0, t):
                break
            dt *= 0.5
        arg += delta
        cur, cur_z = nxt, nxt_z
        t = t_next
        dt *= 1.4
    return arg


def dense_tensor(functional: dict, basis_size: int, arity: int):
    """Fully symmetrized dense tensor as a nested dict keyed by index tuples."""
    dense = {}
    for idx in itertools.product(range(basis_size), repeat=arity):
        dense[idx] = functional.get(tuple(sorted(idx)), Fraction(0))
    return dense


def brute_integrate(v, classes) -> Fraction:
    """Contract the dense symmetrized tensor one class at a time."""
    arity = v.dim
    dense = dense_tensor(v.functional, v.basis_size, arity)
    for c in classes:
        nxt = {}
        for idx, val in dense.items():
            key = idx[1:]
            nxt[key] = nxt.get(key, Fraction(0)) + val * c.coeffs[idx[0]]
        dense = nxt
    return dense[()]


def scan_scalar_shift(lambdas, target: float) -> float:
    """Scan-and-refine root of sum(arccot(l + s)) = target."""

    def f(s):
        return sum(math.atan2(1.0, l + s) for l in lambdas)

    lo, hi = -1.0, 1.0
    while f(lo) < target:
        lo *= 2
    while f(hi) > target:
        hi *= 2
    for _ in range(3):
        grid = [lo + (hi - lo) * k / 1000 for k in range(1001)]
        for a, b in zip(grid, grid[1:]):
            if f(a) >= target >= f(b):
                lo, hi = a, b
                break
    for _ in range(100):
        mid = (lo + hi) / 2
        if f(mid) > target:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2
