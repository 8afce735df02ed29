"""Exact univariate polynomial arithmetic over the rationals.

Dense coefficient vectors of ``fractions.Fraction``, intended for the low
degrees that show up in charge polynomials (degree = subvariety dimension).
Provides the Euclidean toolkit (division, gcd, Yun square-free splitting)
and Sturm-chain root counting / isolation, which is what turns "positive on
an unbounded interval" into a finite, exact decision.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected exact rational, got {type(x).__name__}: {x!r}")


class QPoly:
    """Polynomial with exact rational coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def constant(cls, c) -> "QPoly":
        return cls([_as_fraction(c)])

    @classmethod
    def x(cls) -> "QPoly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial at -1."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else _ZERO

    def __call__(self, t) -> Fraction:
        t = _as_fraction(t)
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __eq__(self, other) -> bool:
        return isinstance(other, QPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __neg__(self) -> "QPoly":
        return QPoly([-c for c in self.coeffs])

    def __add__(self, other: "QPoly") -> "QPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return QPoly(out)

    def __sub__(self, other: "QPoly") -> "QPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (Fraction, int)):
            f = _as_fraction(other)
            return QPoly([c * f for c in self.coeffs])
        if self.is_zero or other.is_zero:
            return QPoly()
        out = [_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return QPoly(out)

    __rmul__ = __mul__

    def derivative(self) -> "QPoly":
        return QPoly([k * c for k, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "QPoly":
        if self.is_zero:
            return self
        lead = self.leading
        return QPoly([c / lead for c in self.coeffs])

    def __divmod__(self, other: "QPoly"):
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        lead = other.leading
        q = [_ZERO] * max(len(rem) - db, 0)
        for k in range(len(rem) - db - 1, -1, -1):
            c = rem[k + db] / lead
            if c:
                q[k] = c
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
            rem[k + db] = _ZERO
        return QPoly(q), QPoly(rem)

    def __floordiv__(self, other: "QPoly") -> "QPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "QPoly") -> "QPoly":
        return divmod(self, other)[1]

    def __repr__(self) -> str:
        if self.is_zero:
            return "QPoly(0)"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            elif k == 1:
                terms.append(f"{c}*t")
            else:
                terms.append(f"{c}*t^{k}")
        return "QPoly(" + " + ".join(terms) + ")"


def poly_gcd(a: QPoly, b: QPoly) -> QPoly:
    """Monic gcd; gcd(f, 0) = monic f, gcd(0, 0) = 0."""
    while not b.is_zero:
        a, b = b, a % b
    return a.monic() if not a.is_zero else a


def yun_squarefree(f: QPoly) -> list[tuple[QPoly, int]]:
    """Yun decomposition: f = lc * prod g_i^i with the g_i square-free,
    pairwise coprime and monic. Constant factors are dropped."""
    if f.is_zero:
        raise ValueError("square-free decomposition of the zero polynomial")
    f = f.monic()
    if f.degree == 0:
        return []
    d = f.derivative()
    a = poly_gcd(f, d)
    b = f // a
    c = d // a
    out = []
    i = 1
    while b.degree > 0:
        g = poly_gcd(b, c - b.derivative())
        if g.degree > 0:
            out.append((g, i))
        b2 = b // g
        c = (c - b.derivative()) // g
        b = b2
        i += 1
    return out


def squarefree_part(f: QPoly) -> QPoly:
    """Monic product of the distinct irreducible factors of f."""
    out = QPoly.constant(1)
    for g, _ in yun_squarefree(f):
        out = out * g
    return out


def parity_parts(f: QPoly) -> tuple[QPoly, QPoly]:
    """(odd, even): monic square-free polynomials whose roots are the roots
    of f of odd resp. even multiplicity. Sign changes of f happen exactly at
    the roots of the odd part."""
    odd = QPoly.constant(1)
    even = QPoly.constant(1)
    for g, m in yun_squarefree(f):
        if m % 2:
            odd = odd * g
        else:
            even = even * g
    return odd, even


def sturm_chain(f: QPoly) -> list[QPoly]:
    """Canonical signed-remainder chain of the square-free part of f."""
    w = squarefree_part(f)
    chain = [w, w.derivative()]
    while not chain[-1].is_zero:
        chain.append(-(chain[-2] % chain[-1]))
    chain.pop()
    return chain


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _variations(signs: Sequence[int]) -> int:
    seq = [s for s in signs if s]
    return sum(1 for a, b in zip(seq, seq[1:]) if a != b)


def sign_variations_at(chain: Sequence[QPoly], t) -> int:
    return _variations([_sign(p(t)) for p in chain])


def sign_variations_at_inf(chain: Sequence[QPoly], positive: bool = True) -> int:
    signs = []
    for p in chain:
        if p.is_zero:
            signs.append(0)
        elif positive:
            signs.append(_sign(p.leading))
        else:
            signs.append(_sign(p.leading) * (-1) ** (p.degree % 2))
    return _variations(signs)


def cauchy_root_bound(f: QPoly) -> Fraction:
    """Strict bound: every real root x of f has |x| < bound."""
    if f.is_zero:
        raise ValueError("root bound of the zero polynomial")
    if f.degree == 0:
        return _ONE
    lead = abs(f.leading)
    return 1 + max(abs(c) for c in f.coeffs[:-1]) / lead


def _deflate_at(f: QPoly, r: Fraction) -> QPoly:
    """Divide out the full (t - r)-power from f."""
    lin = QPoly([-r, 1])
    while not f.is_zero and f(r) == 0:
        f = f // lin
    return f


def count_roots_open(f: QPoly, a, b) -> int:
    """Distinct real roots in the open interval (a, b); endpoints may be roots."""
    if f.is_zero:
        raise ValueError("root count of the zero polynomial")
    a, b = _as_fraction(a), _as_fraction(b)
    if b <= a:
        return 0
    f = _deflate_at(_deflate_at(f, a), b)
    if f.degree <= 0:
        return 0
    chain = sturm_chain(f)
    return sign_variations_at(chain, a) - sign_variations_at(chain, b)


def count_roots_from(f: QPoly, a, closed: bool = False) -> int:
    """Distinct real roots in (a, inf), or [a, inf) when closed."""
    a = _as_fraction(a)
    if f.is_zero:
        raise ValueError("root count of the zero polynomial")
    at_a = 1 if (closed and f(a) == 0) else 0
    if f.degree <= 0:
        return at_a
    b = max(cauchy_root_bound(f), a + 1)
    return count_roots_open(f, a, b) + at_a


def nonroot_point(polys: Sequence[QPoly], lo, hi) -> Fraction:
    """A rational point in the closed interval [lo, hi] at which every listed
    polynomial is nonzero. Tries the midpoint, then perturbs dyadically."""
    lo, hi = _as_fraction(lo), _as_fraction(hi)
    if hi < lo:
        raise ValueError("empty interval")
    width = hi - lo
    candidates = [lo + width / 2]
    den = 4
    while len(candidates) < 4 * sum(max(p.degree, 0) for p in polys) + 8:
        candidates.append(lo + width * Fraction(1, den))
        candidates.append(lo + width * Fraction(den - 1, den))
        den *= 2
    for t in candidates:
        if all(p.is_zero or p(t) != 0 for p in polys):
            return t
    raise ArithmeticError("could not find a non-root sample point")


class RootInterval:
    """Open isolating interval (lo, hi) for a single distinct real root of poly."""

    __slots__ = ("poly", "lo", "hi", "tag")

    def __init__(self, poly: QPoly, lo: Fraction, hi: Fraction, tag=None):
        self.poly = poly
        self.lo = lo
        self.hi = hi
        self.tag = tag

    def refine(self) -> None:
        """Halve the interval, keeping the half that contains the root."""
        mid = nonroot_point([self.poly], self.lo, self.hi)
        if self.poly(self.lo) * self.poly(mid) < 0:
            self.hi = mid
        else:
            self.lo = mid

    def refine_until(self, width: Fraction) -> None:
        while self.hi - self.lo > width:
            self.refine()

    def __repr__(self) -> str:
        return f"RootInterval({self.lo}, {self.hi}, tag={self.tag})"


def isolate_roots(f: QPoly, a, b, tag=None) -> list[RootInterval]:
    """Disjoint open isolating intervals, one per distinct real root of f in
    the open interval (a, b), sorted increasingly. Interval endpoints are
    never roots of f."""
    a, b = _as_fraction(a), _as_fraction(b)
    if f.is_zero:
        raise ValueError("cannot isolate roots of the zero polynomial")
    if b <= a:
        return []
    w = squarefree_part(_deflate_at(_deflate_at(f, a), b))
    if w.degree <= 0:
        return []
    chain = sturm_chain(w)

    def var(t):
        return sign_variations_at(chain, t)

    out: list[RootInterval] = []
    stack = [(a, b, var(a) - var(b))]
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append(RootInterval(w, lo, hi, tag=tag))
            continue
        mid = nonroot_point([w], lo, hi)
        nlo = var(lo) - var(mid)
        stack.append((lo, mid, nlo))
        stack.append((mid, hi, n - nlo))
    out.sort(key=lambda iv: iv.lo)
    return out


def separate_intervals(intervals: list[RootInterval]) -> list[RootInterval]:
    """Refine isolating intervals (for pairwise distinct roots, possibly of
    different polynomials) until they are pairwise disjoint with nonempty
    gaps, then return them sorted increasingly."""
    ivs = sorted(intervals, key=lambda iv: (iv.lo, iv.hi))
    changed = True
    guard = 0
    while changed:
        changed = False
        guard += 1
        if guard > 10_000:
            raise ArithmeticError("interval separation did not terminate")
        ivs.sort(key=lambda iv: (iv.lo, iv.hi))
        for i in range(len(ivs) - 1):
            cur, nxt = ivs[i], ivs[i + 1]
            if nxt.lo < cur.hi or nxt.lo == cur.hi:
                cur.refine()
                nxt.refine()
                changed = True
    return ivs
