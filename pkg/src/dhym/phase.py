"""Pointwise Lagrangian phase of a Hermitian pair.

Given Hermitian matrices (alpha, omega) with omega positive definite, the
relative eigenvalues lambda_i solve det(alpha - lambda*omega) = 0. The
Lagrangian phase is Q = sum_i arccot(lambda_i) with arccot valued in
(0, pi), so Q ranges over (0, n*pi) and is strictly decreasing in every
eigenvalue. The product formula

    det(alpha + i*omega) / det(omega)
        = sqrt(prod (1 + lambda_i^2)) * exp(i * Q)

ties the phase to an independent determinant evaluation and is re-checked
on every call as a soundness guard.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_triangular

from .errors import SoundnessError

HERMITIAN_TOL = 1e-14
MIN_OMEGA_EIG = 1e-10
PRODUCT_TOL = 1e-10


def arccot(x: float) -> float:
    """The (0, pi) branch: continuous and strictly decreasing on the line."""
    return math.atan2(1.0, x)


@dataclass(frozen=True)
class HermitianPair:
    """Pointwise pair (alpha, omega), omega positive definite."""

    alpha: np.ndarray
    omega: np.ndarray

    def __init__(self, alpha, omega):
        alpha = np.asarray(alpha, dtype=complex)
        omega = np.asarray(omega, dtype=complex)
        if alpha.shape != omega.shape or alpha.ndim != 2 or alpha.shape[0] != alpha.shape[1]:
            raise ValueError("alpha and omega must be square matrices of equal size")
        scale_a = max(np.abs(alpha).max(), 1.0)
        scale_o = max(np.abs(omega).max(), 1.0)
        if np.abs(alpha - alpha.conj().T).max() > HERMITIAN_TOL * scale_a:
            raise ValueError("alpha is not Hermitian")
        if np.abs(omega - omega.conj().T).max() > HERMITIAN_TOL * scale_o:
            raise ValueError("omega is not Hermitian")
        omega = (omega + omega.conj().T) / 2
        alpha = (alpha + alpha.conj().T) / 2
        if np.linalg.eigvalsh(omega).min() <= MIN_OMEGA_EIG:
            raise ValueError(f"omega is not positive definite above {MIN_OMEGA_EIG}")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "omega", omega)

    @property
    def n(self) -> int:
        return self.alpha.shape[0]


@dataclass(frozen=True)
class PhasePoint:
    """Sorted relative eigenvalues with their phase and modulus."""

    lambdas: tuple[float, ...]
    q: float
    modulus: float


def generalized_eigenvalues(pair: HermitianPair) -> np.ndarray:
    """Eigenvalues of the pencil det(alpha - lambda*omega) = 0, sorted.

    Uses congruence reduction: with omega = L L*, the pencil eigenvalues
    are the ordinary eigenvalues of the Hermitian matrix L^-1 alpha L^-*.
    """
    L = np.linalg.cholesky(pair.omega)
    tmp = solve_triangular(L, pair.alpha, lower=True)
    reduced = solve_triangular(L, tmp.conj().T, lower=True).conj().T
    reduced = (reduced + reduced.conj().T) / 2
    return np.sort(np.linalg.eigvalsh(reduced))


def lagrangian_phase(pair: HermitianPair) -> PhasePoint:
    """Phase Q = sum arccot(lambda_i) in (0, n*pi) and the paired modulus."""
    lams = generalized_eigenvalues(pair)
    q = float(sum(arccot(l) for l in lams))
    modulus = float(math.sqrt(math.prod(1.0 + l * l for l in lams)))
    return PhasePoint(lambdas=tuple(float(l) for l in lams), q=q, modulus=modulus)


def complex_quotient(pair: HermitianPair) -> complex:
    """det(alpha + i*omega) / det(omega), checked against the product
    formula modulus*exp(i*q) to relative 1e-10."""
    quotient = complex(np.linalg.det(pair.alpha + 1j * pair.omega) / np.linalg.det(pair.omega))
    point = lagrangian_phase(pair)
    predicted = point.modulus * complex(math.cos(point.q), math.sin(point.q))
    if abs(quotient - predicted) > PRODUCT_TOL * max(abs(quotient), 1.0):
        raise SoundnessError(
            f"product formula violated: determinant quotient {quotient}, "
            f"eigenvalue prediction {predicted}"
        )
    return quotient


def classify_branch(q: float, n: int) -> str:
    """Phase branch label: hypercritical on (0, pi/2), supercritical on
    (0, pi) (the hypercritical range reports as hypercritical), else
    neither."""
    if not 0 < q < n * math.pi:
        raise ValueError(f"phase {q} outside (0, {n}*pi)")
    if q < math.pi / 2:
        return "hypercritical"
    if q < math.pi:
        return "supercritical"
    return "neither"


def phase_sum(lambdas, shift: float) -> float:
    return sum(arccot(l + shift) for l in lambdas)


def solve_scalar_shift(lambdas, target: float, tol: float = 1e-12) -> float:
    """The unique s with sum_i arccot(lambda_i + s) = target.

    The map is a strictly decreasing bijection onto (0, n*pi); the bracket
    is grown geometrically and then bisected to the requested tolerance.
    """
    lambdas = [float(l) for l in lambdas]
    n = len(lambdas)
    if not 0 < target < n * math.pi:
        raise ValueError(f"target {target} outside (0, {n}*pi)")
    lo, hi = -1.0, 1.0
    while phase_sum(lambdas, lo) < target:
        lo *= 2
        if lo < -1e18:
            raise ArithmeticError("bracket growth failed")
    while phase_sum(lambdas, hi) > target:
        hi *= 2
        if hi > 1e18:
            raise ArithmeticError("bracket growth failed")
    while hi - lo > tol * max(1.0, abs(lo), abs(hi)):
        mid = (lo + hi) / 2
        if phase_sum(lambdas, mid) > target:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2
