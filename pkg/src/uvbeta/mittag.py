"""Mittag-Leffler E_alpha(z) = sum z^n / Gamma(alpha n + 1), directly and through G_beta.

For beta = 1/alpha the Hankel-contour representation splits E_alpha into

    Sigma(z) = beta sum_k exp(Z_k),   Z_k = z^beta e^{2 pi i k beta},  |arg Z_k| < pi,

plus a remainder I(z) that is a difference of two G_beta values on rotated
arguments (zero when alpha is an integer).
"""
from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

from .continuation import SurfacePoint
from .gbeta import g_beta_principal
from .special import lgamma

BOUNDARY_TOL = 1e-12


class BoundaryWarning(UserWarning):
    """Some Z_k lies exactly on arg = +/- pi; half weight and a PV value are used."""


def ml_series(alpha: float, z, max_terms: int = 100000) -> complex:
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    z = complex(z)
    if z == 0:
        return 1.0 + 0j
    log_z = cmath.log(z)
    total = 0j
    prev = math.inf
    for n in range(max_terms):
        log_t = n * log_z - lgamma(alpha * n + 1.0)
        if log_t.real > 700:
            raise OverflowError(
                f"series terms overflow for |z| = {abs(z):.3g}; use ml_via_gbeta")
        term = cmath.exp(log_t)
        total += term
        mag = abs(term)
        if mag < 1e-17 * abs(total) and mag <= prev:
            return total
        prev = mag
    raise ArithmeticError("Mittag-Leffler series did not converge")


@dataclass(frozen=True)
class MLDecomposition:
    alpha: float
    z: SurfacePoint
    case: str
    ks: tuple
    Z: tuple
    weights: tuple
    sigma: complex
    i_value: complex
    flagged: bool = False

    @property
    def beta(self) -> float:
        return 1.0 / self.alpha

    @property
    def retained(self) -> tuple:
        return tuple(k for k, w in zip(self.ks, self.weights) if w > 0)

    @property
    def value(self) -> complex:
        return self.sigma + self.i_value

    def rows(self):
        """(k, Z_k, weight, exp(Z_k)) for every scanned k."""
        return [(k, Zk, w, cmath.exp(Zk)) for k, Zk, w in zip(self.ks, self.Z, self.weights)]


def ml_case(alpha: float):
    """('i', None) for integer alpha, else ('ii' | 'iii', l)."""
    if abs(alpha - round(alpha)) < 1e-12:
        return "i", None
    if math.ceil(alpha) % 2 == 0:
        return "ii", math.ceil(alpha / 2)
    return "iii", math.floor(alpha / 2)


def rotation_angle(alpha: float) -> float:
    case, l = ml_case(alpha)
    if case == "ii":
        return (2 * l - 1 - alpha) * math.pi
    if case == "iii":
        return (2 * l + 1 - alpha) * math.pi
    # integer alpha: the same formulas, kept for the cancellation check
    a = round(alpha)
    return (-1.0 if a % 2 == 0 else 0.0) * math.pi


def retained_weights(alpha: float, phi: float, ks):
    """1 if |phi + 2 pi k| < pi alpha, 1/2 on the boundary, else 0."""
    out = []
    for k in ks:
        d = abs(phi + 2 * math.pi * k) - math.pi * alpha
        out.append(0.5 if abs(d) < BOUNDARY_TOL else (1.0 if d < 0 else 0.0))
    return out


def integral_term(alpha: float, z, tol: float = 1e-12) -> complex:
    """beta/(2 pi i) [G(z e^{i a}) - G(z e^{-i a})] with G reduced to the principal sheet."""
    z = SurfacePoint.of(z)
    b = 1.0 / alpha
    a = rotation_angle(alpha)
    gp = g_beta_principal(z.r, z.phi + a, b, tol)
    gm = g_beta_principal(z.r, z.phi - a, b, tol)
    return b / (2j * math.pi) * (gp - gm)


def ml_via_gbeta(alpha: float, z, tol: float = 1e-12) -> MLDecomposition:
    if not alpha > 1:
        raise ValueError("the decomposition needs alpha > 1 (beta < 1)")
    z = SurfacePoint.of(z)
    if abs(z.phi) > math.pi:
        raise ValueError("z must be given on the principal sheet")
    b = 1.0 / alpha
    lo = math.floor((-math.pi * alpha - z.phi) / (2 * math.pi)) - 1
    hi = math.ceil((math.pi * alpha - z.phi) / (2 * math.pi)) + 1
    ks = tuple(range(lo, hi + 1))
    Z = tuple(z.r ** b * cmath.exp(1j * b * (z.phi + 2 * math.pi * k)) for k in ks)
    weights = tuple(retained_weights(alpha, z.phi, ks))
    flagged = any(w == 0.5 for w in weights)
    if flagged:
        warnings.warn("Z_k on the negative axis: dented contour, half weight used", BoundaryWarning)
    sigma = b * sum(w * cmath.exp(Zk) for w, Zk in zip(weights, Z))
    case, _ = ml_case(alpha)
    i_value = 0j if case == "i" else integral_term(alpha, z, tol)
    return MLDecomposition(alpha, z, case, ks, Z, weights, sigma, i_value, flagged)
