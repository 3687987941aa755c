"""The kernel K, the jump function eta_L and the contraction constants.

    K(t) = (1/pi) exp(-t**beta sin(pi beta/2)) sin(t**beta cos(pi beta/2))

K is entire in t**beta, so on the Riemann surface of log t it is evaluated from
an explicit (modulus, argument) pair rather than from a principal-branch power.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

BETA_MIN = 0.05
BETA_MAX = 0.95


class DomainError(ValueError):
    """An argument lies outside the domain of the requested function."""


@dataclass(frozen=True)
class KernelParams:
    """beta and the constants derived from it.

    ``zero_kernel`` replaces K by 0 everywhere; it exists so tests can check the
    degenerate problem (u = v = 1, L = I) through the full pipeline.
    """

    beta: float
    beta_range: tuple[float, float] = (BETA_MIN, BETA_MAX)
    zero_kernel: bool = False
    sin_half: float = field(init=False)
    cos_half: float = field(init=False)
    alpha: float = field(init=False)

    def __post_init__(self):
        lo, hi = self.beta_range
        b = float(self.beta)
        if not (0.0 < b < 1.0) or not (lo <= b <= hi):
            raise DomainError(f"beta out of range: {self.beta!r} not in [{lo}, {hi}]")
        object.__setattr__(self, "beta", b)
        object.__setattr__(self, "sin_half", math.sin(math.pi * b / 2))
        object.__setattr__(self, "cos_half", math.cos(math.pi * b / 2))
        object.__setattr__(self, "alpha", 1.0 / b)

    @property
    def contraction_bound(self) -> float:
        return contraction_bound(self)

    @property
    def origin_class(self) -> "OriginClass":
        return origin_class(self)


class OriginKind(enum.Enum):
    BOUNDED = "bounded"
    LOG = "log"
    POWER = "power"


@dataclass(frozen=True)
class OriginClass:
    """Scale eps_beta(s) of the admissible growth at s = 0."""

    kind: OriginKind
    exponent: float = 0.0

    def scale(self, s):
        s = np.abs(np.asarray(s, dtype=complex))
        if self.kind is OriginKind.BOUNDED:
            return np.ones_like(s, dtype=float)
        if self.kind is OriginKind.LOG:
            return np.abs(np.log(s))
        return s ** self.exponent


def origin_class(p: KernelParams) -> OriginClass:
    if p.beta > 0.5:
        return OriginClass(OriginKind.BOUNDED)
    if p.beta == 0.5:
        return OriginClass(OriginKind.LOG)
    return OriginClass(OriginKind.POWER, p.beta - 0.5)


def kernel_real(t, p: KernelParams):
    """K(t) for real t >= 0."""
    t = np.asarray(t, dtype=float)
    if np.any(t < 0) or np.any(np.isnan(t)):
        raise DomainError("kernel_real requires t >= 0")
    if p.zero_kernel:
        return np.zeros_like(t)
    tb = t ** p.beta
    return np.exp(-tb * p.sin_half) * np.sin(tb * p.cos_half) / np.pi


def kernel_complex(r, phi, p: KernelParams):
    """K at the surface point r e^{i phi}; phi is not reduced modulo 2 pi."""
    r = np.asarray(r, dtype=float)
    phi = np.asarray(phi, dtype=float)
    if np.any(r < 0):
        raise DomainError("kernel_complex requires r >= 0")
    if p.zero_kernel:
        return np.zeros(np.broadcast(r, phi).shape, dtype=complex)
    tb = r ** p.beta * np.exp(1j * p.beta * phi)
    # Two-exponential form (1/2 pi i)[exp(a tb) - exp(conj(a) tb)], a = i e^{i pi beta/2}.
    # For |tb| < 1 the exp*sin form avoids the cancellation between the two terms.
    a = complex(-p.sin_half, p.cos_half)
    with np.errstate(over="ignore", invalid="ignore"):
        two_exp = (np.exp(a * tb) - np.exp(a.conjugate() * tb)) / (2j * np.pi)
        small = np.exp(-p.sin_half * tb) * np.sin(p.cos_half * tb) / np.pi
    out = np.where(np.abs(tb) < 1.0, small, two_exp)
    return out[()] if out.ndim == 0 else out


def _parity(n) -> int:
    if isinstance(n, str):
        if n not in ("even", "odd"):
            raise ValueError(f"parity must be 'even' or 'odd', got {n!r}")
        return 0 if n == "even" else 1
    return int(n) % 2


def eta_L(s, n_parity, p: KernelParams):
    """Jump function 2 i (-1)^{n+1} exp(-|s|^b sin) sin(|s|^b cos) 1_{[0,inf)}(s)."""
    s = np.asarray(s, dtype=float)
    sign = -1.0 if _parity(n_parity) == 0 else 1.0
    k = kernel_real(np.where(s >= 0, s, 0.0), p)
    out = np.where(s >= 0, 2j * np.pi * sign * k, 0.0 + 0.0j)
    return out[()] if out.ndim == 0 else out


def contraction_bound(p: KernelParams | float) -> float:
    """Closed-form bound cot(pi beta/2)/(pi beta) on the sup-norm of T."""
    b = p.beta if isinstance(p, KernelParams) else float(p)
    return 1.0 / (math.tan(math.pi * b / 2) * math.pi * b)


@lru_cache(maxsize=None)
def beta_critical(xtol: float = 1e-12) -> float:
    """Root of cot(pi beta/2)/(pi beta) = 1; T is a sup-norm contraction above it."""
    lo, hi = 0.1, 0.9
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        if contraction_bound(mid) > 1.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
