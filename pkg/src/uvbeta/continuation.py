"""u_beta, v_beta, L_beta, U_beta on the Riemann surface of log z.

Inside |arg z| < pi + theta the rotated Stieltjes representation

    u(z) = 1 + int_0^inf K(t e^{i theta}) u(t e^{i theta}) dt / (t + e^{-i theta} z)

is evaluated from a Nystrom grid on the ray theta.  Beyond |arg z| = pi the
connection formulas

    u(z e^{-i pi}) - u(z e^{i pi}) =  2 pi i K(z) u(z)
    v(z e^{-i pi}) - v(z e^{i pi}) = -2 pi i K(z) v(z)

reduce the argument by 2 pi at a time.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .kernel import KernelParams, kernel_complex
from .solver import SolutionGrid, _sign, default_tol, solve_ray

THETA_MAX = math.pi / 2 - 0.1
RAY_ANGLES = (0.0, math.pi / 4, -math.pi / 4, THETA_MAX, -THETA_MAX)
# |arg z - theta| must stay this far below pi so the Cauchy pole is off the ray
POLE_MARGIN = math.pi / 4
BASE_SECTOR = math.pi


class OutOfSectorError(ValueError):
    pass


@dataclass(frozen=True)
class SurfacePoint:
    """z = r e^{i phi} with phi unrestricted."""

    r: float
    phi: float = 0.0

    def __post_init__(self):
        if not (self.r > 0) or not math.isfinite(self.r):
            raise ValueError(f"modulus must be positive and finite, got {self.r}")
        if not math.isfinite(self.phi):
            raise ValueError("argument must be finite")

    @classmethod
    def of(cls, z) -> "SurfacePoint":
        if isinstance(z, SurfacePoint):
            return z
        if isinstance(z, tuple):
            return cls(float(z[0]), float(z[1]))
        z = complex(z)
        return cls(abs(z), math.atan2(z.imag, z.real))

    def rotate(self, angle: float) -> "SurfacePoint":
        return SurfacePoint(self.r, self.phi + angle)

    @property
    def value(self) -> complex:
        return self.r * complex(math.cos(self.phi), math.sin(self.phi))


class RaySolutions:
    """Lazily filled cache of ray grids for one equation."""

    def __init__(self, params: KernelParams, tag: str, tol: float | None = None,
                 angles=RAY_ANGLES, **solve_kw):
        _sign(tag)
        self.params = params
        self.tag = tag
        self.tol = default_tol(params.beta) if tol is None else tol
        self.angles = tuple(sorted(angles, key=lambda a: (abs(a), -a)))
        self._solve_kw = solve_kw
        self._grids: dict[float, SolutionGrid] = {}
        self._lock = threading.Lock()

    def grid(self, theta: float = 0.0) -> SolutionGrid:
        with self._lock:
            g = self._grids.get(theta)
            if g is None:
                g = solve_ray(self.params, self.tag, theta, self.tol, **self._solve_kw)
                self._grids[theta] = g
            return g

    def sector_limit(self) -> float:
        return max(abs(a) for a in self.angles) + math.pi - POLE_MARGIN

    def choose_ray(self, phi: float) -> float:
        """Smallest |theta| whose representation covers phi with the pole margin."""
        for theta in self.angles:
            if abs(phi - theta) <= math.pi - POLE_MARGIN + 1e-12:
                return theta
        raise OutOfSectorError(
            f"arg z = {phi:.6g} outside the rotated-ray sector |arg z| <= "
            f"{self.sector_limit():.6g}; use eval_surface")

    def interpolate(self, x):
        return self.grid(0.0).interpolate(x)


def eval_sector(rs: RaySolutions, z, theta: float | None = None) -> complex:
    z = SurfacePoint.of(z)
    if theta is None:
        theta = rs.choose_ray(z.phi)
    elif abs(z.phi - theta) >= math.pi:
        raise OutOfSectorError(f"ray {theta} does not cover arg z = {z.phi}")
    g = rs.grid(theta)
    return complex(g.evaluate(z.r, z.phi - theta)[0])


def eval_surface(rs: RaySolutions, z) -> complex:
    """Value anywhere on the surface; connection formula beyond |arg z| = pi."""
    z = SurfacePoint.of(z)
    sign = _sign(rs.tag)
    p = rs.params

    @lru_cache(maxsize=None)
    def at(phi: float) -> complex:
        if abs(phi) <= BASE_SECTOR + 1e-12:
            return eval_sector(rs, SurfacePoint(z.r, phi))
        if phi > 0:
            k = complex(kernel_complex(z.r, phi - math.pi, p))
            return at(phi - 2 * math.pi) - sign * 2j * math.pi * k * at(phi - math.pi)
        k = complex(kernel_complex(z.r, phi + math.pi, p))
        return at(phi + 2 * math.pi) + sign * 2j * math.pi * k * at(phi + math.pi)

    return at(z.phi)


def recursion_depth(phi: float) -> int:
    """Longest chain of connection steps (each lowers |arg| by pi or 2 pi) from phi."""
    return max(0, math.ceil((abs(phi) - BASE_SECTOR) / math.pi - 1e-12))


def connection_residual(rs: RaySolutions, r: float) -> float:
    """|f(r e^{-i pi}) - f(r e^{i pi}) -/+ 2 pi i K(r) f(r)| from independent evaluations."""
    sign = _sign(rs.tag)
    left = eval_sector(rs, SurfacePoint(r, -math.pi)) - eval_sector(rs, SurfacePoint(r, math.pi))
    k = complex(kernel_complex(r, 0.0, rs.params))
    right = sign * 2j * math.pi * k * complex(rs.interpolate(r))
    return abs(left - right)


class UVFunctions:
    """Both solutions for one beta, with L_beta = (u + v)/2 and U_beta = (u - v)/2."""

    def __init__(self, params: KernelParams, tol: float | None = None, **solve_kw):
        self.params = params
        self.u_rays = RaySolutions(params, "u", tol, **solve_kw)
        self.v_rays = RaySolutions(params, "v", tol, **solve_kw)

    @property
    def tol(self) -> float:
        return self.u_rays.tol

    def rays(self, tag: str) -> RaySolutions:
        return self.u_rays if tag == "u" else self.v_rays

    def u(self, z) -> complex:
        return eval_surface(self.u_rays, z)

    def v(self, z) -> complex:
        return eval_surface(self.v_rays, z)

    def L_beta(self, z) -> complex:
        return 0.5 * (self.u(z) + self.v(z))

    def U_beta(self, z) -> complex:
        return 0.5 * (self.u(z) - self.v(z))

    def bilinear(self, z) -> complex:
        """u(z) v(z e^{-i pi}) + v(z) u(z e^{-i pi}); equals 2 when det L = 1."""
        z = SurfacePoint.of(z)
        w = z.rotate(-math.pi)
        return self.u(z) * self.v(w) + self.v(z) * self.u(w)


def L_beta(uv: UVFunctions, z) -> complex:
    return uv.L_beta(z)


def U_beta(uv: UVFunctions, z) -> complex:
    return uv.U_beta(z)
