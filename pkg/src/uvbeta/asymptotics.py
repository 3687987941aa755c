"""Expansions at infinity and the Stokes lines of u_beta, v_beta.

    u(z) ~ 1 + sum c_k / z^k,   c_k = (-1)^{k-1} int_0^inf K(t) t^{k-1} u(t) dt
    v(z) ~ 1 + sum d_k / z^k,   d_k = (-1)^k     int_0^inf K(t) t^{k-1} v(t) dt

valid for |arg z| < 3 pi / 2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _quadrature as q
from .continuation import SurfacePoint
from .kernel import KernelParams
from .solver import SolutionGrid, decay_rate
from .special import lgamma

U_SECTOR = (-1.5 * math.pi, 1.5 * math.pi)


class SectorError(ValueError):
    pass


class ResolutionError(ValueError):
    def __init__(self, message, guard):
        super().__init__(message)
        self.guard = guard


@dataclass(frozen=True)
class SeriesExpansion:
    """leading + sum_k coefficients[k-1] * z^{-k} (infinity) or z^{k} (origin)."""

    center: str
    coefficients: tuple
    sector: tuple[float, float]
    leading: complex = 0.0
    errors: tuple | None = None

    def __post_init__(self):
        if self.center not in ("infinity", "origin"):
            raise ValueError(f"center must be 'infinity' or 'origin', got {self.center!r}")

    def term(self, k: int, z: SurfacePoint) -> complex:
        s = -k if self.center == "infinity" else k
        return self.coefficients[k - 1] * z.r ** s * complex(math.cos(s * z.phi), math.sin(s * z.phi))

    def optimal_terms(self, z) -> int:
        """Number of terms before the smallest available term."""
        z = SurfacePoint.of(z)
        mags = [abs(self.term(k, z)) for k in range(1, len(self.coefficients) + 1)]
        return int(np.argmin(mags))


def eval_expansion(e: SeriesExpansion, z, terms: int | None = None):
    """Partial sum with ``terms`` terms and |first omitted term| as error estimate."""
    z = SurfacePoint.of(z)
    lo, hi = e.sector
    if not (lo < z.phi < hi):
        raise SectorError(
            f"arg z = {z.phi:.6g} outside the expansion sector ({lo:.6g}, {hi:.6g}); "
            "the Stokes phenomenon switches on exponentials beyond it")
    if terms is None:
        terms = e.optimal_terms(z)
    if terms > len(e.coefficients):
        raise ValueError(f"only {len(e.coefficients)} coefficients available")
    value = complex(e.leading) + sum(e.term(k, z) for k in range(1, terms + 1))
    err = abs(e.term(terms + 1, z)) if terms < len(e.coefficients) else float("nan")
    return value, err


def k_max(grid: SolutionGrid) -> int:
    """Largest k whose moment weight t^{k-1} e^{-t^b sin} peaks inside [0, T_max/2]."""
    p = grid.params
    sigma = decay_rate(p, 0.0)
    return 1 + int(math.floor(sigma * p.beta * (grid.scheme.t_max / 2) ** p.beta))


def _tail_edges(grid: SolutionGrid, k: int):
    p = grid.params
    sigma = decay_rate(p, 0.0)
    a = p.alpha
    w0 = grid.scheme.edges[-1]
    # relative size of the tail  e^{-sigma W} W^{a k - 1} / (Gamma(a k) sigma^{-a k})
    target = math.log(1e-17) + lgamma(a * k) - a * k * math.log(sigma)
    w = w0
    while -sigma * w + (a * k - 1) * math.log(w) > target:
        w *= 1.1
    if w == w0:
        return None
    n = max(1, math.ceil((w - w0) / 4.0))
    return np.linspace(w0, w, n + 1)


def _moment(grid: SolutionGrid, k: int, split: bool = False) -> complex:
    """int_0^inf K(t) t^{k-1} U(t) dt with the Nystrom extension past T_max."""
    s = grid.scheme
    a = s.exponent
    edges, values = s.edges, grid.values
    if split:
        edges, op = q.split_operator(edges, s.order)
        values = op @ values
    w, gw = q.panel_nodes(edges, s.order)
    w, gw = w.ravel(), gw.ravel()
    t = w ** a
    total = np.sum(gw * a * w ** (a - 1) * grid.kernel_on_ray(t) * t ** (k - 1) * values)
    tail = _tail_edges(grid, k)
    if tail is not None:
        tw, tgw = q.panel_nodes(tail, s.order)
        tw, tgw = tw.ravel(), tgw.ravel()
        tt = tw ** a
        total += np.sum(tgw * a * tw ** (a - 1) * grid.kernel_on_ray(tt) * tt ** (k - 1)
                        * grid.interpolate(tt))
    return complex(total)


def _coefficient(grid: SolutionGrid, k: int, tag: str, with_error: bool):
    if grid.tag != tag or grid.theta != 0.0:
        raise ValueError(f"need a theta = 0 grid for {tag!r}, got tag={grid.tag!r} theta={grid.theta}")
    if k < 1:
        raise ValueError("k must be a positive integer")
    guard = k_max(grid)
    if k > guard:
        raise ResolutionError(f"k = {k} exceeds the resolution guard k_max = {guard}", guard)
    sign = (-1.0) ** (k - 1) if tag == "u" else (-1.0) ** k
    m = _moment(grid, k)
    value = sign * (m.real if np.all(grid.values.imag == 0) else m)
    if not with_error:
        return value
    return value, abs(m - _moment(grid, k, split=True))


def coeff_c(k: int, grid: SolutionGrid, with_error: bool = False):
    return _coefficient(grid, k, "u", with_error)


def coeff_d(k: int, grid: SolutionGrid, with_error: bool = False):
    return _coefficient(grid, k, "v", with_error)


def expansion_at_infinity(grid: SolutionGrid, n_terms: int | None = None) -> SeriesExpansion:
    n = k_max(grid) if n_terms is None else n_terms
    fn = coeff_c if grid.tag == "u" else coeff_d
    pairs = [fn(k, grid, with_error=True) for k in range(1, n + 1)]
    return SeriesExpansion("infinity", tuple(c for c, _ in pairs), U_SECTOR, 1.0,
                           tuple(e for _, e in pairs))


def richardson_c1(grid: SolutionGrid, xs=(1e3, 3e3, 1e4)) -> float:
    """c_1 (or d_1) from x (f(x) - 1) = c1 + a/x + b/x^2 fitted through three points."""
    xs = np.asarray(xs, dtype=float)
    f = xs * (np.real(grid.interpolate(xs)) - 1.0)
    V = np.vander(1.0 / xs, 3, increasing=True)
    return float(np.linalg.solve(V, f)[0])


@dataclass(frozen=True)
class StokesLines:
    angles: tuple[float, float]
    l: int

    def to_dict(self):
        return {"angles": list(self.angles), "l": self.l}


def stokes_index(alpha: float) -> int:
    """The l >= 1 with alpha in (4l - 3, 4l + 1]."""
    a = alpha
    if abs(a - round(a)) < 1e-12 * max(1.0, a):
        a = float(round(a))
    return max(1, math.ceil((a - 1.0) / 4.0))


def stokes_lines(p: KernelParams | float) -> StokesLines:
    """arg z = +/- (pi/2 (3 - alpha) + 2 (l - 1) pi)."""
    beta = p.beta if isinstance(p, KernelParams) else float(p)
    if not (0.0 < beta < 1.0):
        raise ValueError(f"beta must lie in (0, 1), got {beta}")
    alpha = 1.0 / beta
    l = stokes_index(alpha)
    angle = math.pi / 2 * (3.0 - alpha) + 2 * (l - 1) * math.pi
    return StokesLines((angle, -angle), l)
