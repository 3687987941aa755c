"""Verification suites.  Each returns a SuiteResult whose rows are plain dicts."""
from __future__ import annotations

import cmath
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .continuation import SurfacePoint, UVFunctions, connection_residual
from .gbeta import c_beta_0, g_beta, g_beta_rational
from .kernel import KernelParams
from .mittag import ml_series, ml_via_gbeta
from .rhp import verify_rhp
from .solver import TAGS, picard_solve, solve_ray
from .special import EULER_GAMMA, gamma, incomplete_gamma_upper


@dataclass
class SuiteResult:
    name: str
    rows: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r["pass"] for r in self.rows)

    def add(self, pass_: bool, **row):
        self.rows.append({**row, "pass": bool(pass_)})

    def to_dict(self):
        return {"suite": self.name, "passed": self.passed, "elapsed": self.elapsed, "rows": self.rows}


def _grid_seq(betas, default):
    return tuple(default if betas is None else betas)


def suite_oracle(betas=None, tol=1e-10, limit=1e-8):
    """Nystrom against Picard on the same quadrature."""
    res = SuiteResult("oracle")
    for b in _grid_seq(betas, (0.5, 0.6, 0.75, 0.9)):
        p = KernelParams(b)
        for tag in TAGS:
            ny = solve_ray(p, tag, tol=tol)
            pc = picard_solve(p, tag, tol=tol, scheme=ny.scheme)
            d = float(np.max(np.abs(ny.values - pc.values)))
            res.add(d < limit, beta=b, tag=tag, sup_diff=d, iterations=pc.iterations, limit=limit)
    return res


def suite_residual(betas=None, factor=10.0):
    res = SuiteResult("residual")
    for b in _grid_seq(betas, (0.2, 0.35, 0.5, 0.6, 0.8)):
        p = KernelParams(b)
        for tag in TAGS:
            g = solve_ray(p, tag)
            res.add(g.residual < factor * g.tol, beta=b, tag=tag, residual=g.residual,
                    limit=factor * g.tol, nodes=len(g.scheme))
    return res


def suite_connection(betas=None, radii=(0.5, 1.0, 2.0, 5.0), limit=1e-7):
    res = SuiteResult("connection")
    for b in _grid_seq(betas, (0.5, 0.6, 0.8)):
        uv = UVFunctions(KernelParams(b))
        for tag in TAGS:
            for r in radii:
                e = connection_residual(uv.rays(tag), r)
                res.add(e < limit, beta=b, tag=tag, r=r, residual=e, limit=limit)
    return res


BILINEAR_SAMPLE = ((0.3, 0.4), (1.0, 1.2), (1.7, 0.8), (2.5, -0.5),
                   (5.0, 2.8), (0.8, -2.0), (10.0, math.pi), (3.0, 0.0))


def suite_rhp(betas=None, limit_bilinear=1e-6):
    res = SuiteResult("rhp")
    for b in _grid_seq(betas, (0.6,)):
        p = KernelParams(b)
        uv = UVFunctions(p)
        for parity in ("even", "odd"):
            rep = verify_rhp(p, parity, uv=uv)
            res.add(rep.passed, beta=b, parity=parity, max_jump=rep.max_jump, max_det=rep.max_det,
                    far_field=rep.far_field, origin=rep.origin, checks=rep.checks)
        worst = max(abs(uv.bilinear(SurfacePoint(r, phi)) - 2.0) for r, phi in BILINEAR_SAMPLE)
        res.add(worst < limit_bilinear, beta=b, check="bilinear", max_error=worst,
                limit=limit_bilinear)
    return res


def suite_gbeta_cross(betas=None):
    """Cross-checks of G_beta against identities and independent evaluations."""
    res = SuiteResult("gbeta-cross")
    e1 = incomplete_gamma_upper(0.0, 1.0)
    for x in (0.5, 1.0, 2.0):
        ref = math.exp(x) * incomplete_gamma_upper(0.0, x)
        d = abs(g_beta(x, 1.0) - ref)
        res.add(d < 1e-9, check="beta=1 vs e^z Gamma(0,z)", z=x, error=d)
    probes = (0.01, 0.3, 1.0, 4.0, 25.0, 0.5j, 2 * cmath.exp(2.6j), 7 * cmath.exp(-1.3j))
    for b in (0.5, 1 / 3, 2 / 3):
        d = max(abs(g_beta_rational(z, b) - g_beta(z, b)) for z in probes)
        res.add(d < 1e-8, check="rational reduction", beta=b, error=d)
    for b in _grid_seq(betas, (0.3, 0.5, 0.7, 0.9)):
        d = abs(c_beta_0(b) + EULER_GAMMA / b)
        res.add(d < 1e-10, check="c_(beta,0) = -gamma/beta", beta=b, error=d)
    for b in (0.5, 0.7, 0.9):
        lead = gamma(1.0 / b) / b
        z = 1e4
        rel = abs(z * g_beta(z, b) - lead) / lead
        res.add(rel < 1e-3, check="z G(z) -> Gamma(1/beta)/beta", beta=b, z=z, rel_error=rel)
    res.add(abs(e1 - 0.2193839344) < 1e-10, check="Gamma(0,1)", value=e1)
    return res


ML_ALPHAS = (1.2, 1.5, 1.8, 2.3, 2.7)
ML_POINTS = (0.5, 1.0, 2.0, 4 * cmath.exp(1j * math.pi / 6))


def suite_ml_identity(alphas=ML_ALPHAS, points=ML_POINTS, limit=1e-6):
    res = SuiteResult("ml-identity")
    for a in alphas:
        for z in points:
            s = ml_series(a, z)
            d = ml_via_gbeta(a, z)
            err = abs(d.value - s) / (1 + abs(s))
            res.add(err < limit, alpha=a, z=[z.real, z.imag] if isinstance(z, complex) else z,
                    case=d.case, retained=list(d.retained), scaled_error=err)
    return res


SUITES = {
    "oracle": suite_oracle,
    "residual": suite_residual,
    "connection": suite_connection,
    "rhp": suite_rhp,
    "gbeta-cross": suite_gbeta_cross,
    "ml-identity": lambda betas=None: suite_ml_identity(),
}


def run_suite(name: str, betas=None) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    t = time.perf_counter()
    res = SUITES[name](betas)
    res.elapsed = time.perf_counter() - t
    return res
