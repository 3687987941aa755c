"""Acceptance criteria, one test each.  Every test records a PASS/FAIL line that is
printed in the pytest terminal summary (and by ``python tests/test_acceptance.py``)."""
import cmath
import math
import sys
import time
import warnings

import numpy as np
import pytest

from uvbeta import KernelParams, SurfacePoint, UVFunctions, solve_ray
from uvbeta.asymptotics import stokes_index, stokes_lines
from uvbeta.continuation import connection_residual
from uvbeta.gbeta import c_beta_0, g_beta, g_beta_rational
from uvbeta.kernel import beta_critical
from uvbeta.mittag import ml_series, ml_via_gbeta
from uvbeta.rhp import verify_rhp
from uvbeta.solver import picard_solve
from uvbeta.special import EULER_GAMMA, gamma, incomplete_gamma_upper

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script
    ACCEPTANCE_LINES = []


def record(n, ok, detail, elapsed, budget):
    in_time = elapsed <= budget
    status = "PASS" if ok and in_time else "FAIL"
    line = f"[{status}] criterion {n:>2}: {detail} ({elapsed:.3g} s, budget {budget:g} s)"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok and in_time


def c1():
    beta_critical.cache_clear()
    t = time.perf_counter()
    bc = beta_critical()
    el = time.perf_counter() - t
    err = abs(bc - 0.4158853544)
    return err < 1e-9, f"beta_c = {bc:.12f}, |err| = {err:.2g}", el, 1e-3


def c2():
    t = time.perf_counter()
    worst = 0.0
    for b in (0.5, 0.6, 0.75, 0.9):
        p = KernelParams(b)
        for tag in ("u", "v"):
            ny = solve_ray(p, tag)
            pc = picard_solve(p, tag, scheme=ny.scheme)
            worst = max(worst, float(np.max(np.abs(ny.values - pc.values))))
    return worst < 1e-8, f"sup |Nystrom - Picard| = {worst:.2e} (< 1e-8)", \
        time.perf_counter() - t, 10


def c3():
    t = time.perf_counter()
    worst = 0.0
    for b in (0.2, 0.35, 0.5, 0.6, 0.8):
        for tag in ("u", "v"):
            g = solve_ray(KernelParams(b), tag)
            worst = max(worst, g.residual / g.tol)
    return worst < 10, f"max residual / tol = {worst:.2e} (< 10)", time.perf_counter() - t, 30


def c4():
    t = time.perf_counter()
    worst = 0.0
    for b in (0.5, 0.6, 0.8):
        uv = UVFunctions(KernelParams(b))
        for tag in ("u", "v"):
            for r in (0.5, 1.0, 2.0, 5.0):
                worst = max(worst, connection_residual(uv.rays(tag), r))
    return worst < 1e-7, f"max connection residual = {worst:.2e} (< 1e-7)", \
        time.perf_counter() - t, 60


_UV06 = {}


def _uv06():
    if "uv" not in _UV06:
        _UV06["uv"] = UVFunctions(KernelParams(0.6))
    return _UV06["uv"]


def c5():
    t = time.perf_counter()
    p = KernelParams(0.6)
    uv = UVFunctions(p)
    reps = [verify_rhp(p, par, uv=uv) for par in ("even", "odd")]
    ok = all(r.passed for r in reps)
    jump = max(r.max_jump for r in reps)
    det = max(r.max_det for r in reps)
    far = max(max(r.far_field.values()) for r in reps)
    orig = max(max(r.origin.values()) for r in reps)
    return ok, (f"jump {jump:.2e} (< 1e-6), |det-1| {det:.2e} (< 1e-7), "
                f"far |s| ||L-I|| <= {far:.3g}, origin ||L|| <= {orig:.3g}, both parities"), \
        time.perf_counter() - t, 60


BILINEAR_POINTS = [(0.3, 0.4), (1.0, 1.2), (1.7, 0.8), (2.5, -0.5),
                   (5.0, 2.8), (0.8, -2.0), (10.0, math.pi), (3.0, 0.0)]


def c6():
    t = time.perf_counter()
    uv = _uv06()
    worst = max(abs(uv.bilinear(SurfacePoint(r, phi)) - 2) for r, phi in BILINEAR_POINTS)
    return worst < 1e-6, f"max |u v' + v u' - 2| = {worst:.2e} over 8 points (< 1e-6)", \
        time.perf_counter() - t, 60


def c7():
    t = time.perf_counter()
    e1 = max(abs(g_beta(x, 1.0) - math.exp(x) * incomplete_gamma_upper(0.0, x))
             for x in (0.5, 1.0, 2.0))
    probes = (0.01, 0.3, 1.0, 4.0, 25.0, 0.5j, 2 * cmath.exp(2.6j), 7 * cmath.exp(-1.3j))
    e2 = max(abs(g_beta_rational(z, b) - g_beta(z, b)) for b in (0.5, 1 / 3, 2 / 3) for z in probes)
    e3 = max(abs(c_beta_0(b) + EULER_GAMMA / b) for b in (0.3, 0.5, 0.7, 0.9))
    e4 = max(abs(1e4 * g_beta(1e4, b) - gamma(1 / b) / b) / (gamma(1 / b) / b)
             for b in (0.5, 0.7, 0.9))
    ok = e1 < 1e-9 and e2 < 1e-8 and e3 < 1e-10 and e4 < 1e-3
    return ok, (f"beta=1 {e1:.1e} (<1e-9), rational {e2:.1e} (<1e-8), c0 {e3:.1e} (<1e-10), "
                f"z G rel {e4:.1e} (<1e-3)"), time.perf_counter() - t, 30


def c8():
    t = time.perf_counter()
    worst = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for a in (1.2, 1.5, 1.8, 2.3, 2.7):
            for z in (0.5, 1.0, 2.0, 4 * cmath.exp(1j * math.pi / 6)):
                s = ml_series(a, z)
                worst = max(worst, abs(ml_via_gbeta(a, z).value - s) / (1 + abs(s)))
    return worst < 1e-6, f"max |Sigma + I - series| / (1 + |series|) = {worst:.2e} (< 1e-6)", \
        time.perf_counter() - t, 30


def c9():
    betas = [round(0.1 + 0.05 * i, 10) for i in range(17)]
    t = time.perf_counter()
    ok = True
    for b in betas:
        a = 1 / b
        s = stokes_lines(b)
        l = stokes_index(a)
        ok &= s.l == l and 4 * l - 3 < a <= 4 * l + 1 + 1e-12
        ok &= s.angles == (s.angles[0], -s.angles[0])
        ok &= abs(s.angles[0] - (math.pi / 2 * (3 - a) + 2 * (l - 1) * math.pi)) < 1e-14
    el = time.perf_counter() - t
    return ok, f"{len(betas)} values of beta, interval rule and angle formula", el, 1e-3


def c10():
    t = time.perf_counter()
    xs = np.linspace(0, 50, 201)
    hard, notes, u0 = True, [], []
    for b in (0.3, 0.5, 0.7):
        g = solve_ray(KernelParams(b), "u")
        u = g.interpolate(xs).real
        far = g.interpolate(np.array([1e4])).real[0]
        hard &= bool(np.all(u > 0) and np.all(np.isfinite(u)) and np.max(u) < 10)
        hard &= abs(far - 1) < 0.1 * abs(u[0] - 1)
        if np.any(np.diff(u) > 1e-12):
            notes.append(f"u_{b} not monotone")
        u0.append(u[0])
    if not all(a > b for a, b in zip(u0, u0[1:])):
        notes.append("u(0+) not decreasing in beta")
    for n in notes:
        warnings.warn(n)
    detail = (f"u(0+) = {', '.join(f'{v:.6f}' for v in u0)} for beta = 0.3, 0.5, 0.7; "
              f"positive, bounded, -> 1; monotone observations: "
              f"{'ok' if not notes else '; '.join(notes)} (warning only)")
    return hard, detail, time.perf_counter() - t, 20


CRITERIA = [c1, c2, c3, c4, c5, c6, c7, c8, c9, c10]


@pytest.mark.parametrize("n", range(1, 11))
def test_criterion(n):
    ok, detail, elapsed, budget = CRITERIA[n - 1]()
    assert record(n, ok, detail, elapsed, budget), detail


if __name__ == "__main__":
    results = []
    for i, fn in enumerate(CRITERIA, start=1):
        results.append(record(i, *fn()))
    sys.exit(0 if all(results) else 1)
