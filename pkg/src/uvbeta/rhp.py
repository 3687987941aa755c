"""The 2x2 matrix L(s) built from L_beta, U_beta and a numerical check of its RH problem.

For Im s > 0

    L(s) = [[ L_beta(s),           (-1)^n U_beta(s e^{-i pi}) ],
            [ (-1)^n U_beta(s),    L_beta(s e^{-i pi})        ]]

and for Im s < 0 the same with e^{+i pi}.  The jump on the real line is
v_L(s) = [[1, -eta_L(s)], [eta_L(-s), 1]]; L -> I at infinity and L stays
bounded (up to the origin class of beta) at s = 0.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .continuation import SurfacePoint, UVFunctions
from .kernel import KernelParams, _parity, eta_L

JUMP_TOL = 1e-6
DET_TOL = 1e-7


class BoundaryError(ValueError):
    pass


def jump_matrix(x: float, n_parity, p: KernelParams) -> np.ndarray:
    if x == 0:
        raise BoundaryError("the jump is not defined at s = 0")
    return np.array([[1.0, -eta_L(x, n_parity, p)],
                     [eta_L(-x, n_parity, p), 1.0]], dtype=complex)


class Parametrix:
    def __init__(self, params: KernelParams, n_parity="even", uv: UVFunctions | None = None,
                 tol: float | None = None):
        self.params = params
        self.parity = _parity(n_parity)
        self.uv = UVFunctions(params, tol) if uv is None else uv

    @property
    def sign(self) -> float:
        return -1.0 if self.parity else 1.0

    def _matrix(self, r, phi_main, phi_other) -> np.ndarray:
        uv, sg = self.uv, self.sign
        a, b = SurfacePoint(r, phi_main), SurfacePoint(r, phi_other)
        return np.array([[uv.L_beta(a), sg * uv.U_beta(b)],
                         [sg * uv.U_beta(a), uv.L_beta(b)]], dtype=complex)

    def __call__(self, s) -> np.ndarray:
        s = SurfacePoint.of(s)
        if not (0 < abs(s.phi) < math.pi):
            raise BoundaryError(
                f"arg s = {s.phi:.6g} is on the real axis or outside (-pi, pi); use boundary_values")
        shift = -math.pi if s.phi > 0 else math.pi
        return self._matrix(s.r, s.phi, s.phi + shift)

    def boundary_values(self, x: float, side: str) -> np.ndarray:
        """Limit of L onto the real point x from above ('+') or below ('-')."""
        if side not in ("+", "-"):
            raise ValueError("side must be '+' or '-'")
        if x == 0:
            raise BoundaryError("no boundary value at s = 0")
        r = abs(x)
        if x > 0:
            return self._matrix(r, 0.0, -math.pi if side == "+" else math.pi)
        return self._matrix(r, math.pi if side == "+" else -math.pi, 0.0)

    def jump_residual(self, x: float) -> float:
        lp = self.boundary_values(x, "+")
        lm = self.boundary_values(x, "-")
        return float(np.max(np.abs(lp - lm @ jump_matrix(x, self.parity, self.params))))

    def det_error(self, s) -> float:
        return abs(np.linalg.det(self(s)) - 1.0)


def assemble_L(params: KernelParams, n_parity, s, uv: UVFunctions | None = None) -> np.ndarray:
    return Parametrix(params, n_parity, uv)(s)


def boundary_values(params: KernelParams, n_parity, x: float, side: str,
                    uv: UVFunctions | None = None) -> np.ndarray:
    return Parametrix(params, n_parity, uv).boundary_values(x, side)


def default_axis_points(n: int = 25) -> np.ndarray:
    xs = np.logspace(-3, 3, n)
    return np.concatenate([-xs[::-1], xs])


def ring_angles(n: int = 16) -> np.ndarray:
    return -math.pi + (np.arange(n) + 0.5) * 2 * math.pi / n


DET_SAMPLES = tuple((r, phi) for r in (0.1, 1.0, 1.7, 10.0) for phi in (0.3, 0.8, 1.6, 2.5, -0.4, -2.2))


@dataclass
class RHPReport:
    beta: float
    parity: str
    max_jump: float
    max_det: float
    far_field: dict
    origin: dict
    jump_tol: float
    det_tol: float
    checks: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_dict(self):
        d = asdict(self)
        d["passed"] = self.passed
        return d

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def verify_rhp(params: KernelParams, n_parity="even", *, uv: UVFunctions | None = None,
               xs=None, rings=(1e2, 1e4), n_angles: int = 16, origin=(1e-2, 1e-3, 1e-4),
               jump_tol: float = JUMP_TOL, det_tol: float = DET_TOL) -> RHPReport:
    par = Parametrix(params, n_parity, uv)
    xs = default_axis_points() if xs is None else np.asarray(xs, dtype=float)
    max_jump = max(par.jump_residual(float(x)) for x in xs)

    angles = ring_angles(n_angles)
    far, det_pts = {}, []
    for R in rings:
        worst = 0.0
        for a in angles:
            m = par(SurfacePoint(R, float(a)))
            worst = max(worst, float(np.max(np.abs(m - np.eye(2)))) * R)
            det_pts.append(abs(np.linalg.det(m) - 1.0))
        far[repr(float(R))] = worst
    det_pts += [par.det_error(SurfacePoint(r, phi)) for r, phi in DET_SAMPLES]
    for x in xs:
        for side in "+-":
            det_pts.append(abs(np.linalg.det(par.boundary_values(float(x), side)) - 1.0))
    max_det = float(max(det_pts))

    cls = params.origin_class
    scaled = {}
    for x in origin:
        norms = [np.max(np.abs(par.boundary_values(sx, side))) for sx in (x, -x) for side in "+-"]
        scaled[repr(float(x))] = float(max(norms) / max(1.0, float(cls.scale(x))))
    o = list(scaled.values())
    f = list(far.values())
    checks = {
        "jump": bool(max_jump < jump_tol),
        "det": bool(max_det < det_tol),
        "far_field": all(map(math.isfinite, f)) and f[-1] <= 2.0 * f[0] + 1e-6,
        "origin": all(map(math.isfinite, o)) and o[-1] <= 2.0 * o[0] + 1e-6,
    }
    return RHPReport(params.beta, "odd" if par.parity else "even", max_jump, max_det,
                     far, scaled, jump_tol, det_tol, checks)
