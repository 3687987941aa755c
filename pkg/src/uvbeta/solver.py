"""Nystrom solution of u = 1 + T u and v = 1 - T v on a ray arg t = theta.

On the ray t = s e^{i theta} the rotated equation reads

    U(s) = 1 +/- int_0^inf K(t e^{i theta}) U(t) dt / (t + s),

with U(s) = u(s e^{i theta}); theta = 0 is the original equation on [0, inf).
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from . import _quadrature as q
from .kernel import KernelParams, beta_critical, contraction_bound, kernel_complex, kernel_real

TAGS = ("u", "v")


class QuadratureError(RuntimeError):
    """The requested tolerance cannot be reached within the node budget."""

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class SolverError(RuntimeError):
    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition


class PreconditionError(ValueError):
    pass


def default_tol(beta: float) -> float:
    return 1e-10 if beta >= 0.3 else 1e-8


def _sign(tag: str) -> float:
    if tag not in TAGS:
        raise ValueError(f"tag must be one of {TAGS}, got {tag!r}")
    return 1.0 if tag == "u" else -1.0


def decay_rate(p: KernelParams, theta: float = 0.0) -> float:
    """Exponential rate of K(t e^{i theta}) in the variable t**beta."""
    if abs(theta) >= math.pi / 2:
        raise ValueError(f"ray angle {theta} outside (-pi/2, pi/2)")
    b = p.beta
    return min(math.sin(b * (math.pi / 2 - theta)), math.sin(b * (math.pi / 2 + theta)))


def truncation_point(p: KernelParams, delta: float, theta: float = 0.0) -> float:
    """Smallest T with exp(-T**beta * rate) = delta."""
    return (math.log(1.0 / delta) / decay_rate(p, theta)) ** p.alpha


@dataclass(frozen=True, eq=False)
class QuadratureScheme:
    """Composite GL rule for int_0^T f(t) dt in the variable w = t**(1/exponent)."""

    edges: np.ndarray
    exponent: float
    t_max: float
    order: int = q.ORDER
    nodes: np.ndarray = field(init=False, repr=False)
    weights: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        edges = np.asarray(self.edges, dtype=float)
        object.__setattr__(self, "edges", edges)
        w, gw = q.panel_nodes(edges, self.order)
        w = w.ravel()
        a = self.exponent
        object.__setattr__(self, "nodes", w ** a)
        object.__setattr__(self, "weights", gw.ravel() * a * w ** (a - 1))

    @property
    def w_nodes(self):
        return self.nodes ** (1.0 / self.exponent)

    @property
    def n_panels(self) -> int:
        return len(self.edges) - 1

    def __len__(self):
        return self.nodes.size

    def integrate(self, f):
        return np.sum(self.weights * f(self.nodes))


def build_quadrature(p: KernelParams, tol: float, theta: float = 0.0, *,
                     ratio: float | None = None, h_max: float = 4.0, w_min: float = 1e-6,
                     refine: int = 0, max_nodes: int = 12000) -> QuadratureScheme:
    """Panel rule adapted to K on the ray theta, truncated where exp(-T**b rate) = tol.

    ``refine`` bisects every panel that many times.
    """
    if not (0.0 < tol < 1e-2):
        raise ValueError(f"tol must lie in (0, 1e-2), got {tol}")
    w_end = truncation_point(p, tol, theta) ** p.beta
    if ratio is None:
        # pole of 1/(t + s) sits at angle beta*pi in the w-plane; keep it a
        # panel-width away when beta is small
        ratio = min(2.0, 1.0 + 2.0 * math.sin(math.pi * p.beta))
    edges = q.graded_edges(w_end, w_min=w_min, ratio=ratio, h_max=h_max)
    for _ in range(refine):
        edges = q.split_edges(edges)
    n = (len(edges) - 1) * q.ORDER
    if n > max_nodes:
        raise QuadratureError(
            f"{n} nodes needed for tol={tol:g} on ray {theta:g}; budget is {max_nodes}",
            achieved=None)
    return QuadratureScheme(edges, p.alpha, w_end ** p.alpha)


@dataclass(frozen=True, eq=False)
class SolutionGrid:
    """Nodal values of U on one ray together with the rule that produced them."""

    params: KernelParams
    theta: float
    tag: str
    scheme: QuadratureScheme
    values: np.ndarray
    tol: float
    residual: float = float("nan")
    method: str = "nystrom"
    iterations: int | None = None

    @property
    def sign(self) -> float:
        return _sign(self.tag)

    @property
    def nodes(self):
        return self.scheme.nodes

    def kernel_on_ray(self, t):
        if self.theta == 0.0:
            return kernel_real(t, self.params)
        return kernel_complex(t, self.theta, self.params)

    def stieltjes_matrix(self, x_abs, x_arg=0.0, edges=None):
        """Rows M with  int K(t e^{i theta}) U(t) dt/(t + x) ~= M @ U.

        x = x_abs * exp(i x_arg) is measured relative to the ray; with a
        different ``edges`` (e.g. a bisected mesh) the rows act on values at
        that mesh's nodes.
        """
        x_abs = np.atleast_1d(np.asarray(x_abs, dtype=float))
        x_arg = np.broadcast_to(np.asarray(x_arg, dtype=float), x_abs.shape)
        X = x_abs * np.exp(1j * x_arg)
        if np.all(x_arg == 0.0):
            X = X.real
        a = self.scheme.exponent
        edges = self.scheme.edges if edges is None else edges

        def factor(w, idx):
            t = w ** a
            return self.kernel_on_ray(t) * a * w ** (a - 1) / (t + X[idx][:, None])

        poles = q.cauchy_poles(x_abs, x_arg, self.params.beta)
        return q.weight_rows(edges, factor, poles)

    def interpolate(self, x):
        """Nystrom interpolant 1 +/- sum_k c_k(x) U_k at ray distance x >= 0."""
        x = np.asarray(x, dtype=float)
        if np.any(x < 0):
            raise ValueError("interpolate requires x >= 0")
        out = 1.0 + self.sign * (self.stieltjes_matrix(x.ravel()) @ self.values)
        out = out.reshape(x.shape)
        return out[()] if out.ndim == 0 else out

    def evaluate(self, r, psi):
        """Rotated Stieltjes representation at e^{i theta} * r e^{i psi}, |psi| < pi."""
        r = np.atleast_1d(np.asarray(r, dtype=float))
        psi = np.broadcast_to(np.asarray(psi, dtype=float), r.shape)
        if np.any(np.abs(psi) >= math.pi):
            raise ValueError("relative argument must lie in (-pi, pi)")
        return 1.0 + self.sign * (self.stieltjes_matrix(r, psi) @ self.values)

    def polynomial(self, x):
        """Panel-wise polynomial interpolant of the nodal values (inside the mesh)."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        w = x ** (1.0 / self.scheme.exponent)
        k, ref = q.panel_locate(self.scheme.edges, w)
        vals = self.values.reshape(self.scheme.n_panels, self.scheme.order)
        out = np.empty(x.shape, dtype=complex)
        for kk in np.unique(k):
            sel = k == kk
            out[sel] = q.interp_matrix(ref[sel], self.scheme.order) @ vals[kk]
        return out

    def value_at_origin(self):
        return self.interpolate(0.0)

    def check_points(self):
        """Panel midpoints and quarter points, all off the collocation nodes."""
        e = self.scheme.edges
        fr = np.array([0.25, 0.5, 0.75])
        w = (e[:-1, None] + fr[None, :] * (e[1:] - e[:-1])[:, None]).ravel()
        return w ** self.scheme.exponent

    def residual_at(self, x):
        """|P(x) - 1 -/+ int K P/(t + x)| with P the panel interpolant.

        The integral uses the bisected mesh and continues past T_max with the
        Nystrom extension of U, so it is independent of the collocation rule.
        """
        x = np.atleast_1d(np.asarray(x, dtype=float))
        edges2, op = q.split_operator(self.scheme.edges, self.scheme.order)
        integral = self.stieltjes_matrix(x, 0.0, edges=edges2) @ (op @ self.values)
        w_end = self.scheme.edges[-1]
        tail_edges = np.linspace(w_end, 1.5 * w_end, max(2, math.ceil(0.5 * w_end / 4.0)) + 1)
        tw, tgw = q.panel_nodes(tail_edges, self.scheme.order)
        tw, tgw = tw.ravel(), tgw.ravel()
        a = self.scheme.exponent
        tt = tw ** a
        tail_u = self.interpolate(tt)
        kern = self.kernel_on_ray(tt) * a * tw ** (a - 1) * tgw * tail_u
        integral = integral + (kern[None, :] / (tt[None, :] + x[:, None])).sum(axis=1)
        return np.abs(self.polynomial(x) - 1.0 - self.sign * integral)

    # serialization -------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "beta": self.params.beta,
            "beta_range": list(self.params.beta_range),
            "zero_kernel": self.params.zero_kernel,
            "theta": self.theta,
            "tag": self.tag,
            "method": self.method,
            "iterations": self.iterations,
            "nodes": self.scheme.nodes.tolist(),
            "weights": self.scheme.weights.tolist(),
            "edges": self.scheme.edges.tolist(),
            "order": self.scheme.order,
            "exponent": self.scheme.exponent,
            "t_max": self.scheme.t_max,
            "values_re": self.values.real.tolist(),
            "values_im": self.values.imag.tolist(),
            "residual": self.residual,
            "tolerances": {"tol": self.tol, "truncation": self.tol},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    @classmethod
    def from_dict(cls, d: dict) -> "SolutionGrid":
        p = KernelParams(d["beta"], tuple(d["beta_range"]), d.get("zero_kernel", False))
        scheme = QuadratureScheme(np.array(d["edges"]), d["exponent"], d["t_max"], d["order"])
        # stored nodes/weights are authoritative
        object.__setattr__(scheme, "nodes", np.array(d["nodes"], dtype=float))
        object.__setattr__(scheme, "weights", np.array(d["weights"], dtype=float))
        values = np.array(d["values_re"], dtype=float) + 1j * np.array(d["values_im"], dtype=float)
        return cls(p, d["theta"], d["tag"], scheme, values, d["tolerances"]["tol"],
                   d["residual"], d.get("method", "nystrom"), d.get("iterations"))

    @classmethod
    def from_json(cls, text: str) -> "SolutionGrid":
        return cls.from_dict(json.loads(text))


def _finish(grid: SolutionGrid) -> SolutionGrid:
    res = float(np.max(grid.residual_at(grid.check_points())))
    object.__setattr__(grid, "residual", res)
    return grid


def nystrom_matrix(p: KernelParams, scheme: QuadratureScheme, theta: float, tag: str):
    """Discretized operator A with (A U)_j ~= int K(t e^{i theta}) U(t) dt / (t + t_j)."""
    probe = SolutionGrid(p, theta, tag, scheme, np.zeros(len(scheme), complex), 0.0)
    return probe.stieltjes_matrix(scheme.nodes)


def solve_ray(p: KernelParams, tag: str = "u", theta: float = 0.0, tol: float | None = None,
              *, scheme: QuadratureScheme | None = None, **scheme_kw) -> SolutionGrid:
    """Dense LU solve of (I -/+ A) U = 1 on the ray theta."""
    sign = _sign(tag)
    tol = default_tol(p.beta) if tol is None else tol
    if abs(theta) >= math.pi / 2:
        raise ValueError(f"ray angle {theta} outside (-pi/2, pi/2)")
    scheme = build_quadrature(p, tol, theta, **scheme_kw) if scheme is None else scheme
    A = nystrom_matrix(p, scheme, theta, tag)
    n = len(scheme)
    system = np.eye(n) - sign * A
    if theta == 0.0:
        system = system.real
    lu, piv = scipy.linalg.lu_factor(system, check_finite=True)
    values = scipy.linalg.lu_solve((lu, piv), np.ones(n)).astype(complex)
    if not np.all(np.isfinite(values)) or np.min(np.abs(np.diag(lu))) == 0.0:
        raise SolverError("Nystrom system is singular", condition=np.linalg.cond(system))
    grid = SolutionGrid(p, float(theta), tag, scheme, values, tol)
    return _finish(grid)


def picard_bound(p: KernelParams, tol: float) -> int:
    """Iteration budget ln(tol)/ln(M) + 1 for the contraction bound M."""
    return math.ceil(math.log(tol) / math.log(contraction_bound(p))) + 1


def picard_solve(p: KernelParams, tag: str = "u", theta: float = 0.0, tol: float | None = None,
                 *, scheme: QuadratureScheme | None = None, **scheme_kw) -> SolutionGrid:
    """Successive approximation U <- 1 +/- A U from U = 1; needs beta > beta_c."""
    bc = beta_critical()
    if p.beta <= bc:
        raise PreconditionError(
            f"Picard iteration needs beta > beta_c = {bc:.10f} (contraction bound "
            f"{contraction_bound(p):.4f} >= 1), got beta = {p.beta}")
    sign = _sign(tag)
    tol = default_tol(p.beta) if tol is None else tol
    scheme = build_quadrature(p, tol, theta, **scheme_kw) if scheme is None else scheme
    A = nystrom_matrix(p, scheme, theta, tag)
    if theta == 0.0:
        A = A.real
    budget = picard_bound(p, tol)
    u = np.ones(len(scheme))
    for it in range(1, budget + 1):
        new = 1.0 + sign * (A @ u)
        step = np.max(np.abs(new - u))
        u = new
        if step <= tol * (1.0 - contraction_bound(p)):
            break
    else:
        raise SolverError(f"Picard iteration did not converge in {budget} steps")
    grid = SolutionGrid(p, float(theta), tag, scheme, u.astype(complex), tol,
                        method="picard", iterations=it)
    return _finish(grid)
