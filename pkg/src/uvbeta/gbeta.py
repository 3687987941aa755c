"""G_beta(z) = int_0^inf exp(-t^beta) / (t + z) dt and its expansions.

On |arg z| <= pi the integral is computed on a rotated ray.  Further out the
continuation picks up one residue 2 pi i exp(-(-z)^beta) per crossing of the
negative axis.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _quadrature as q
from .continuation import SurfacePoint
from .kernel import KernelParams
from .special import incomplete_gamma_upper, lgamma

SIN_GUARD = 1e-6
SMALL_Z = 0.5


class NearRationalError(ValueError):
    pass


@dataclass(frozen=True)
class GbetaResult:
    z: SurfacePoint
    value: complex
    method: str
    err_est: float
    flagged: bool = False

    def to_dict(self):
        return {
            "z": {"re": self.z.value.real, "im": self.z.value.imag, "arg_sheet": self.z.phi},
            "value": {"re": self.value.real, "im": self.value.imag},
            "method": self.method,
            "err_est": self.err_est,
            "flagged": self.flagged,
        }


def _beta(beta) -> float:
    b = beta.beta if isinstance(beta, KernelParams) else float(beta)
    if not (0.0 < b <= 1.0):
        raise ValueError(f"beta must lie in (0, 1], got {b}")
    return b


def _panel_sum(f, edges, poles, order=q.ORDER):
    """sum of GL rules over the panels, bisecting those that sit near a pole."""
    x, wq, _ = q.gauss_legendre(order)
    rho = q.bernstein_rho(poles[None, :], edges[:-1], edges[1:]) if poles.size else \
        np.full(len(edges) - 1, np.inf)
    stack = [(edges[k], edges[k + 1], 0) for k in range(len(edges) - 1) if rho[k] < q.RHO_MIN]
    good = [(edges[k], edges[k + 1]) for k in range(len(edges) - 1) if rho[k] >= q.RHO_MIN]
    while stack:
        a, b, depth = stack.pop()
        if depth < q.MAX_DEPTH and q.bernstein_rho(poles[None, :], a, b)[0] < q.RHO_MIN:
            m = 0.5 * (a + b)
            stack += [(a, m, depth + 1), (m, b, depth + 1)]
        else:
            good.append((a, b))
    ab = np.array(good)
    a, b = ab[:, :1], ab[:, 1:]
    pts = a + 0.5 * (x[None, :] + 1.0) * (b - a)
    return np.sum(0.5 * wq[None, :] * (b - a) * f(pts))


def _rotated(r: float, phi: float, beta: float, tol: float):
    """Quadrature on the ray arg t = theta; valid for |phi - theta| < pi."""
    theta = math.copysign(min(abs(phi) / 2, math.pi / (4 * beta)), phi)
    g = min(beta, 1.0)
    rot = complex(math.cos(beta * theta), math.sin(beta * theta))
    eith = complex(math.cos(theta), math.sin(theta))
    z = r * complex(math.cos(phi), math.sin(phi))
    decay = math.cos(beta * theta)
    w_end = (math.log(1.0 / tol) + 5.0) / decay
    if beta > 1.0:
        w_end = w_end ** (1.0 / beta)
    # the first panel sees the endpoint singularity w^{1/g - 1}; keep its share below tol
    w_min = min(1e-6, 1e-3 * r ** g, (tol * r) ** g)

    def f(w):
        s = w ** (1.0 / g)
        return np.exp(-(s ** beta) * rot) * eith * s / (g * w) / (s * eith + z)

    poles = q.cauchy_poles(r, phi - theta, g)[0]
    poles = poles[~np.isnan(poles)]
    edges = q.graded_edges(w_end, w_min=w_min, ratio=2.0, h_max=2.0)
    coarse = _panel_sum(f, edges, poles)
    fine = _panel_sum(f, q.split_edges(edges), poles)
    return complex(fine), abs(fine - coarse)


def _residue(r: float, phi: float, beta: float) -> complex:
    """exp(-(r e^{i phi})^beta) with the power taken on the surface."""
    return complex(np.exp(-(r ** beta) * np.exp(1j * beta * phi)))


def g_beta_eval(z, beta, tol: float = 1e-12) -> GbetaResult:
    b = _beta(beta)
    z = SurfacePoint.of(z)
    r, phi = z.r, z.phi
    if abs(phi) <= math.pi:
        value, err = _rotated(r, phi, b, tol)
        return GbetaResult(z, value, "quadrature", err, flagged=abs(phi) == math.pi)
    # bring phi into (-pi, pi] and add the residues picked up on the way
    m = math.ceil((abs(phi) - math.pi) / (2 * math.pi))
    s = 1.0 if phi > 0 else -1.0
    base = phi - s * 2 * math.pi * m
    value, err = _rotated(r, base, b, tol)
    res = sum(_residue(r, phi - s * math.pi - s * 2 * math.pi * j, b) for j in range(m))
    return GbetaResult(z, value - s * 2j * math.pi * res, "quadrature+residues", err)


def g_beta(z, beta, tol: float = 1e-12) -> complex:
    return g_beta_eval(z, beta, tol).value


def g_beta_pv(r: float, beta, tol: float = 1e-12) -> float:
    """Principal value of int_0^inf exp(-t^beta)/(t - r) dt."""
    return 0.5 * (g_beta(SurfacePoint(r, math.pi), beta, tol)
                  + g_beta(SurfacePoint(r, -math.pi), beta, tol)).real


def g_beta_principal(r: float, phi: float, beta, tol: float = 1e-12) -> complex:
    """G on the principal sheet: phi reduced to (-pi, pi], PV on the cut."""
    phi = math.remainder(phi, 2 * math.pi)
    if abs(abs(phi) - math.pi) < 1e-14:
        return complex(g_beta_pv(r, beta, tol))
    return g_beta(SurfacePoint(r, phi), beta, tol)


# expansions ---------------------------------------------------------------

def large_z_terms(z, beta, n: int) -> np.ndarray:
    """The terms (-1)^{k-1} Gamma(k/beta) / (beta z^k), k = 1..n."""
    b = _beta(beta)
    z = SurfacePoint.of(z)
    k = np.arange(1, n + 1)
    logmag = np.array([lgamma(kk / b) for kk in k]) - math.log(b) - k * math.log(z.r)
    logmag = np.minimum(logmag, 700.0)
    return (-1.0) ** (k - 1) * np.exp(logmag - 1j * k * z.phi)


def g_beta_large_z(z, beta, n_terms: int | None = None, max_terms: int = 200):
    """Truncated asymptotic series; default is optimal truncation.

    Returns (value, first omitted term magnitude).
    """
    terms = large_z_terms(z, beta, max_terms + 1)
    if n_terms is None:
        n_terms = int(np.argmin(np.abs(terms)))
        n_terms = max(n_terms, 1)
    if n_terms > max_terms:
        raise ValueError(f"n_terms above {max_terms}")
    return complex(np.sum(terms[:n_terms])), float(abs(terms[n_terms]))


@dataclass(frozen=True)
class GbetaCoeffs:
    beta: float
    c0: float
    ck: tuple
    power: tuple
    log_coefficient: float = -1.0


def c_beta_0(beta) -> float:
    """c_{beta,0} from its series and Gamma(0, 1)."""
    b = _beta(beta)
    s, term, n = 0.0, 1.0, 0
    while True:
        n += 1
        term /= -n
        add = term / (n * b)
        s += add
        if abs(add) < 1e-18:
            break
    return s + incomplete_gamma_upper(0.0, 1.0) / b


def c_beta_k(k: int, beta) -> float:
    """c_{beta,k} = sum_n (-1)^n / (n! (n beta - k)) + Gamma(-k/beta, 1)/beta."""
    b = _beta(beta)
    if k == 0:
        return c_beta_0(b)
    s, term, n = 0.0, 1.0, 0
    while True:
        if abs(n * b - k) < 1e-12:
            raise NearRationalError(f"n beta = k for n = {n}, k = {k}; c_(beta,k) is undefined")
        add = term / (n * b - k)
        s += add
        n += 1
        term /= -n
        if abs(term) < 1e-18 and n * b > k:
            break
    return s + incomplete_gamma_upper(-k / b, 1.0) / b


def power_coefficient(n: int, beta) -> float:
    """(-1)^{n+1} pi / (n! sin(beta n pi)); inf when beta n is an integer."""
    b = _beta(beta)
    s = math.sin(b * n * math.pi)
    if abs(s) < 1e-15:
        return math.inf
    return (-1.0) ** (n + 1) * math.pi / (math.exp(lgamma(n + 1)) * s)


def gbeta_coeffs(beta, n_beta: int, n_int: int) -> GbetaCoeffs:
    b = _beta(beta)
    return GbetaCoeffs(b, c_beta_0(b), tuple(c_beta_k(k, b) for k in range(1, n_int + 1)),
                       tuple(power_coefficient(n, b) for n in range(1, n_beta + 1)))


def g_beta_small_z(z, beta, n_beta: int = 30, n_int: int = 12) -> complex:
    """-ln z + sum_n a_n z^{beta n} + sum_k c_{beta,k} (-z)^k with ln z = ln r + i phi."""
    b = _beta(beta)
    z = SurfacePoint.of(z)
    if z.r >= SMALL_Z:
        raise ValueError(f"small-z expansion needs |z| < {SMALL_Z}, got {z.r}")
    worst = min(abs(math.sin(b * n * math.pi)) for n in range(1, n_beta + 1))
    if worst < SIN_GUARD:
        raise NearRationalError(
            f"beta = {b} is within {worst:.2g} of a rational with denominator <= {n_beta}; "
            "use g_beta_rational")
    co = gbeta_coeffs(b, n_beta, n_int)
    log_z = complex(math.log(z.r), z.phi)
    total = -log_z
    for n, a in enumerate(co.power, start=1):
        total += a * np.exp(b * n * log_z)
    total += co.c0
    for k, c in enumerate(co.ck, start=1):
        total += c * (-1) ** k * np.exp(k * log_z)
    return complex(total)


# rational beta -----------------------------------------------------------

def i_closed(m: int, w: complex, log_w: complex | None = None) -> complex:
    """int_0^1 t^m / (t + w) dt in closed form."""
    if log_w is None:
        log_w = np.log(w)
    tail = np.log(1 + w) - log_w
    s = sum((-1) ** k * w ** k / (m - k) for k in range(m))
    return complex(s + (-w) ** m * tail)


def _j_table(m_max: int, w: complex, log_w: complex) -> np.ndarray:
    """J_m = int_0^1 t^m/(t+w) dt for m = 0..m_max, via the stable recurrence direction."""
    J = np.empty(m_max + 1, dtype=complex)
    aw = abs(w)
    if aw <= 1.0 or aw ** m_max < 1e3:
        J[0] = np.log(1 + w) - log_w
        for m in range(1, m_max + 1):
            J[m] = 1.0 / m - w * J[m - 1]
        return J
    extra = math.ceil(40.0 / math.log(aw))
    M = m_max + extra
    j = 1.0 / ((M + 1) * (1 + w))
    for m in range(M, 0, -1):
        j = (1.0 / m - j) / w
        if m - 1 <= m_max:
            J[m - 1] = j
    return J


def g_integer(p: int, w: complex, log_w: complex | None = None, tol: float = 1e-13) -> complex:
    """G_p(w) for integer p >= 1 and |arg w| < pi."""
    if log_w is None:
        log_w = np.log(w)
    w = complex(w)
    if abs(log_w.imag) >= math.pi:
        raise ValueError("pole on the path: |arg w| must be < pi")
    # [0, 1]: expand exp(-t^p)
    n_max = 30
    J = _j_table(n_max * p, w, log_w)
    head = sum((-1) ** n / math.factorial(n) * J[n * p] for n in range(n_max + 1))
    # [1, inf): plain panels, bisected near t = -w
    t_end = 1.0 + (math.log(1.0 / tol) + 5.0) ** (1.0 / p)
    edges = np.linspace(1.0, t_end, max(2, math.ceil(4 * (t_end - 1))) + 1)
    tail = _panel_sum(lambda t: np.exp(-t ** p) / (t + w), edges, np.array([-w]))
    return complex(head + tail)


def as_fraction(beta, max_den: int = 1000) -> Fraction:
    f = Fraction(beta).limit_denominator(max_den) if not isinstance(beta, Fraction) else beta
    if abs(float(f) - float(beta)) > 1e-12:
        raise ValueError(f"beta = {beta} is not p/q with q <= {max_den}")
    return f


def g_beta_rational(z, beta) -> complex:
    """G_{p/q}(z) = sum_l G_p(e^{(2l+1-q) pi i/q} zeta), zeta = r^{1/q} e^{i phi/q}."""
    f = as_fraction(beta)
    p, qd = f.numerator, f.denominator
    if not (0 < p < qd or p == qd == 1):
        raise ValueError("need 0 < p/q <= 1")
    z = SurfacePoint.of(z)
    if abs(z.phi) >= math.pi:
        raise ValueError("g_beta_rational is restricted to |arg z| < pi")
    rho = z.r ** (1.0 / qd)
    total = 0j
    for l in range(qd):
        arg = (2 * l + 1 - qd) * math.pi / qd + z.phi / qd
        w = rho * complex(math.cos(arg), math.sin(arg))
        total += g_integer(p, w, complex(math.log(rho), arg))
    return total
