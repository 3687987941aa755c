"""Composite Gauss-Legendre panels with pole-aware refinement.

Integrals over t in [0, inf) are computed in the variable w = t**gamma on a
panel mesh that is geometrically graded toward w = 0.  A function known only at
the panel nodes is represented by its degree order-1 interpolant on each panel;
when a Cauchy pole comes close to a panel, the panel is bisected (adaptively)
and the interpolant is sampled on the pieces.  The result is always expressed as
a weight vector acting on the original node values, so it can be used both to
assemble Nystrom rows and to evaluate the Nystrom interpolant.
"""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

ORDER = 16
RHO_MIN = 3.0
MAX_DEPTH = 40


@lru_cache(maxsize=None)
def gauss_legendre(order: int = ORDER):
    x, w = np.polynomial.legendre.leggauss(order)
    # barycentric weights for Legendre points
    bary = (-1.0) ** np.arange(order) * np.sqrt((1 - x**2) * w)
    for arr in (x, w, bary):
        arr.setflags(write=False)
    return x, w, bary


def interp_matrix(xs, order: int = ORDER):
    """Matrix mapping node values on [-1, 1] to interpolant values at xs."""
    x, _, bary = gauss_legendre(order)
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    diff = xs[:, None] - x[None, :]
    exact = diff == 0.0
    diff[exact] = 1.0
    c = bary[None, :] / diff
    M = c / c.sum(axis=1, keepdims=True)
    rows = exact.any(axis=1)
    if rows.any():
        M[rows] = exact[rows].astype(float)
    return M


def graded_edges(w_end: float, *, w_min: float = 1e-6, ratio: float = 2.0, h_max: float = 4.0):
    """Panel breakpoints on [0, w_end]: geometric toward 0, uniform beyond h_max."""
    top = min(h_max, w_end)
    n_geo = max(1, math.ceil(math.log(top / w_min) / math.log(ratio)))
    geo = top * ratio ** -np.arange(n_geo, -1, -1, dtype=float)
    edges = [0.0, *geo]
    if w_end > top:
        n_uni = math.ceil((w_end - top) / h_max)
        edges.extend(np.linspace(top, w_end, n_uni + 1)[1:])
    return np.asarray(edges)


def split_edges(edges):
    """Bisect every panel."""
    mids = 0.5 * (edges[:-1] + edges[1:])
    out = np.empty(2 * len(edges) - 1)
    out[0::2] = edges
    out[1::2] = mids
    return out


def panel_nodes(edges, order: int = ORDER):
    """Nodes (npan, order) and plain GL weights (npan, order) in w."""
    x, w, _ = gauss_legendre(order)
    a = edges[:-1, None]
    h = (edges[1:] - edges[:-1])[:, None]
    return a + 0.5 * (x[None, :] + 1.0) * h, 0.5 * w[None, :] * h


def bernstein_rho(poles, a, b):
    """Bernstein-ellipse parameter of each pole relative to [a, b].

    poles: (..., P) complex (nan entries ignored); a, b broadcast against poles[..., 0].
    Returns min over P, shape (...).
    """
    a = np.asarray(a)[..., None]
    b = np.asarray(b)[..., None]
    xi = (2 * poles - a - b) / (b - a)
    s = np.sqrt(xi - 1.0 + 0j) * np.sqrt(xi + 1.0 + 0j)
    rho = np.maximum(np.abs(xi + s), np.abs(xi - s))
    rho = np.where(np.isnan(rho), np.inf, rho)
    return rho.min(axis=-1)


def cauchy_poles(x_abs, x_arg, gamma: float):
    """Points w (|arg w| < pi) with w**(1/gamma) = -x, x = x_abs e^{i x_arg}.

    Returns (m, P) complex with nan padding; P is fixed by gamma.
    """
    x_abs = np.atleast_1d(np.asarray(x_abs, dtype=float))
    x_arg = np.atleast_1d(np.asarray(x_arg, dtype=float))
    mmax = math.ceil(0.5 / gamma) + 1
    ms = np.arange(-mmax, mmax + 1)
    ang = gamma * (x_arg[:, None] + np.pi * (2 * ms[None, :] + 1))
    mod = x_abs[:, None] ** gamma
    poles = mod * np.exp(1j * ang)
    keep = (np.abs(ang) < np.pi) & (mod > 0)
    return np.where(keep, poles, np.nan + 0j)


def refined_panel_weights(a, b, factor, poles, *, rho_min: float = RHO_MIN, order: int = ORDER):
    """Weights c with  int_a^b factor(w) P(w) dw ~= c @ P(nodes).

    P is the interpolant through the panel's GL nodes.  The panel is bisected
    until every pole sits outside the Bernstein ellipse rho_min of each piece.
    """
    x, wq, _ = gauss_legendre(order)
    pieces = []
    stack = [(-1.0, 1.0, 0)]
    while stack:
        lo, hi, depth = stack.pop()
        A = a + 0.5 * (lo + 1.0) * (b - a)
        B = a + 0.5 * (hi + 1.0) * (b - a)
        if depth < MAX_DEPTH and bernstein_rho(poles[None, :], A, B)[0] < rho_min:
            mid = 0.5 * (lo + hi)
            stack.append((lo, mid, depth + 1))
            stack.append((mid, hi, depth + 1))
        else:
            pieces.append((lo, hi))
    lo = np.array([p[0] for p in pieces])[:, None]
    hi = np.array([p[1] for p in pieces])[:, None]
    ref = (lo + 0.5 * (x[None, :] + 1.0) * (hi - lo)).ravel()
    wts = (0.5 * wq[None, :] * (hi - lo)).ravel() * 0.5 * (b - a)
    w_pts = a + 0.5 * (ref + 1.0) * (b - a)
    return (wts * factor(w_pts)) @ interp_matrix(ref, order)


def weight_rows(edges, factor, poles, *, rho_min: float = RHO_MIN, order: int = ORDER):
    """Weight matrix (m, N); row i integrates factor(w, i) * P(w) over all panels.

    ``factor(w, idx)`` takes w of shape (m', n) and target indices idx (m',) and
    returns the integrand factor (everything except the unknown).  ``poles`` is
    (m, P) complex with nan padding, one row per target.
    """
    nodes, gw = panel_nodes(edges, order)
    m = poles.shape[0]
    flat = nodes.ravel()
    base = factor(np.broadcast_to(flat, (m, flat.size)), np.arange(m)) * gw.ravel()[None, :]
    if poles.shape[1] == 0:
        return base
    rho = bernstein_rho(poles[:, None, :], edges[None, :-1], edges[None, 1:])
    for i, k in zip(*np.nonzero(rho < rho_min)):
        pw = poles[i][~np.isnan(poles[i])]
        f = lambda w, i=i: factor(w[None, :], np.array([i]))[0]
        base[i, k * order:(k + 1) * order] = refined_panel_weights(
            edges[k], edges[k + 1], f, pw, rho_min=rho_min, order=order)
    return base


def split_operator(edges, order: int = ORDER):
    """Edges of the bisected mesh and the (2N, N) map from old to new node values."""
    x, _, _ = gauss_legendre(order)
    left = interp_matrix(0.5 * (x - 1.0), order)
    right = interp_matrix(0.5 * (x + 1.0), order)
    npan = len(edges) - 1
    op = np.zeros((2 * npan * order, npan * order))
    for k in range(npan):
        cols = slice(k * order, (k + 1) * order)
        op[2 * k * order:(2 * k + 1) * order, cols] = left
        op[(2 * k + 1) * order:(2 * k + 2) * order, cols] = right
    return split_edges(edges), op


def panel_locate(edges, w):
    """Panel index and reference coordinate in [-1, 1] of each w (clipped to the mesh)."""
    w = np.asarray(w, dtype=float)
    k = np.clip(np.searchsorted(edges, w, side="right") - 1, 0, len(edges) - 2)
    a, b = edges[k], edges[k + 1]
    return k, np.clip(2.0 * (w - a) / (b - a) - 1.0, -1.0, 1.0)
