import numpy as np
import pytest
from scipy import integrate

from uvbeta import _quadrature as q


def test_interp_matrix_reproduces_polynomials():
    x, _, _ = q.gauss_legendre(16)
    xs = np.linspace(-1, 1, 37)
    M = q.interp_matrix(xs)
    for deg in (0, 5, 15):
        assert np.allclose(M @ x**deg, xs**deg, atol=1e-13)


def test_graded_edges_shape():
    e = q.graded_edges(30.0, w_min=1e-6, ratio=2.0, h_max=4.0)
    assert e[0] == 0 and e[-1] == pytest.approx(30.0)
    assert e[1] <= 1e-6 * 1.0001
    assert np.all(np.diff(e) > 0) and np.max(np.diff(e)) <= 4.0 + 1e-12


def test_refined_weights_near_pole():
    # int_0^1 P(w) / (w - z) dw for a pole just off the panel
    z = 0.4 + 1e-4j
    f = lambda w: 1.0 / (w - z)
    c = q.refined_panel_weights(0.0, 1.0, f, np.array([z]))
    x, _, _ = q.gauss_legendre(16)
    nodes = 0.5 * (x + 1)
    P = lambda w: np.cos(3 * w)
    got = c @ P(nodes)
    re = integrate.quad(lambda w: (P(w) / (w - z)).real, 0, 1, points=[0.4], limit=200)[0]
    im = integrate.quad(lambda w: (P(w) / (w - z)).imag, 0, 1, points=[0.4], limit=200)[0]
    assert abs(got - complex(re, im)) < 1e-10


def test_split_operator_is_exact_for_interpolant():
    edges = np.array([0.0, 1.0, 3.0])
    new, op = q.split_operator(edges)
    w_old, _ = q.panel_nodes(edges)
    w_new, _ = q.panel_nodes(new)
    f = lambda w: w**7 - 2 * w
    assert np.allclose(op @ f(w_old.ravel()), f(w_new.ravel()), atol=1e-10)


def test_cauchy_poles_satisfy_equation():
    P = q.cauchy_poles(2.0, 0.5, 0.4)
    for w in P[0][~np.isnan(P[0])]:
        assert abs(w ** (1 / 0.4) + 2.0 * np.exp(0.5j)) < 1e-12
