import math

import pytest

from uvbeta import KernelParams, SurfacePoint, UVFunctions
from uvbeta.continuation import (OutOfSectorError, RaySolutions, connection_residual, eval_sector,
                                 eval_surface, recursion_depth)
from uvbeta.kernel import kernel_complex


def test_surface_point():
    z = SurfacePoint.of(-1 + 0j)
    assert z.phi == pytest.approx(math.pi)
    assert SurfacePoint.of((2.0, 7.0)).rotate(-7.0).phi == 0.0
    with pytest.raises(ValueError):
        SurfacePoint(0.0, 1.0)


def test_positive_axis_matches_grid(uv06):
    g = uv06.u_rays.grid(0.0)
    assert uv06.u(2.5) == pytest.approx(complex(g.interpolate(2.5)), abs=1e-14)


@pytest.mark.parametrize("phi", [0.3, 1.0, 2.0])
def test_rays_agree_on_overlap(uv06, phi):
    rs = uv06.u_rays
    a = eval_sector(rs, SurfacePoint(1.7, phi), theta=0.0)
    b = eval_sector(rs, SurfacePoint(1.7, phi), theta=math.pi / 4)
    assert abs(a - b) < 1e-9


def test_conjugate_symmetry(uv06):
    for r, phi in [(0.5, 0.7), (3.0, 2.9), (2.0, 5.0)]:
        a = uv06.u(SurfacePoint(r, phi))
        b = uv06.u(SurfacePoint(r, -phi))
        assert abs(a - b.conjugate()) < 1e-10


@pytest.mark.parametrize("tag", ["u", "v"])
@pytest.mark.parametrize("r", [0.5, 1.0, 2.0, 5.0])
def test_connection_formula(uv06, tag, r):
    assert connection_residual(uv06.rays(tag), r) < 1e-9


def test_surface_beyond_pi_is_connection(uv06):
    # u(z e^{i pi}) with z = r e^{i psi}: recursion uses u(r e^{i(psi - pi)}) from the sector
    rs = uv06.u_rays
    r, phi = 1.3, math.pi + 0.6
    direct = eval_sector(rs, SurfacePoint(r, phi))
    k = complex(kernel_complex(r, phi - math.pi, rs.params))
    via = eval_surface(rs, SurfacePoint(r, phi - 2 * math.pi)) - 2j * math.pi * k * \
        eval_surface(rs, SurfacePoint(r, phi - math.pi))
    assert abs(direct - via) < 1e-9
    assert abs(eval_surface(rs, SurfacePoint(r, phi)) - direct) < 1e-9


def test_deep_sheet_finite(uv06):
    assert recursion_depth(7.5) == 2
    val = uv06.v(SurfacePoint(1.0, 7.5))
    assert math.isfinite(abs(val))


def test_out_of_sector():
    rs = RaySolutions(KernelParams(0.6), "u")
    with pytest.raises(OutOfSectorError):
        rs.choose_ray(4.0)


def test_bilinear(uv06):
    for r, phi in [(0.4, 0.2), (1.7, 0.8), (6.0, -2.0), (2.0, math.pi)]:
        assert abs(uv06.bilinear(SurfacePoint(r, phi)) - 2) < 1e-9


def test_zero_kernel_surface():
    uv = UVFunctions(KernelParams(0.6, zero_kernel=True))
    assert uv.u(SurfacePoint(2.0, 5.0)) == 1
    assert uv.U_beta(SurfacePoint(2.0, -1.0)) == 0
