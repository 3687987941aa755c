import cmath
import math
import warnings

import pytest

from uvbeta.mittag import (BoundaryWarning, integral_term, ml_case, ml_series, ml_via_gbeta,
                           retained_weights)

# 30-digit mpmath sums
MP_ML = [(10 / 7, 2.0, 3.6331762977300683), (2.5, 1.0, 1.3093059741717625),
         (1.2, 4 * cmath.exp(1j * math.pi / 6), 3.3897104557600697 + 14.408324332459946j)]


def test_series_special_cases():
    assert ml_series(1.0, 1.3) == pytest.approx(math.exp(1.3), rel=1e-15)
    assert ml_series(2.0, 1.0) == pytest.approx(math.cosh(1.0), rel=1e-15)
    assert ml_series(1.7, 0) == 1


@pytest.mark.parametrize("alpha,z,ref", MP_ML)
def test_series_vs_mpmath(alpha, z, ref):
    assert abs(ml_series(alpha, z) - ref) < 1e-13 * abs(ref)


def test_series_overflow():
    with pytest.raises(OverflowError, match="ml_via_gbeta"):
        ml_series(1.5, 1e5)


@pytest.mark.parametrize("alpha,z,ref", MP_ML)
def test_decomposition_examples(alpha, z, ref):
    d = ml_via_gbeta(alpha, z)
    assert abs(d.value - ref) < 1e-6 * (1 + abs(ref))


@pytest.mark.filterwarnings("ignore::uvbeta.mittag.BoundaryWarning")
@pytest.mark.parametrize("alpha", [1.2, 1.5, 1.8, 2.3, 2.7])
@pytest.mark.parametrize("z", [0.5, 1.0, 2.0, 4 * cmath.exp(1j * math.pi / 6), 3j])
def test_decomposition_grid(alpha, z):
    s = ml_series(alpha, z)
    assert abs(ml_via_gbeta(alpha, z).value - s) < 1e-6 * (1 + abs(s))


def test_cases():
    assert ml_case(1.5) == ("ii", 1)
    assert ml_case(2.5) == ("iii", 1)
    assert ml_case(3.7) == ("ii", 2)
    assert ml_case(3.0)[0] == "i"


def test_retained_set_brute_force():
    for alpha in (1.2, 2.7, 4.4):
        for phi in (0.0, 0.9, -2.0):
            d = ml_via_gbeta(alpha, cmath.rect(1.5, phi))
            brute = [k for k in range(-50, 51)
                     if abs(cmath.phase(cmath.exp(1j * (phi + 2 * math.pi * k) / alpha))) < math.pi
                     and abs(phi + 2 * math.pi * k) < math.pi * alpha]
            assert list(d.retained) == brute


def test_integer_alpha():
    with pytest.warns(BoundaryWarning):
        d = ml_via_gbeta(2.0, 1.3)
    assert d.i_value == 0
    assert abs(d.value - math.cosh(math.sqrt(1.3))) < 1e-14
    for a in (2.0, 3.0, 4.0):
        assert abs(integral_term(a, cmath.rect(1.2, 0.4))) < 1e-10


def test_boundary_half_weight():
    assert retained_weights(3.0, math.pi, [1, -2]) == [0.5, 0.5]
    # alpha = 2.5, arg z = -pi/2: Z_{-1} lies on the cut
    with pytest.warns(BoundaryWarning):
        d = ml_via_gbeta(2.5, cmath.rect(2.0, -math.pi / 2))
    assert d.flagged and 0.5 in d.weights
    assert abs(d.value - ml_series(2.5, -2j)) < 1e-6 * (1 + abs(d.value))
