"""Gamma and upper incomplete gamma for real arguments."""
from __future__ import annotations

import math

# Lanczos approximation, g = 7, nine coefficients
_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2 * math.pi)
EULER_GAMMA = 0.57721566490153286061


def _pole(x: float) -> bool:
    return x <= 0 and x == math.floor(x)


def _lanczos_sum(x: float) -> float:
    # x is the shifted argument (original minus one)
    a = _LANCZOS[0]
    for i, c in enumerate(_LANCZOS[1:], start=1):
        a += c / (x + i)
    return a


def gamma(x: float) -> float:
    x = float(x)
    if _pole(x):
        raise ValueError(f"gamma has a pole at {x}")
    if x < 0.5:
        return math.pi / (math.sin(math.pi * x) * gamma(1.0 - x))
    if x > 171.6:
        raise OverflowError(f"gamma({x}) overflows")
    x -= 1.0
    t = x + _G + 0.5
    # t**(x+0.5) split in two to postpone overflow
    h = t ** (0.5 * (x + 0.5))
    return math.sqrt(2 * math.pi) * h * (h * math.exp(-t)) * _lanczos_sum(x)


def lgamma(x: float) -> float:
    """log |Gamma(x)|."""
    x = float(x)
    if _pole(x):
        raise ValueError(f"gamma has a pole at {x}")
    if x < 0.5:
        return math.log(math.pi / abs(math.sin(math.pi * x))) - lgamma(1.0 - x)
    x -= 1.0
    t = x + _G + 0.5
    return _HALF_LOG_2PI + (x + 0.5) * math.log(t) - t + math.log(_lanczos_sum(x))


def _lower_series(a: float, x: float, eps: float) -> float:
    """sum_n x^n / (a (a+1) ... (a+n)); gamma(a, x) = e^{-x} x^a times this."""
    term = 1.0 / a
    total = term
    for n in range(1, 10000):
        term *= x / (a + n)
        total += term
        if abs(term) < eps * abs(total):
            return total
    raise ArithmeticError("incomplete gamma series did not converge")


def _upper_cf(a: float, x: float, eps: float) -> float:
    """Modified Lentz evaluation of e^x x^{-a} Gamma(a, x)."""
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b if b != 0 else 1.0 / tiny
    h = d
    for i in range(1, 10000):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < eps:
            return h
    raise ArithmeticError("incomplete gamma continued fraction did not converge")


def incomplete_gamma_upper(a: float, x: float = 1.0, eps: float = 1e-16) -> float:
    """Gamma(a, x) = int_x^inf t^{a-1} e^{-t} dt for real a and x > 0."""
    a, x = float(a), float(x)
    if not x > 0:
        raise ValueError("incomplete_gamma_upper needs x > 0")
    log_pref = a * math.log(x) - x
    if log_pref > 700:
        raise OverflowError(f"x^a e^-x overflows for a={a}, x={x}")
    pref = math.exp(log_pref)
    if a <= x:
        return pref * _upper_cf(a, x, eps)
    return gamma(a) - pref * _lower_series(a, x, eps)
