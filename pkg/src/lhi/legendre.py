"""
Associated Legendre functions off the cut, Ferrers functions on (-1, 1),
and the three historical normalizations of the second function Q.

Off the cut (x > 1) the functions are P and Olver's Q (nonnegative, real
for real parameters); Hobson's and Barnes' Q are obtained from Olver's by
exact factors. On the cut (-1 < x < 1) the Ferrers functions are returned.

All representations are hypergeometric (DLMF 14.3.1, 14.3.6, 14.3.7, and
the x**2 expansion for Ferrers Q).
"""
from __future__ import annotations

import cmath
import enum
import math

from .errors import ConventionDegenerate, DomainError, ParameterError
from .special import check_order, gamma, hyp2f1_regularized, rgamma

#: Degrees and orders accepted here. Half a unit wider than the order box
#: used elsewhere because the P-based transforms shift them by 1/2.
LEGENDRE_BOX = 8.5

#: Arguments closer than this to a branch point are rejected.
ENDPOINT_GAP = 1e-6


class QConvention(str, enum.Enum):
    HOBSON = "Hobson"
    OLVER = "Olver"
    BARNES = "Barnes"


def _check_params(nu, mu):
    check_order(nu, LEGENDRE_BOX, "degree")
    check_order(mu, LEGENDRE_BOX, "order")


def _check_offcut(x):
    if not math.isfinite(x) or not x > 1.0:
        raise DomainError(f"off-cut Legendre functions need x > 1, got {x}")
    if x - 1.0 < ENDPOINT_GAP:
        raise DomainError(f"x = {x} is too close to the branch point 1")


def _check_cut(x):
    if not -1.0 < x < 1.0:
        raise DomainError(f"Ferrers functions need -1 < x < 1, got {x}")
    if 1.0 - abs(x) < ENDPOINT_GAP:
        raise DomainError(f"x = {x} is too close to an endpoint of (-1, 1)")


def legendre_p(nu, mu, x):
    """Associated Legendre function of the first kind P_nu^mu(x), x > 1."""
    nu, mu, x = float(nu), float(mu), float(x)
    _check_params(nu, mu)
    _check_offcut(x)
    f = hyp2f1_regularized(nu + 1.0, -nu, 1.0 - mu, 0.5 - 0.5 * x)
    return ((x + 1.0) / (x - 1.0)) ** (0.5 * mu) * f


def olver_q(nu, mu, x):
    """Olver's normalized second Legendre function, x > 1.

    Equal to exp(-mu pi i) Q_nu^mu(x) / Gamma(nu + mu + 1) with Hobson's Q,
    but defined for every real degree and even in `mu`.
    """
    nu, mu, x = float(nu), float(mu), float(x)
    _check_params(nu, mu)
    _check_offcut(x)
    s = 0.5 * (nu + mu)
    f = hyp2f1_regularized(s + 1.0, s + 0.5, nu + 1.5, 1.0 / (x * x))
    return (math.sqrt(math.pi) * (x * x - 1.0) ** (0.5 * mu)
            / (2.0 ** (nu + 1.0) * x ** (nu + mu + 1.0)) * f)


def convention_factor(nu, mu, conv):
    """Complex factor f with [Q_nu^mu]_conv = f * olver_q(nu, mu, x).

    Raises
    ------
    ConventionDegenerate
        Gamma(nu + mu + 1) has a pole (Hobson, Barnes) or sin(nu pi) = 0
        (Barnes).
    """
    conv = QConvention(conv)
    if conv is QConvention.OLVER:
        return complex(1.0)
    g = nu + mu + 1.0
    if g <= 0 and g == math.floor(g):
        raise ConventionDegenerate(
            f"{conv.value} Q is undefined when nu + mu + 1 = {g} is a pole of gamma")
    if conv is QConvention.HOBSON:
        return cmath.exp(1j * math.pi * mu) * gamma(g)
    if nu == math.floor(nu):
        raise ConventionDegenerate(f"Barnes Q is undefined for integer degree {nu}")
    return complex(math.sin(math.pi * (nu + mu)) / math.sin(math.pi * nu) * gamma(g))


def convert_q(value, nu, mu, src, dst):
    """Re-express a Q value given in convention `src` in convention `dst`."""
    return complex(value) * convention_factor(nu, mu, dst) / convention_factor(nu, mu, src)


def q_in_convention(nu, mu, x, conv):
    """Second Legendre function Q_nu^mu(x), x > 1, in the given convention.

    Returns
    -------
    complex
        Olver's and Barnes' values are real; Hobson's carries the phase
        exp(mu pi i).
    """
    factor = convention_factor(float(nu), float(mu), conv)
    return factor * olver_q(nu, mu, x)


def ferrers_p(nu, mu, x):
    """Ferrers function of the first kind P_nu^mu(x) on (-1, 1)."""
    nu, mu, x = float(nu), float(mu), float(x)
    _check_params(nu, mu)
    _check_cut(x)
    f = hyp2f1_regularized(nu + 1.0, -nu, 1.0 - mu, 0.5 - 0.5 * x)
    return ((1.0 + x) / (1.0 - x)) ** (0.5 * mu) * f


def _gamma_or_pole(x):
    if x <= 0 and x == math.floor(x):
        return None
    return gamma(x)


def ferrers_q(nu, mu, x):
    """Ferrers function of the second kind Q_nu^mu(x) on (-1, 1).

    Uses the decomposition into parts even and odd in x, each a 2F1 in
    x**2 with c = 1/2 or 3/2. The coefficients stay finite for integer
    orders, so no limiting process is needed there.

    Raises
    ------
    ParameterError
        If nu + mu is a negative integer, where Q_nu^mu does not exist.
    """
    nu, mu, x = float(nu), float(mu), float(x)
    _check_params(nu, mu)
    _check_cut(x)
    s = nu + mu
    even = _gamma_or_pole(0.5 * (s + 1.0))
    odd = _gamma_or_pole(0.5 * (s + 2.0))
    if even is None or odd is None:
        raise ParameterError(f"Ferrers Q is undefined when nu + mu = {s}")
    z = x * x
    even *= rgamma(0.5 * (nu - mu) + 1.0) * hyp2f1_regularized(
        -0.5 * s, 0.5 * (nu - mu + 1.0), 0.5, z) * math.sqrt(math.pi)
    odd *= rgamma(0.5 * (nu - mu + 1.0)) * hyp2f1_regularized(
        0.5 * (1.0 - s), 0.5 * (nu - mu) + 1.0, 1.5, z) * (0.5 * math.sqrt(math.pi))
    bracket = (-math.sin(0.5 * math.pi * s) * even
               + 2.0 * x * math.cos(0.5 * math.pi * s) * odd)
    return 2.0 ** (mu - 1.0) * math.sqrt(math.pi) * (1.0 - z) ** (-0.5 * mu) * bracket


def whipple_pair(nu, mu, xi):
    """Both sides of Whipple's formula at argument cosh(xi), xi > 0.

    Returns ``(olver_q(nu, mu, cosh xi),
    sqrt(pi / (2 sinh xi)) * legendre_p(-mu - 1/2, -nu - 1/2, coth xi))``,
    which agree for all real nu, mu.
    """
    xi = float(xi)
    if not xi > 0.0 or not math.isfinite(xi):
        raise DomainError(f"Whipple's formula needs xi > 0, got {xi}")
    left = olver_q(nu, mu, math.cosh(xi))
    right = (math.sqrt(0.5 * math.pi / math.sinh(xi))
             * legendre_p(-mu - 0.5, -nu - 0.5, 1.0 / math.tanh(xi)))
    return left, right
