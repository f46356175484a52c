"""
Foundation special functions: gamma, the Gauss hypergeometric function
and Bessel functions of real order.

Bessel values are delegated to :mod:`scipy.special` (AMOS-based routines);
the hypergeometric machinery is implemented here because the Legendre
layer needs the regularized function, exact behaviour at parameter poles
and control over which transformation is used where.
"""
from __future__ import annotations

import enum
import math

import numpy as np
from scipy import special as sc

from .errors import (DomainError, NonConvergence, ParameterError, PoleError,
                     UnsupportedOrder)

#: Orders and degrees accepted by the public API, |mu| <= ORDER_BOX.
ORDER_BOX = 8.0

#: Half-width of the band around integer c - a - b inside which the
#: 1 - z transformation is abandoned for the plain series. The connection
#: coefficients cancel like 1/distance, so the band is wide.
GUARD_BAND = 5e-2

#: Below this z the plain series converges fast enough to be preferred
#: over the 1 - z transformation on (1/2, 1).
SERIES_CUTOFF = 0.9

MAX_SERIES_TERMS = 2_000_000

_EPS = np.finfo(float).eps


class BesselKind(str, enum.Enum):
    """Cylinder function selector. ``Kh`` is Heaviside's (2/pi) K."""

    J = "J"
    Y = "Y"
    I = "I"  # noqa: E741
    K = "K"
    Kh = "Kh"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value))
        except ValueError:
            raise DomainError(f"unknown Bessel kind {value!r}") from None


def _is_nonpositive_integer(x):
    return x <= 0 and x == math.floor(x)


def gamma(x):
    """Euler gamma function of a real argument.

    Raises
    ------
    PoleError
        If `x` is 0, -1, -2, ...
    """
    x = float(x)
    if _is_nonpositive_integer(x):
        raise PoleError(f"gamma has a pole at {x}")
    try:
        value = math.gamma(x)
    except OverflowError:
        raise DomainError(f"gamma({x}) overflows") from None
    return value


def rgamma(x):
    """Reciprocal gamma function, entire: zero at the poles of gamma."""
    x = float(x)
    if _is_nonpositive_integer(x):
        return 0.0
    if x > 171.0:
        return 0.0 if x > 180.0 else 1.0 / math.gamma(x)
    return 1.0 / math.gamma(x)


def poch(a, n):
    """Rising factorial (a)_n for a non-negative integer n."""
    out = 1.0
    for k in range(n):
        out *= a + k
    return out


def _series(a, b, c, z):
    """Plain Gauss series; c must not be a pole encountered by the terms."""
    term = 1.0
    total = 1.0
    biggest = 1.0
    az = abs(z)
    for k in range(MAX_SERIES_TERMS):
        denom = (c + k) * (k + 1)
        if denom == 0.0:
            raise ParameterError("hypergeometric series hits a pole in c")
        factor = (a + k) * (b + k) / denom * z
        term *= factor
        total += term
        if term == 0.0:
            return total
        biggest = max(biggest, abs(term))
        rho = max(abs(factor), az)
        if rho < 1.0:
            tail = abs(term) * rho / (1.0 - rho)
            if tail <= 0.1 * _EPS * max(abs(total), _EPS * biggest):
                return total
    raise NonConvergence(
        f"2F1({a}, {b}; {c}; {z}) series did not converge in "
        f"{MAX_SERIES_TERMS} terms")


def _hyp2f1(a, b, c, z):
    """2F1 for real z < 1 and c not a non-positive integer."""
    if z == 0.0:
        return 1.0
    if _is_nonpositive_integer(a) or _is_nonpositive_integer(b):
        n = int(-min(x for x in (a, b) if _is_nonpositive_integer(x)))
        total, term = 1.0, 1.0
        for k in range(n):
            term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z
            total += term
        return total
    if -0.5 <= z <= 0.5:
        return _series(a, b, c, z)
    if z < -0.5:
        # Pfaff; keep the variant whose series grows least as w -> 1.
        w = z / (z - 1.0)
        if a - b <= b - a:
            return (1.0 - z) ** (-a) * _hyp2f1(a, c - b, c, w)
        return (1.0 - z) ** (-b) * _hyp2f1(c - a, b, c, w)
    d = c - a - b
    if z <= SERIES_CUTOFF or abs(d - round(d)) < GUARD_BAND:
        return _series(a, b, c, z)
    y = 1.0 - z
    first = gamma(d) * rgamma(c - a) * rgamma(c - b)
    if first != 0.0:
        first *= _hyp2f1(a, b, 1.0 - d, y)
    second = gamma(-d) * rgamma(a) * rgamma(b)
    if second != 0.0:
        second *= y ** d * _hyp2f1(c - a, c - b, 1.0 + d, y)
    return gamma(c) * (first + second)


def _check_finite(value, what):
    if not math.isfinite(value):
        raise NonConvergence(f"{what} is not finite")
    return value


def gauss_2f1(a, b, c, z):
    """Gauss hypergeometric function 2F1(a, b; c; z) for real |z| < 1.

    The series is summed directly on [-1/2, 0.9]; Pfaff's transformation
    covers (-1, -1/2) and the 1 - z connection formula covers (0.9, 1),
    except within `GUARD_BAND` of integer c - a - b where the plain series
    is summed to convergence instead.

    Raises
    ------
    DomainError
        If |z| >= 1.
    ParameterError
        If c is a non-positive integer not cancelled by a terminating a or b.
    """
    a, b, c, z = float(a), float(b), float(c), float(z)
    if not abs(z) < 1.0:
        raise DomainError(f"2F1 needs |z| < 1, got z = {z}")
    if _is_nonpositive_integer(c):
        terminating = [x for x in (a, b) if _is_nonpositive_integer(x) and x > c]
        if not terminating:
            raise ParameterError(f"2F1 with c = {c} is undefined")
    return _check_finite(_hyp2f1(a, b, c, z), "2F1")


def hyp2f1_regularized(a, b, c, z):
    """Regularized hypergeometric function 2F1(a, b; c; z) / Gamma(c).

    Entire in `c`; at c = -m the limit
    (a)_{m+1} (b)_{m+1} / (m+1)! z^{m+1} 2F1(a+m+1, b+m+1; m+2; z)
    is used. Accepts any real z < 1; Legendre functions off the cut use
    arguments below -1.
    """
    a, b, c, z = float(a), float(b), float(c), float(z)
    if not z < 1.0:
        raise DomainError(f"regularized 2F1 needs z < 1, got z = {z}")
    if _is_nonpositive_integer(c):
        m = int(-c)
        pref = poch(a, m + 1) * poch(b, m + 1) / math.factorial(m + 1)
        if pref == 0.0:
            return 0.0
        value = pref * z ** (m + 1) * _hyp2f1(a + m + 1, b + m + 1, m + 2.0, z)
    else:
        value = _hyp2f1(a, b, c, z) * rgamma(c)
    return _check_finite(value, "regularized 2F1")


def check_order(mu, box=ORDER_BOX, what="order"):
    if not math.isfinite(mu):
        raise DomainError(f"{what} must be finite")
    if abs(mu) > box:
        raise UnsupportedOrder(f"|{what}| = {abs(mu)} exceeds the supported box {box}")


def bessel_array(kind, mu, t, scaled=False):
    """Vectorized Bessel values without argument checks.

    With ``scaled=True`` the exponential growth or decay is removed:
    ``I`` is returned as I e^{-t} and ``K``/``Kh`` as K e^{t}; ``J`` and
    ``Y`` are unaffected. Quadrature uses this to avoid overflow.
    """
    kind = BesselKind.parse(kind)
    t = np.asarray(t, dtype=float)
    if abs(mu) < 1e-300:
        # scipy's Y and K misbehave at subnormal orders
        mu = 0.0
    if kind is BesselKind.J:
        return sc.jv(mu, t)
    if kind is BesselKind.Y:
        return sc.yv(mu, t)
    if kind is BesselKind.I:
        return sc.ive(mu, t) if scaled else sc.iv(mu, t)
    k = sc.kve(mu, t) if scaled else sc.kv(mu, t)
    if kind is BesselKind.Kh:
        return (2.0 / math.pi) * k
    return k


def bessel(kind, mu, t):
    """Bessel function C_mu(t) of the given kind for real order and t > 0.

    Parameters
    ----------
    kind : BesselKind or str
        One of J, Y, I, K, Kh.
    mu : float
        Real order, |mu| <= 8.
    t : float
        Positive argument.

    Returns
    -------
    float
    """
    kind = BesselKind.parse(kind)
    mu, t = float(mu), float(t)
    check_order(mu)
    if not t > 0.0 or not math.isfinite(t):
        raise DomainError(f"Bessel argument must be positive and finite, got {t}")
    value = float(bessel_array(kind, mu, t))
    if not math.isfinite(value):
        raise DomainError(f"{kind.value}_{mu}({t}) is outside the representable range")
    return value
