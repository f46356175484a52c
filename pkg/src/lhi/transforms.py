"""
Closed forms for the Laplace transforms of t^nu C_mu(t), C = J, Y, I, K.

Two families are provided:

* ``rhs_trig`` -- the right-hand sides of the seven trigonometrically
  parametrized identities, integral over (0, inf) of
  exp(-t cos(theta)) t^nu J_mu(t sin(theta)) and its relatives.
* ``lt_closed`` -- the transforms L{t^nu C_mu(t)}(s) written with P-type
  functions only (no Q), for C = J, I, K.

Hobson-normalized Q enters through complex phase factors. Those values are
computed in complex arithmetic and checked to be real before the real
part is returned, so a wrong normalization fails loudly.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

from . import legendre as lg
from .errors import ConvergenceError, DomainError, ExistenceError, NonConvergence
from .special import BesselKind, check_order, gamma

SQRT_HALF_PI = math.sqrt(0.5 * math.pi)
SQRT_TWO_OVER_PI = math.sqrt(2.0 / math.pi)

#: Relative imaginary residue tolerated before projecting to the real line.
REALNESS_TOL = 1e-10


class IdentityId(str, enum.Enum):
    T1_J = "T1_J"
    T1_Y = "T1_Y"
    T1_I = "T1_I"
    T1_K = "T1_K"
    T1_K2 = "T1_K2"
    T2_Ip = "T2_Ip"
    T2_Kp = "T2_Kp"
    S_JJ = "S_JJ"
    S_II = "S_II"
    S_KK_inside = "S_KK_inside"
    S_KK_outside = "S_KK_outside"
    S_K_at_1 = "S_K_at_1"

    @property
    def kind(self):
        return _IDENTITY_KIND[self]

    @property
    def point_kind(self):
        """'theta', 'xi' or 's': the variable the identity is stated in."""
        if self in (IdentityId.T1_J, IdentityId.T1_Y):
            return "theta"
        if self.value.startswith(("T1_", "T2_")):
            return "xi"
        return "s"

    @property
    def is_trig(self):
        return self.point_kind != "s"


_IDENTITY_KIND = {
    IdentityId.T1_J: BesselKind.J,
    IdentityId.T1_Y: BesselKind.Y,
    IdentityId.T1_I: BesselKind.I,
    IdentityId.T1_K: BesselKind.K,
    IdentityId.T1_K2: BesselKind.K,
    IdentityId.T2_Ip: BesselKind.I,
    IdentityId.T2_Kp: BesselKind.K,
    IdentityId.S_JJ: BesselKind.J,
    IdentityId.S_II: BesselKind.I,
    IdentityId.S_KK_inside: BesselKind.K,
    IdentityId.S_KK_outside: BesselKind.K,
    IdentityId.S_K_at_1: BesselKind.K,
}

TRIG_IDENTITIES = tuple(i for i in IdentityId if i.is_trig)
S_IDENTITIES = tuple(i for i in IdentityId if not i.is_trig)


def converges(kind, nu, mu):
    """Whether the integral of t^nu C_mu(t) converges at t = 0.

    J and I need nu + mu > -1; Y, K and Kh need nu + mu > -1 and nu - mu > -1.
    """
    kind = BesselKind.parse(kind)
    if kind in (BesselKind.J, BesselKind.I):
        return nu + mu > -1.0
    return nu + mu > -1.0 and nu - mu > -1.0


def transform_exists(kind, s):
    """Whether the Laplace transform of t^nu C_mu(t) exists at real s."""
    kind = BesselKind.parse(kind)
    if kind in (BesselKind.J, BesselKind.Y):
        return s > 0.0
    if kind is BesselKind.I:
        return s > 1.0
    return s > -1.0


def check_convergence(kind, nu, mu):
    nu, mu = float(nu), float(mu)
    check_order(nu, what="degree")
    check_order(mu)
    if not converges(kind, nu, mu):
        need = "nu + mu > -1" if kind in (BesselKind.J, BesselKind.I) else "nu +- mu > -1"
        raise ConvergenceError(
            f"integral of t^{nu} {BesselKind.parse(kind).value}_{mu}(t) diverges at 0 "
            f"(needs {need})")


def check_existence(kind, s):
    if not math.isfinite(s) or not transform_exists(kind, s):
        bound = {"J": "s > 0", "Y": "s > 0", "I": "s > 1"}.get(BesselKind.parse(kind).value, "s > -1")
        raise ExistenceError(f"Laplace transform needs {bound}, got s = {s}")


@dataclass(frozen=True)
class TransformQuery:
    """A (kind, degree, order, point) request with its validity flags."""

    kind: BesselKind
    nu: float
    mu: float
    point_kind: str
    point: float

    @property
    def converges(self):
        return converges(self.kind, self.nu, self.mu)

    @property
    def exists(self):
        if self.point_kind == "s":
            return transform_exists(self.kind, self.point)
        return True


def _check_angle(ident, angle):
    if not math.isfinite(angle):
        raise DomainError(f"angle must be finite, got {angle}")
    if ident.point_kind == "theta":
        if not 0.0 < angle < 0.5 * math.pi:
            raise DomainError(f"{ident.value} needs theta in (0, pi/2), got {angle}")
    elif ident is IdentityId.T1_K2:
        return
    elif not angle > 0.0:
        raise DomainError(f"{ident.value} needs xi > 0, got {angle}")


def project_real(z, what="value"):
    """Real part of `z` after checking the imaginary part is roundoff."""
    z = complex(z)
    if abs(z.imag) > REALNESS_TOL * abs(z.real):
        raise NonConvergence(
            f"{what} should be real but has relative imaginary part "
            f"{abs(z.imag) / max(abs(z.real), 1e-300):.3g}")
    return z.real


def rhs_trig_complex(ident, nu, mu, angle):
    """Right-hand side of a trigonometric identity, before real projection."""
    ident = IdentityId(ident)
    if not ident.is_trig:
        raise DomainError(f"{ident.value} is not a trigonometric identity")
    nu, mu, angle = float(nu), float(mu), float(angle)
    check_convergence(ident.kind, nu, mu)
    _check_angle(ident, angle)
    g_plus = gamma(nu + mu + 1.0)
    if ident is IdentityId.T1_J:
        return complex(g_plus * lg.ferrers_p(nu, -mu, math.cos(angle)))
    if ident is IdentityId.T1_Y:
        return complex(-2.0 / math.pi * g_plus * lg.ferrers_q(nu, -mu, math.cos(angle)))
    if ident is IdentityId.T1_I:
        return complex(g_plus * lg.legendre_p(nu, -mu, math.cosh(angle)))
    if ident is IdentityId.T1_K:
        q = lg.q_in_convention(nu, -mu, math.cosh(angle), lg.QConvention.HOBSON)
        return g_plus * cmath.exp(1j * math.pi * mu) * q
    if ident is IdentityId.T1_K2:
        g_minus = gamma(nu - mu + 1.0)
        return complex(SQRT_HALF_PI * g_plus * g_minus / math.sqrt(math.cosh(angle))
                       * lg.ferrers_p(mu - 0.5, -nu - 0.5, math.tanh(angle)))
    coth = 1.0 / math.tanh(angle)
    if ident is IdentityId.T2_Ip:
        q = lg.q_in_convention(mu - 0.5, nu + 0.5, coth, lg.QConvention.HOBSON)
        return (SQRT_TWO_OVER_PI / math.sqrt(math.sinh(angle))
                * cmath.exp(-1j * math.pi * (nu + 0.5)) * q)
    # T2_Kp
    g_minus = gamma(nu - mu + 1.0)
    return complex(SQRT_HALF_PI * g_plus * g_minus / math.sqrt(math.sinh(angle))
                   * lg.legendre_p(mu - 0.5, -nu - 0.5, coth))


def rhs_trig(ident, nu, mu, angle):
    """Closed-form value of a trigonometrically parametrized identity.

    Parameters
    ----------
    ident : IdentityId
        One of the ``T1_*`` / ``T2_*`` identities.
    nu, mu : float
        Power of t and Bessel order.
    angle : float
        theta in (0, pi/2) for J, Y; xi > 0 for I, K; any real xi for T1_K2.

    Raises
    ------
    ConvergenceError, DomainError
    """
    value = rhs_trig_complex(ident, nu, mu, angle)
    return project_real(value, f"{IdentityId(ident).value} right-hand side")


def lt_k_at_one(nu, mu):
    """L{t^nu K_mu(t)} at s = 1, the Mellin transform of exp(-t) K_mu(t)."""
    nu, mu = float(nu), float(mu)
    check_convergence(BesselKind.K, nu, mu)
    return (math.sqrt(math.pi) * gamma(nu + mu + 1.0) * gamma(nu - mu + 1.0)
            / (2.0 ** (nu + 1.0) * gamma(nu + 1.5)))


def lt_closed(kind, nu, mu, s):
    """Laplace transform L{t^nu C_mu(t)}(s) for C = J, I, K (or Kh), Q-free.

    For K the value on (-1, 1) uses the Ferrers function, on (1, inf) the
    off-cut function, and s = 1 is dispatched to :func:`lt_k_at_one`.

    Raises
    ------
    ConvergenceError, ExistenceError, DomainError
    """
    kind = BesselKind.parse(kind)
    if kind is BesselKind.Y:
        raise DomainError("no Q-free closed form for Y; use laplace_transform")
    nu, mu, s = float(nu), float(mu), float(s)
    check_convergence(kind, nu, mu)
    check_existence(kind, s)
    if kind is BesselKind.J:
        r = 1.0 + s * s
        return gamma(nu + mu + 1.0) * r ** (-0.5 * (nu + 1.0)) * lg.ferrers_p(nu, -mu, s / math.sqrt(r))
    if kind is BesselKind.I:
        r = s * s - 1.0
        return gamma(nu + mu + 1.0) * r ** (-0.5 * (nu + 1.0)) * lg.legendre_p(nu, -mu, s / math.sqrt(r))
    if s == 1.0:
        value = lt_k_at_one(nu, mu)
    else:
        pref = SQRT_HALF_PI * gamma(nu + mu + 1.0) * gamma(nu - mu + 1.0)
        expo = -0.25 * (2.0 * nu + 1.0)
        if s < 1.0:
            value = pref * (1.0 - s * s) ** expo * lg.ferrers_p(mu - 0.5, -nu - 0.5, s)
        else:
            value = pref * (s * s - 1.0) ** expo * lg.legendre_p(mu - 0.5, -nu - 0.5, s)
    if kind is BesselKind.Kh:
        return (2.0 / math.pi) * value
    return value


def trig_of_s(kind, s):
    """Angle at which a trigonometric identity corresponds to Laplace point s.

    J (and Y): theta = arccot(s), s > 0. I (and K): xi with coth(xi) = s, s > 1.
    """
    kind = BesselKind.parse(kind)
    s = float(s)
    if kind in (BesselKind.J, BesselKind.Y):
        if not s > 0.0 or not math.isfinite(s):
            raise DomainError(f"theta = arccot(s) needs s > 0, got {s}")
        return math.atan2(1.0, s)
    if not s > 1.0 or not math.isfinite(s):
        raise DomainError(f"coth(xi) = s needs s > 1, got {s}")
    return math.atanh(1.0 / s)


def laplace_transform(kind, nu, mu, s):
    """L{t^nu C_mu(t)}(s) for every kind, Y included.

    Y has no Q-free form; it is obtained from the theta identity as
    sin(theta)^(nu+1) times its right-hand side with theta = arccot(s).
    """
    kind = BesselKind.parse(kind)
    if kind is not BesselKind.Y:
        return lt_closed(kind, nu, mu, s)
    nu, mu, s = float(nu), float(mu), float(s)
    check_convergence(kind, nu, mu)
    check_existence(kind, s)
    theta = trig_of_s(kind, s)
    return math.sin(theta) ** (nu + 1.0) * rhs_trig(IdentityId.T1_Y, nu, mu, theta)


def closed_form(ident, nu, mu, point):
    """Closed form of any identity at its natural point (angle or s)."""
    ident = IdentityId(ident)
    if ident.is_trig:
        return rhs_trig(ident, nu, mu, point)
    point = float(point)
    if ident is IdentityId.S_KK_inside and not -1.0 < point < 1.0:
        raise DomainError(f"S_KK_inside needs s in (-1, 1), got {point}")
    if ident is IdentityId.S_KK_outside and not point > 1.0:
        raise DomainError(f"S_KK_outside needs s > 1, got {point}")
    if ident is IdentityId.S_K_at_1:
        if point != 1.0:
            raise DomainError(f"S_K_at_1 is stated at s = 1, got {point}")
        return lt_k_at_one(nu, mu)
    return lt_closed(ident.kind, nu, mu, point)


def s_identity_for(kind, s):
    """The Q-free identity id that covers L{t^nu C_mu}(s)."""
    kind = BesselKind.parse(kind)
    if kind is BesselKind.J:
        return IdentityId.S_JJ
    if kind is BesselKind.I:
        return IdentityId.S_II
    if kind in (BesselKind.K, BesselKind.Kh):
        if s == 1.0:
            return IdentityId.S_K_at_1
        return IdentityId.S_KK_inside if s < 1.0 else IdentityId.S_KK_outside
    raise DomainError(f"no Q-free identity for kind {kind.value}")
