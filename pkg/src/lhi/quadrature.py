"""
Brute-force quadrature of the left-hand integrals.

The finite integrals (incomplete LHIs) use globally adaptive bisection with
a 10-point Gauss / 21-point Kronrod pair on every panel; the panel error is
the difference of the two embedded rules. Semi-infinite integrals are cut
at a point T* chosen from an explicit envelope of the integrand, and the
envelope integral over (T*, inf) is added to the error estimate.

Integrands are evaluated with exponentially scaled Bessel functions, so
large arguments neither overflow nor lose the decay of the exponential.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np
from scipy import special as sc

from .errors import AccuracyError, DomainError
from .special import BesselKind, bessel_array
from .transforms import (IdentityId, check_convergence, check_existence)

DEFAULT_BUDGET = 2_000_000

#: Panels are never wider than this for the oscillatory kinds (half period).
OSCILLATION_PANEL = math.pi

_EPS = float(np.finfo(float).eps)

# Gauss-Kronrod (G10, K21) nodes on [-1, 1] with both weight sets.
_XGK = np.array([
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
])
_WK_HALF = np.array([
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077958109831074,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
])
_WK_CENTRE = 0.149445554002916905664936468389821
_WG_HALF = np.array([
    0.0, 0.066671344308688137593568809893332,
    0.0, 0.149451349150580593145776339657697,
    0.0, 0.219086362515982043995534934228163,
    0.0, 0.269266719309996355091226921569469,
    0.0, 0.295524224714752870173892994651338,
])

NODES = np.concatenate([-_XGK, [0.0], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WK_HALF, [_WK_CENTRE], _WK_HALF[::-1]])
GAUSS_WEIGHTS = np.concatenate([_WG_HALF, [0.0], _WG_HALF[::-1]])


@dataclass(frozen=True)
class QuadratureResult:
    """Outcome of an oracle integration.

    ``truncation_T`` is the cut point of a semi-infinite integral, or
    ``None`` for a finite one.
    """

    value: float
    error_estimate: float
    evaluations: int
    truncation_T: float | None = None

    def scaled(self, factor):
        factor = float(factor)
        return QuadratureResult(self.value * factor, self.error_estimate * abs(factor),
                                self.evaluations, self.truncation_T)


def eval_budget():
    """Integrand-evaluation budget, overridable by ``LHI_EVAL_BUDGET``."""
    raw = os.environ.get("LHI_EVAL_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        budget = int(float(raw))
    except ValueError:
        raise DomainError(f"LHI_EVAL_BUDGET must be a number, got {raw!r}") from None
    if budget <= 0:
        raise DomainError("LHI_EVAL_BUDGET must be positive")
    return budget


class _Counter:
    def __init__(self, budget):
        self.budget = budget
        self.used = 0

    def charge(self, n):
        self.used += n
        if self.used > self.budget:
            raise AccuracyError(
                f"quadrature exceeded the evaluation budget of {self.budget}")


def _panels(func, a, b, counter):
    """Kronrod values and error estimates for the panels [a_i, b_i]."""
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    x = c[:, None] + h[:, None] * NODES[None, :]
    counter.charge(x.size)
    f = func(x)
    if not np.all(np.isfinite(f)):
        raise AccuracyError("integrand is not finite at a quadrature node")
    kron = h * (f @ KRONROD_WEIGHTS)
    gauss = h * (f @ GAUSS_WEIGHTS)
    resabs = np.abs(h) * (np.abs(f) @ KRONROD_WEIGHTS)
    err = np.maximum(np.abs(kron - gauss), 50.0 * _EPS * resabs)
    return kron, err


def _adaptive(pieces, rtol, atol, counter):
    """Globally adaptive integration of several (func, breakpoints) pieces.

    Each round bisects the panels with the largest errors until the total
    estimate is below max(atol, rtol * |value|).
    """
    state = []
    for func, edges in pieces:
        edges = np.asarray(edges, dtype=float)
        a, b = edges[:-1].copy(), edges[1:].copy()
        val, err = _panels(func, a, b, counter)
        state.append([func, a, b, val, err])
    while True:
        total = sum(float(np.sum(s[3])) for s in state)
        total_err = sum(float(np.sum(s[4])) for s in state)
        goal = max(atol, rtol * abs(total))
        if total_err <= goal:
            return total, total_err
        errs = np.concatenate([s[4] for s in state])
        order = np.argsort(errs)[::-1]
        cum = np.cumsum(errs[order])
        n_split = int(np.searchsorted(cum, total_err - 0.5 * goal)) + 1
        threshold = errs[order[min(n_split, len(order)) - 1]]
        refined = False
        for s in state:
            func, a, b, val, err = s
            pick = err >= threshold
            if not np.any(pick):
                continue
            mid = 0.5 * (a[pick] + b[pick])
            tiny = np.abs(b[pick] - a[pick]) <= 1e3 * _EPS * np.maximum(np.abs(mid), _EPS)
            if np.all(tiny):
                continue
            na = np.concatenate([a[pick], mid])
            nb = np.concatenate([mid, b[pick]])
            nval, nerr = _panels(func, na, nb, counter)
            keep = ~pick
            s[1] = np.concatenate([a[keep], na])
            s[2] = np.concatenate([b[keep], nb])
            s[3] = np.concatenate([val[keep], nval])
            s[4] = np.concatenate([err[keep], nerr])
            refined = True
        if not refined:
            raise AccuracyError(
                f"quadrature stalled at error {total_err:.3g} (goal {goal:.3g})")


def _decay_shift(kind):
    """sigma with |C_mu(t)| ~ exp(sigma t) for large t."""
    if kind is BesselKind.I:
        return 1.0
    if kind in (BesselKind.K, BesselKind.Kh):
        return -1.0
    return 0.0


def leading_exponent(kind, nu, mu):
    """Exponent e with t^nu C_mu(t) ~ t^e (up to logs) as t -> 0."""
    kind = BesselKind.parse(kind)
    if kind in (BesselKind.J, BesselKind.I):
        if mu < 0 and mu == math.floor(mu):
            return nu - mu
        return nu + mu
    return nu - abs(mu)


def _integrand(kind, nu, mu, s):
    sigma = _decay_shift(kind)
    lam = s - sigma

    def f(t):
        with np.errstate(over="ignore", invalid="ignore", under="ignore"):
            out = np.exp(-lam * t) * t ** nu * bessel_array(kind, mu, t, scaled=True)
        # Nodes crushed against t = 0 by the grading may under/overflow;
        # their contribution is far below any tolerance.
        bad = ~np.isfinite(out) & (t < 1e-30)
        if np.any(bad):
            out = np.where(bad, 0.0, out)
        return out

    return f


def _pieces(kind, nu, mu, s, lo, hi):
    """Quadrature pieces for the integral over [lo, hi], lo = 0 or lo > 0."""
    f = _integrand(kind, nu, mu, s)
    pieces = []
    start = lo
    if lo == 0.0:
        a0 = min(hi, 1.0)
        e = leading_exponent(kind, nu, mu)
        p = 1.0 / (1.0 + e) if -1.0 < e < 0.0 else 1.0
        if p == 1.0:
            pieces.append((f, np.linspace(0.0, a0, 2)))
        else:
            def graded(v, a0=a0, p=p):
                return a0 * p * v ** (p - 1.0) * f(a0 * v ** p)
            pieces.append((graded, np.array([0.0, 1.0])))
        start = a0
    if hi > start:
        width = OSCILLATION_PANEL if kind in (BesselKind.J, BesselKind.Y) else 4.0
        n = max(1, int(math.ceil((hi - start) / width)))
        pieces.append((f, np.linspace(start, hi, n + 1)))
    return pieces


def ilhi(kind, nu, mu, T, s, rtol=1e-10, atol=1e-12):
    """Incomplete LHI: the integral of exp(-st) t^nu C_mu(t) over [0, T].

    Parameters
    ----------
    kind : BesselKind or str
    nu, mu : float
        Power and order; the integral must converge at t = 0.
    T : float
        Upper limit, T > 0.
    s : float
        Any real exponent.
    rtol, atol : float
        The error estimate is below max(atol, rtol * |value|).

    Returns
    -------
    QuadratureResult

    Raises
    ------
    ConvergenceError
        The singularity at t = 0 is not integrable.
    AccuracyError
        The target was not met within the evaluation budget.
    """
    kind = BesselKind.parse(kind)
    nu, mu, T, s = float(nu), float(mu), float(T), float(s)
    check_convergence(kind, nu, mu)
    if not T > 0.0 or not math.isfinite(T):
        raise DomainError(f"ilhi needs a finite T > 0, got {T}")
    if not math.isfinite(s):
        raise DomainError("s must be finite")
    counter = _Counter(eval_budget())
    value, err = _adaptive(_pieces(kind, nu, mu, s, 0.0, T), rtol, atol, counter)
    return QuadratureResult(value, err, counter.used, None)


_ASYMPTOTIC = {
    BesselKind.J: math.sqrt(2.0 / math.pi),
    BesselKind.Y: math.sqrt(2.0 / math.pi),
    BesselKind.I: 1.0 / math.sqrt(2.0 * math.pi),
    BesselKind.K: math.sqrt(0.5 * math.pi),
    BesselKind.Kh: math.sqrt(2.0 / math.pi),
}


def envelope_constant(kind, mu, T):
    """A with |scaled C_mu(t)| <= A t^(-1/2) for all t >= T.

    sqrt(t) times the modulus of the Hankel function (J, Y), of I e^{-t} or
    of K e^{t} is monotone in t for large t and tends to a known constant;
    the larger of the limit and the value at T, with a 1.5 margin, bounds it.
    """
    kind = BesselKind.parse(kind)
    if kind in (BesselKind.J, BesselKind.Y):
        at_T = math.hypot(float(sc.jv(mu, T)), float(sc.yv(mu, T)))
    else:
        at_T = abs(float(bessel_array(kind, mu, T, scaled=True)))
    return 1.5 * max(_ASYMPTOTIC[kind], math.sqrt(T) * at_T)


def tail_bound(kind, nu, mu, s, T):
    """Bound on |integral of exp(-st) t^nu C_mu(t) over (T, inf)|."""
    kind = BesselKind.parse(kind)
    lam = s - _decay_shift(kind)
    a = nu + 0.5
    amp = envelope_constant(kind, mu, T)
    x = lam * T
    if a > 0.0:
        incomplete = float(sc.gammaincc(a, x)) * math.gamma(a)
        return amp * lam ** (-a) * incomplete
    # t^(a-1) <= T^(a-1) on (T, inf) when a <= 1
    return amp * T ** (a - 1.0) * math.exp(-x) / lam


def truncation_point(kind, nu, mu, s, target, start=8.0):
    """Smallest doubling of `start` at which the tail bound is below `target`."""
    T = float(start)
    for _ in range(200):
        if tail_bound(kind, nu, mu, s, T) < target:
            return T
        T *= 2.0
    raise AccuracyError("no truncation point found for the tail bound")


def lt_oracle(kind, nu, mu, s, tol=1e-10):
    """Laplace transform of t^nu C_mu(t) at s by quadrature plus tail bound.

    The interval is extended by doublings of T until the tail envelope is
    below a tenth of max(tol * |value|, 1e-3 * tol); the returned error
    estimate is the quadrature estimate plus the tail bound.

    Raises
    ------
    ConvergenceError, ExistenceError, AccuracyError
    """
    kind = BesselKind.parse(kind)
    nu, mu, s, tol = float(nu), float(mu), float(s), float(tol)
    check_convergence(kind, nu, mu)
    check_existence(kind, s)
    if not tol >= 1e-12:
        raise DomainError(f"tol must be at least 1e-12, got {tol}")
    counter = _Counter(eval_budget())
    lam = s - _decay_shift(kind)
    T = max(8.0, 4.0 / lam)
    # A rough estimate of the size of the transform sets the absolute goal.
    total, err = _adaptive(_pieces(kind, nu, mu, s, 0.0, T), 0.5 * tol, 1e-3 * tol, counter)
    while True:
        target = max(tol * abs(total), 1e-3 * tol)
        tail = tail_bound(kind, nu, mu, s, T)
        if tail < 0.1 * target:
            break
        more, more_err = _adaptive(_pieces(kind, nu, mu, s, T, 2.0 * T),
                                   0.5 * tol, 0.25 * target, counter)
        total += more
        err += more_err
        T *= 2.0
    target = max(tol * abs(total), 1e-3 * tol)
    if err + tail > target:
        # Tighten the finite part once against the final scale.
        total, err = _adaptive(_pieces(kind, nu, mu, s, 0.0, T), 0.5 * tol,
                               0.5 * target, counter)
    return QuadratureResult(total, err + tail, counter.used, T)


def _lhs_reduction(ident, angle):
    """(kind, Laplace point, scale) with LHS = scale^(-nu-1) * L{t^nu C}(point)."""
    if ident in (IdentityId.T1_J, IdentityId.T1_Y):
        if not 0.0 < angle < 0.5 * math.pi:
            raise DomainError(f"{ident.value} needs theta in (0, pi/2), got {angle}")
        return ident.kind, math.cos(angle) / math.sin(angle), math.sin(angle)
    if ident is IdentityId.T1_K2:
        return BesselKind.K, math.tanh(angle), math.cosh(angle)
    if not angle > 0.0:
        raise DomainError(f"{ident.value} needs xi > 0, got {angle}")
    # T1_I, T1_K and their rewritten forms T2_Ip, T2_Kp share these integrals.
    return ident.kind, 1.0 / math.tanh(angle), math.sinh(angle)


def generic_lhs(ident, nu, mu, point, tol=1e-10):
    """Quadrature value of the left-hand side of any identity.

    Trigonometric identities integrate, e.g., exp(-t cosh xi) t^nu
    K_mu(t sinh xi); the substitution u = t sinh xi turns this into
    sinh(xi)^(-nu-1) times a Laplace transform at coth xi, which is what
    is integrated. The s-form identities are plain Laplace transforms.
    """
    ident = IdentityId(ident)
    nu, mu, point = float(nu), float(mu), float(point)
    if not math.isfinite(point):
        raise DomainError("point must be finite")
    if not ident.is_trig:
        return lt_oracle(ident.kind, nu, mu, point, tol)
    kind, s, scale = _lhs_reduction(ident, point)
    check_convergence(kind, nu, mu)
    return lt_oracle(kind, nu, mu, s, tol).scaled(scale ** (-nu - 1.0))
