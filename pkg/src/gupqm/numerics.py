"""Special functions and transform machinery shared by all other modules.

Provides erfc/erfcx, half-order modified Bessel K, a checked adaptive
quadrature, the forward numerical Laplace transform, fixed-Talbot inverse
Laplace transform, Newton root finding and Richardson extrapolation.
"""

from __future__ import annotations

import math
import warnings

import numpy as np
from scipy import special as _sp
from scipy.integrate import quad as _quad

from .errors import (
    ConvergenceError,
    DivergenceError,
    DomainError,
    OrderValidityWarning,
    RootFindError,
)
from .params import Quadratures, TalbotSpec

_HALF_ORDERS = (-0.5, 0.5, 1.5)


def erfc(x: float) -> float:
    """Complementary error function (2/sqrt(pi)) * integral_x^inf e^{-t^2} dt."""
    if not math.isfinite(x):
        raise DomainError("erfc: argument must be finite")
    return float(_sp.erfc(x))


def erfcx(x: float) -> float:
    """Scaled complementary error function e^{x^2} erfc(x).

    Needed wherever erfc is paired with a growing exponential: the naive
    product overflows for arguments around 30 while the true value is O(1).
    """
    if not math.isfinite(x):
        raise DomainError("erfcx: argument must be finite")
    return float(_sp.erfcx(x))


def erfc_series_oracle(x: float, terms: int = 200) -> float:
    """Independent erfc evaluation by Taylor series of erf (small |x|) or the
    Laplace continued fraction (large x).  Test oracle; not used in closed forms.
    """
    if not math.isfinite(x):
        raise DomainError("erfc_series_oracle: argument must be finite")
    if x < 0:
        return 2.0 - erfc_series_oracle(-x, terms)
    if x <= 3.0:
        # erf(x) = (2/sqrt(pi)) sum (-1)^n x^{2n+1} / (n! (2n+1))
        total, term = 0.0, x
        for n in range(terms):
            total += term / (2 * n + 1)
            term *= -x * x / (n + 1)
            if abs(term) < 1e-18 * max(abs(total), 1.0):
                break
        return 1.0 - 2.0 / math.sqrt(math.pi) * total
    # continued fraction: erfc(x) = e^{-x^2}/sqrt(pi) / (x + 1/(2x + 2/(x + 3/(2x + ...))))
    cf = 0.0
    for n in range(terms, 0, -1):
        if n % 2:
            cf = n / (2 * x + cf)
        else:
            cf = n / (x + cf)
    return math.exp(-x * x) / math.sqrt(math.pi) / (x + cf)


def bessel_k_half(nu: float, z: float) -> float:
    """Modified Bessel K_nu(z) for half-integer nu in {-1/2, 1/2, 3/2}.

    Closed elementary forms; K_{-1/2} = K_{1/2} by symmetry.
    """
    if nu not in _HALF_ORDERS:
        raise DomainError(f"bessel_k_half: order must be one of {_HALF_ORDERS}")
    if not (math.isfinite(z) and z > 0):
        raise DomainError("bessel_k_half: z must be positive")
    base = math.sqrt(math.pi / (2.0 * z)) * math.exp(-z)
    if nu in (-0.5, 0.5):
        return base
    return base * (1.0 + 1.0 / z)


def quad_checked(f, a, b, quad: Quadratures = Quadratures(), *, points=None) -> float:
    """Adaptive quadrature with an explicit trust check on the error estimate."""
    val, abserr, info, *msg = _quad(
        f, a, b,
        epsabs=quad.abs_tol, epsrel=quad.rel_tol, limit=quad.max_subdivisions,
        points=points, full_output=1,
    )
    tol = max(20.0 * quad.abs_tol, 50.0 * quad.rel_tol * abs(val))
    if msg and abserr > tol:
        raise ConvergenceError(
            f"quadrature on [{a}, {b}] did not converge: estimate {abserr:.2e} "
            f"exceeds tolerance {tol:.2e} ({msg[0]})"
        )
    return val


def verify_bessel_integral(nu: float, beta: float, gamma: float,
                           quad: Quadratures = Quadratures()) -> float:
    """Relative residual of the Laplace-type integral identity

        integral_0^inf x^{nu-1} e^{-beta/x - gamma x} dx
            = 2 (beta/gamma)^{nu/2} K_nu(2 sqrt(beta gamma)).
    """
    if not (beta > 0 and gamma > 0):
        raise DomainError("verify_bessel_integral: beta, gamma must be positive")

    def integrand(x):
        return x ** (nu - 1.0) * math.exp(-beta / x - gamma * x)

    head = quad_checked(integrand, 0.0, 1.0, quad)
    tail = quad_checked(lambda u: integrand(1.0 / u) / u**2, 0.0, 1.0, quad)
    lhs = head + tail
    if nu in _HALF_ORDERS:
        k = bessel_k_half(nu, 2.0 * math.sqrt(beta * gamma))
    else:
        k = float(_sp.kv(nu, 2.0 * math.sqrt(beta * gamma)))
    rhs = 2.0 * (beta / gamma) ** (nu / 2.0) * k
    return abs(lhs - rhs) / abs(rhs)


# ----------------------------------------------------------------------
# forward Laplace transform
# ----------------------------------------------------------------------

def laplace_forward(f, eps: float, quad: Quadratures = Quadratures()) -> float:
    """integral_0^inf f(tau) e^{-eps tau} d tau by adaptive quadrature.

    The range is split at tau = 1 and the tail mapped by tau -> 1/u to tame
    the endpoint.  Divergence probes guard both endpoints: integrand growth
    faster than tau^{-1+delta} at tau -> 0+, and a non-decaying damped tail
    (eps at or left of a growth rate of f) at tau -> inf.
    """
    if not eps > 0:
        raise DomainError("laplace_forward: eps must be > 0")

    def damped_tail(u):
        damp = math.exp(-eps / u)
        if damp == 0.0:
            # the damping has underflowed; any representable f is annihilated
            return 0.0
        try:
            return f(1.0 / u) * damp / (u * u)
        except OverflowError:
            raise DivergenceError(
                f"laplace_forward: f overflows at tau = {1.0 / u:.3e} where the "
                f"damping e^(-eps tau) is still {damp:.3e}; eps = {eps} is too "
                "close to a growth rate of f"
            ) from None

    with warnings.catch_warnings():
        # probing and adaptive subdivision legitimately sample f at extreme
        # tau; order-validity warnings there are not about the transform value
        warnings.simplefilter("ignore", OrderValidityWarning)
        _probe_origin(f, quad)
        _probe_tail(f, eps, quad)
        head = quad_checked(lambda t: f(t) * math.exp(-eps * t), 0.0, 1.0, quad)
        tail = quad_checked(damped_tail, 0.0, 1.0, quad)
    return head + tail


def _probe_origin(f, quad):
    t1, t2 = 1e-5, 1e-7
    try:
        f1, f2 = abs(f(t1)), abs(f(t2))
    except OverflowError:
        raise DivergenceError(
            "laplace_forward: f exceeds the float range already at tau -> 0+"
        ) from None
    floor = max(quad.abs_tol, 1e-280)
    if f1 > floor and f2 > floor:
        p = math.log(f2 / f1) / math.log(t2 / t1)
        if p <= -0.95:
            raise DivergenceError(
                f"laplace_forward: integrand grows like tau^{p:.2f} at tau -> 0+ "
                "(not integrable)"
            )


def _probe_tail(f, eps, quad):
    t1, t2 = 24.0, 48.0
    try:
        g1 = f(t1) * math.exp(-eps * t1)
        g2 = f(t2) * math.exp(-eps * t2)
    except OverflowError:
        # inconclusive as separate factors; the damped tail quadrature decides
        return
    floor = max(quad.abs_tol, 1e-280)
    if abs(g2) > floor and abs(g2) >= abs(g1):
        raise DivergenceError(
            "laplace_forward: damped integrand is not decaying at tau -> inf "
            f"(|g({t1})| = {abs(g1):.3e}, |g({t2})| = {abs(g2):.3e}); "
            "eps lies at or left of a growth rate of f"
        )


# ----------------------------------------------------------------------
# fixed-Talbot inverse Laplace transform
# ----------------------------------------------------------------------

def _talbot_sum(F, tau: float, M: int, r: float):
    """Trapezoid sum over the Talbot contour s(theta) = r theta (cot theta + i).

    Returns (value, magnitude scale of the summands); the scale bounds the
    cancellation noise floor of the sum."""
    k = np.arange(1, M)
    th = k * np.pi / M
    cot = np.cos(th) / np.sin(th)
    s = r * th * (cot + 1j)
    sig = th + (th * cot - 1.0) * cot
    vals = np.array([F(si) for si in s], dtype=complex)
    terms = np.exp(tau * s) * vals * (1.0 + 1j * sig)
    head = 0.5 * np.exp(r * tau) * complex(F(complex(r)))
    total = head + np.sum(terms)
    scale = (r / M) * (abs(head) + float(np.sum(np.abs(terms))))
    return float((r / M) * total.real), scale


def talbot_inverse(F, tau: float, spec: TalbotSpec = TalbotSpec(), *,
                   rel_tol: float = 1e-7, abscissa_min: float = 0.0) -> float:
    """Inverse Laplace transform at tau > 0 on the fixed Talbot contour.

    The contour crosses the real axis at r = 2 M s / (5 tau) (Abate-Valko rule
    at the base node count, scaled by spec.contour_scale) and is kept there
    while the node count is doubled for the convergence check, so doubling
    refines the same trapezoid sum instead of inflating the e^{r tau} roundoff
    floor.  All singularities of F, in particular the bound-state pole on the
    positive real axis, must lie left of r; pass abscissa_min to enforce a
    known pole location.
    """
    if not tau > 0:
        raise DomainError("talbot_inverse: tau must be > 0")
    M = spec.node_count
    r = 2.0 * M * spec.contour_scale / (5.0 * tau)
    if abscissa_min > 0 and 1.3 * abscissa_min > r:
        # clamping the contour right of a known pole; restore the node-count
        # relation M = 5 r tau / 2 or the trapezoid undersamples e^{tau s}
        r = 1.3 * abscissa_min
        M = max(M, 2 * math.ceil(1.25 * r * tau + 8.0))
    y1, scale1 = _talbot_sum(F, tau, M, r)
    y2, scale2 = _talbot_sum(F, tau, 2 * M, r)
    noise = 1e-14 * max(scale1, scale2) + 1e-300
    if abs(y1 - y2) > rel_tol * max(abs(y1), abs(y2)) + noise:
        raise ConvergenceError(
            f"talbot_inverse: node doubling {M} -> {2*M} moved the result from "
            f"{y1!r} to {y2!r} (rel_tol {rel_tol}, noise floor {noise:.1e})"
        )
    return y2


# ----------------------------------------------------------------------
# root finding and extrapolation
# ----------------------------------------------------------------------

def newton_root(g, gprime, x0: float, tol: float, max_iter: int = 100) -> float:
    """Newton iteration; raises RootFindError with the trace on failure."""
    x = float(x0)
    trace = []
    for _ in range(max_iter):
        gx = g(x)
        trace.append((x, gx))
        if abs(gx) <= tol:
            return x
        dg = gprime(x)
        if dg == 0 or not math.isfinite(dg):
            raise RootFindError(f"newton_root: derivative underflow at x = {x!r}", trace)
        step = gx / dg
        x -= step
        if not math.isfinite(x):
            raise RootFindError("newton_root: iteration diverged", trace)
    gx = g(x)
    if abs(gx) <= tol:
        return x
    raise RootFindError(
        f"newton_root: no convergence in {max_iter} iterations (|g| = {abs(gx):.2e})",
        trace,
    )


def richardson_extrapolate(samples, order: int):
    """Neville extrapolation of (h, value) samples to h = 0.

    The error is assumed to be a polynomial series in h^order; the full
    tableau over all samples is used.  Returns (value, error_estimate) with
    the estimate taken as the spread of the last two extrapolation columns.
    Values may be real or complex.
    """
    if order < 1:
        raise DomainError("richardson_extrapolate: order must be >= 1")
    pts = sorted(samples, key=lambda s: -abs(s[0]))
    if len(pts) < order + 1:
        raise DomainError(
            f"richardson_extrapolate: need at least {order + 1} samples, got {len(pts)}"
        )
    hs = [abs(h) ** order for h, _ in pts]
    if len(set(hs)) != len(hs):
        raise DomainError("richardson_extrapolate: sample spacings must be distinct")
    col = [v for _, v in pts]
    heads = [col[0]]
    for j in range(1, len(pts)):
        col = [
            (hs[i] * col[i + 1] - hs[i + j] * col[i]) / (hs[i] - hs[i + j])
            for i in range(len(col) - 1)
        ]
        heads.append(col[0])
    estimate = abs(heads[-1] - heads[-2]) if len(heads) > 1 else 0.0
    return heads[-1], estimate
