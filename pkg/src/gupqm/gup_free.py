"""Free-particle closed forms of the minimal-length-corrected theory.

Dispersion, real-time kernel, Euclidean (Brownian) propagator and the
energy-dependent Green's function, all exact in the first-order-truncated
theory: each closed form is the exact integral or Laplace transform of the
spectral integrand expanded to first order in alpha, so the quadrature
oracles below reproduce them to quadrature accuracy (differences to any
resummed variant are O(alpha^2)).
"""

from __future__ import annotations

import cmath
import math

from scipy.integrate import quad as _quad

from .errors import DomainError
from .numerics import quad_checked, richardson_extrapolate
from .params import PhysParams, PropagatorQuery, Quadratures, flag_order_validity

FULL = "full-exponent"
TRUNCATED = "truncated"


def dispersion(p: PhysParams, k: float) -> float:
    """Plane-wave energy hbar^2 k^2 / 2m + alpha hbar^4 k^4 / m."""
    return p.hbar**2 * k**2 / (2.0 * p.m) + p.alpha * p.hbar**4 * k**4 / p.m


def free_euclidean(p: PhysParams, q: PropagatorQuery) -> float:
    """Euclidean propagator at tau > 0 (first-order closed form)."""
    if q.tau is None:
        raise DomainError("free_euclidean: query must carry a Euclidean tau")
    tau, dq = q.tau, q.dq
    corr = _euclid_correction(p, dq, tau)
    flag_order_validity(corr, "free_euclidean")
    pref = math.sqrt(p.m / (2.0 * math.pi * p.hbar * tau))
    return pref * math.exp(-p.m * dq * dq / (2.0 * p.hbar * tau)) * (1.0 + corr)


def _euclid_correction(p, dq, tau):
    a, m, hb = p.alpha, p.m, p.hbar
    return (-3.0 * a * hb * m / tau
            + 6.0 * a * m * m * dq * dq / tau**2
            - a * m**3 * dq**4 / (hb * tau**3))


def free_kernel(p: PhysParams, q: PropagatorQuery) -> complex:
    """Real-time kernel at T != 0; principal square root (phase e^{-i pi/4}
    for T > 0).  Analytic continuation tau -> iT of free_euclidean."""
    if q.T is None:
        raise DomainError("free_kernel: query must carry a real time T")
    T, dq = q.T, q.dq
    a, m, hb = p.alpha, p.m, p.hbar
    corr = (3j * a * hb * m / T
            - 6.0 * a * m * m * dq * dq / T**2
            - 1j * a * m**3 * dq**4 / (hb * T**3))
    flag_order_validity(abs(corr), "free_kernel")
    pref = cmath.sqrt(m / (2j * math.pi * hb * T))
    return pref * cmath.exp(1j * m * dq * dq / (2.0 * hb * T)) * (1.0 + corr)


def free_green(p: PhysParams, q: PropagatorQuery) -> float:
    """Energy-dependent Green's function: exact Laplace transform of
    free_euclidean in tau at eps > 0."""
    if q.eps is None:
        raise DomainError("free_green: query must carry an energy eps")
    eps = q.eps
    w = p.alpha * p.hbar * p.m * eps
    z = math.sqrt(2.0 * p.m * eps / p.hbar) * abs(q.dq)
    corr = 6.0 * w - 2.0 * w * z
    flag_order_validity(corr, "free_green")
    return math.sqrt(p.m / (2.0 * p.hbar * eps)) * math.exp(-z) * (1.0 + corr)


# ----------------------------------------------------------------------
# quadrature oracles
# ----------------------------------------------------------------------

def euclidean_oracle(p: PhysParams, q: PropagatorQuery, mode: str = FULL,
                     quad: Quadratures = Quadratures()) -> float:
    """Spectral-representation oracle (1/pi) int_0^kmax cos(k dq) w(k) dk with
    w = e^{-E(k) tau / hbar} (full-exponent) or its first-order expansion
    (truncated).  kmax is set by the Gaussian envelope at the working abs_tol.
    """
    if q.tau is None:
        raise DomainError("euclidean_oracle: query must carry a Euclidean tau")
    if mode not in (FULL, TRUNCATED):
        raise DomainError(f"euclidean_oracle: mode must be {FULL!r} or {TRUNCATED!r}")
    tau, dq = q.tau, q.dq
    hb, m, a = p.hbar, p.m, p.alpha

    depth = math.log(max(1.0 / max(quad.abs_tol, 1e-300), math.e))
    kmax = math.sqrt(2.0 * m * (depth + 10.0) / (hb * tau)) * 1.2

    if mode == FULL:
        def w(k):
            return math.exp(-dispersion(p, k) * tau / hb)
    else:
        def w(k):
            return math.exp(-hb * k * k * tau / (2.0 * m)) * (1.0 - a * hb**3 * k**4 * tau / m)

    val = quad_checked(lambda k: math.cos(k * dq) * w(k), 0.0, kmax, quad)
    return val / math.pi


def kernel_oracle(p: PhysParams, q: PropagatorQuery,
                  etas=(0.08, 0.04, 0.02, 0.01),
                  quad: Quadratures = Quadratures()) -> complex:
    """Real-time kernel oracle: the spectral integral evaluated at complex time
    tau = eta + iT (absolutely convergent for eta > 0), extrapolated eta -> 0.

    The k-integral at complex time is taken along the rotated ray
    k = e^{-i pi/8} u, on which both the Gaussian and the quartic damping have
    strictly negative real exponents; rotation is contour deformation of an
    analytic integrand, so each eta-value is exact to quadrature accuracy.
    """
    if q.T is None:
        raise DomainError("kernel_oracle: query must carry a real time T")
    T, dq = q.T, q.dq
    if T < 0:
        raise DomainError("kernel_oracle: T must be positive (use symmetry for T < 0)")
    hb, m, a = p.hbar, p.m, p.alpha
    rot = cmath.exp(-1j * math.pi / 8.0)

    def value_at(tau_c):
        def f(u):
            k = rot * u
            damp = -(hb * k * k / (2.0 * m) + a * hb**3 * k**4 / m) * tau_c
            total = 0.0 + 0.0j
            for sign in (1.0, -1.0):
                arg = 1j * sign * k * dq + damp  # combined before exponentiating
                if arg.real > -700.0:
                    total += cmath.exp(arg)
            return total * rot

        def bound(part):
            return quad_checked(lambda u: part(f(u)), 0.0, math.inf, quad)

        return complex(bound(lambda z: z.real), bound(lambda z: z.imag)) / (2.0 * math.pi)

    samples = [(eta, value_at(eta + 1j * T)) for eta in etas]
    val, _ = richardson_extrapolate(samples, order=1)
    return val


# ----------------------------------------------------------------------
# suite helpers (nested-quadrature identities of the full-exponent oracle)
# ----------------------------------------------------------------------

def semigroup_residual(p: PhysParams, q_f: float, q_0: float,
                       tau1: float, tau2: float,
                       quad: Quadratures = Quadratures()) -> float:
    """|int dq G(q_f, q; tau1) G(q, q_0; tau2) - G(q_f, q_0; tau1 + tau2)|
    in full-exponent mode."""
    inner_quad = Quadratures(1e-11, 1e-13, quad.max_subdivisions)

    def g(qa, qb, tau):
        return euclidean_oracle(p, PropagatorQuery.euclidean(qa, qb, tau),
                                FULL, inner_quad)

    width = 9.0 * math.sqrt(p.hbar * (tau1 + tau2) / p.m)
    lo = min(q_f, q_0) - width
    hi = max(q_f, q_0) + width
    conv, _ = _quad(lambda qq: g(q_f, qq, tau1) * g(qq, q_0, tau2),
                    lo, hi, epsabs=1e-10, epsrel=1e-9, limit=200)
    direct = g(q_f, q_0, tau1 + tau2)
    return abs(conv - direct)


def normalization_residual(p: PhysParams, q_0: float, tau: float,
                           quad: Quadratures = Quadratures()) -> float:
    """|int dq_f G(q_f, q_0; tau) - 1| in full-exponent mode."""
    inner_quad = Quadratures(1e-11, 1e-13, quad.max_subdivisions)

    def g(qf):
        return euclidean_oracle(p, PropagatorQuery.euclidean(qf, q_0, tau),
                                FULL, inner_quad)

    width = 10.0 * math.sqrt(p.hbar * tau / p.m)
    total, _ = _quad(g, q_0 - width, q_0 + width,
                     epsabs=1e-11, epsrel=1e-10, limit=200)
    return abs(total - 1.0)
