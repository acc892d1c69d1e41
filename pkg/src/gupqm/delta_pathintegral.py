"""Path-integral side of the delta potential: energy-domain Green's function
from the resolvent algebra, its first-order expansion, the time-domain
propagator from the inverse-Laplace table, the image-integral reduction at
alpha = 0, the modified boundary condition, and the pole/residue bound state.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

from scipy.integrate import quad as _quad

from .delta_schrodinger import (
    PATH_INTEGRAL,
    BcResidual,
    BoundState,
    PiecewiseExponential,
    jump_calculus,
)
from .errors import DomainError, NearPoleError, NoBoundStateError, ToleranceWarning
from .gup_free import free_euclidean, free_green
from .numerics import erfcx, newton_root, quad_checked
from .params import PhysParams, PropagatorQuery, Quadratures, flag_order_validity

FULL = "full"
DELTA = "delta"


@dataclass(frozen=True)
class DeltaGreenQuery:
    """Endpoints plus one of eps (energy domain) or tau (time domain)."""

    q_f: float
    q_0: float
    eps: float | None = None
    tau: float | None = None

    def __post_init__(self):
        if (self.eps is None) == (self.tau is None):
            raise DomainError("DeltaGreenQuery: exactly one of eps, tau must be set")
        if self.eps is not None and not self.eps > 0:
            raise DomainError("DeltaGreenQuery: eps must be > 0")
        if self.tau is not None and not self.tau > 0:
            raise DomainError("DeltaGreenQuery: tau must be > 0")

    @property
    def Q(self) -> float:
        """|q_f| + |q_0|, the only endpoint combination the solution depends on."""
        return abs(self.q_f) + abs(self.q_0)


@dataclass(frozen=True)
class PoleResult:
    epsilon_pole: float
    energy: float
    residue: float
    decay_from_residue: float


def _stabilized_erfc_product(a: float, b: float, tau: float) -> float:
    """e^{a b + b^2 tau} erfc(a/(2 sqrt tau) + b sqrt tau) without overflow.

    For x >= 0 the product collapses to e^{-a^2/4tau} erfcx(x); for x < 0
    (attractive coupling at late time) the reflection erfc(x) = 2 - erfc(-x)
    splits off the growing bound-state exponential explicitly.
    """
    x = a / (2.0 * math.sqrt(tau)) + b * math.sqrt(tau)
    gauss = math.exp(-a * a / (4.0 * tau))
    if x >= 0:
        return gauss * erfcx(x)
    return 2.0 * math.exp(a * b + b * b * tau) - gauss * erfcx(-x)


# ----------------------------------------------------------------------
# energy domain
# ----------------------------------------------------------------------

def pole_location(p: PhysParams, tol: float = 1e-12) -> float:
    """Root of D(eps) = hbar/v + sqrt(m/2 hbar eps)(1 + 6 alpha hbar m eps),
    seeded at the alpha = 0 pole eps0 = m v^2 / 2 hbar^3."""
    if p.v >= 0:
        raise NoBoundStateError("pole_location: no bound-state pole for v >= 0")
    hb, m, v, a = p.hbar, p.m, p.v, p.alpha

    def D(e):
        return hb / v + math.sqrt(m / (2.0 * hb * e)) * (1.0 + 6.0 * a * hb * m * e)

    def Dprime(e):
        return math.sqrt(m / (2.0 * hb * e)) * (6.0 * a * hb * m * e - 1.0) / (2.0 * e)

    eps0 = m * v * v / (2.0 * hb**3)
    return newton_root(D, Dprime, eps0 * (1.0 + 6.0 * a * (m * v / hb) ** 2), tol)


def delta_green_closed(p: PhysParams, q: DeltaGreenQuery, part: str = FULL,
                       guard: float = 1e-8) -> float:
    """Resolvent of the delta problem from the free Green's function:

        dG = -(v/hbar) G0(q_f,0) G0(0,q_0) / (1 + (v/hbar) G0(0,0))

    Returns G0 + dG (part="full") or dG alone (part="delta").  Evaluation
    within the guard band of the bound-state pole is refused; use
    bound_state_from_pole for the pole itself.
    """
    if q.eps is None:
        raise DomainError("delta_green_closed: query must carry eps")
    _check_part(part)
    eps = q.eps
    if p.v < 0:
        pole = pole_location(p)
        if abs(eps - pole) < guard * max(pole, 1.0):
            raise NearPoleError(
                f"delta_green_closed: eps = {eps!r} is within the guard band of "
                f"the bound-state pole at {pole!r}"
            )
    g_f0 = free_green(p, PropagatorQuery.energy(abs(q.q_f), 0.0, eps))
    g_00 = free_green(p, PropagatorQuery.energy(0.0, 0.0, eps))
    g_0i = free_green(p, PropagatorQuery.energy(0.0, abs(q.q_0), eps))
    dG = -(p.v / p.hbar) * g_f0 * g_0i / (1.0 + (p.v / p.hbar) * g_00)
    if part == DELTA:
        return dG
    return free_green(p, PropagatorQuery.energy(q.q_f, q.q_0, eps)) + dG


def expanded_green_correction(p: PhysParams, Q: float, eps):
    """First-order resolvent correction at endpoint sum Q = |q_f| + |q_0|:

        dG = -(v/hbar) sqrt(m/2 hbar eps) e^{-sqrt(2 m eps/hbar) Q}
             [ (1 + 12 w - 2 w z) / (v/hbar + sqrt(2 hbar eps/m))
               - 6 alpha v m eps / (v/hbar + sqrt(2 hbar eps/m))^2 ]

    with w = alpha hbar m eps and z = sqrt(2 m eps/hbar) Q.  Accepts complex
    eps (principal square root) so it can be fed to the Talbot inverter.
    """
    hb, m, v, a = p.hbar, p.m, p.v, p.alpha
    sqrt = cmath.sqrt if isinstance(eps, complex) else math.sqrt
    exp = cmath.exp if isinstance(eps, complex) else math.exp
    w = a * hb * m * eps
    z = sqrt(2.0 * m * eps / hb) * Q
    den = v / hb + sqrt(2.0 * hb * eps / m)
    return (-(v / hb) * sqrt(m / (2.0 * hb * eps)) * exp(-z)
            * ((1.0 + 12.0 * w - 2.0 * w * z) / den - 6.0 * a * v * m * eps / den**2))


def delta_green_expanded(p: PhysParams, q: DeltaGreenQuery, part: str = DELTA,
                         guard: float = 1e-8) -> float:
    """First-order expansion of the resolvent correction (see
    expanded_green_correction).  The expansion has a double pole at the
    alpha = 0 location; evaluation inside the guard band is refused."""
    if q.eps is None:
        raise DomainError("delta_green_expanded: query must carry eps")
    _check_part(part)
    eps, Q = q.eps, q.Q
    hb, m, v, a = p.hbar, p.m, p.v, p.alpha
    if v < 0:
        eps0 = m * v * v / (2.0 * hb**3)
        if abs(eps - eps0) < guard * max(eps0, 1.0):
            raise NearPoleError(
                f"delta_green_expanded: eps = {eps!r} is within the guard band of "
                f"the expansion pole at {eps0!r}"
            )
    w = a * hb * m * eps
    z = math.sqrt(2.0 * m * eps / hb) * Q
    flag_order_validity(12.0 * w + 2.0 * w * z, "delta_green_expanded")
    dG = expanded_green_correction(p, Q, eps)
    if part == DELTA:
        return dG
    return free_green(p, PropagatorQuery.energy(q.q_f, q.q_0, eps)) + dG


# ----------------------------------------------------------------------
# time domain
# ----------------------------------------------------------------------

def delta_propagator_time(p: PhysParams, q: DeltaGreenQuery, part: str = FULL) -> float:
    """Euclidean propagator of the delta problem at tau > 0: the exact inverse
    Laplace transform of delta_green_expanded.

    The erfc block times its growing exponential is evaluated through erfcx
    with the exponents combined first (direct evaluation overflows once
    m |v| (|q_f|+|q_0|) / hbar^2 grows past ~30).
    """
    if q.tau is None:
        raise DomainError("delta_propagator_time: query must carry tau")
    _check_part(part)
    tau, Q = q.tau, q.Q
    hb, m, v, a = p.hbar, p.m, p.v, p.alpha

    ab = math.sqrt(2.0 * m / hb) * Q            # coefficient of sqrt(eps) in the exponent
    bb = (v / hb) * math.sqrt(m / (2.0 * hb))   # shift of sqrt(eps) in the denominator
    phi = _stabilized_erfc_product(ab, bb, tau)

    bracket = (1.0
               + 12.0 * a * m**2 * v**2 / hb**2
               + 4.0 * a * m**3 * v**3 * Q / hb**4
               + 3.0 * a * m**3 * v**4 * tau / hb**5)
    flag_order_validity(bracket - 1.0, "delta_propagator_time")

    gauss = (math.sqrt(2.0 * hb / (math.pi * m)) * a * math.exp(-m * Q * Q / (2.0 * hb * tau))
             * (-3.0 * m**3 * v**3 / hb**4 * math.sqrt(tau)
                - m**2 * v / hb * (9.0 + m * v * Q / hb**2) / math.sqrt(tau)
                + m**2 * Q * (7.0 + m * v * Q / hb**2) * tau**-1.5
                - m**3 * Q**3 / hb * tau**-2.5))

    dG = -m * v / (2.0 * hb**2) * (phi * bracket + gauss)
    if part == DELTA:
        return dG
    return free_euclidean(p, PropagatorQuery.euclidean(q.q_f, q.q_0, tau)) + dG


def image_integral_oracle(p: PhysParams, q: DeltaGreenQuery,
                          quad: Quadratures = Quadratures()) -> float:
    """alpha = 0 oracle for the propagator correction: the image representation

        dG = -(m v / hbar^2) int_0^inf dz e^{-(m v/hbar^2) z}
             G_F(|q_f|, -|q_0| - z; tau)

    with G_F the textbook Gaussian propagator.  Quadrature converges for
    either sign of v (the Gaussian dominates the exponential weight).
    """
    if q.tau is None:
        raise DomainError("image_integral_oracle: query must carry tau")
    tau, hb, m, v = q.tau, p.hbar, p.m, p.v
    c = m * v / hb**2

    def integrand(z):
        sep = abs(q.q_f) + abs(q.q_0) + z
        gf = math.sqrt(m / (2.0 * math.pi * hb * tau)) * math.exp(
            -m * sep * sep / (2.0 * hb * tau))
        return math.exp(-c * z) * gf

    upper = q.Q + 40.0 * math.sqrt(hb * tau / m) + 40.0 * hb**2 / (m * max(abs(v), 1e-3))
    return -c * quad_checked(integrand, 0.0, upper, quad)


# ----------------------------------------------------------------------
# boundary condition and bound state
# ----------------------------------------------------------------------

def bc_residual_pathintegral(p: PhysParams, psi: PiecewiseExponential) -> BcResidual:
    """Boundary condition carried by the time-domain propagator: the
    third-derivative jump enters with coefficient 4 alpha hbar^2, twice the
    one in the stationary-equation condition."""
    lhs = jump_calculus(psi, 1) - 4.0 * p.alpha * p.hbar**2 * jump_calculus(psi, 3)
    rhs = 2.0 * p.m * p.v / p.hbar**2 * psi(0.0)
    return BcResidual(lhs, rhs)


def bound_state_pathintegral_closed(p: PhysParams) -> BoundState:
    """First-order closed forms read off the pole and its exponent:

        energy B' = -m v^2 / 2 hbar^2 - 3 alpha m^3 v^4 / hbar^4
        decay  a' = -m v / hbar^2 - 4 alpha m^3 v^3 / hbar^4
    """
    if p.v >= 0:
        raise NoBoundStateError("bound_state_pathintegral_closed: needs v < 0")
    hb, m, v, a = p.hbar, p.m, p.v, p.alpha
    flag_order_validity(4.0 * a * (m * v / hb) ** 2, "bound_state_pathintegral_closed")
    energy = -m * v * v / (2.0 * hb**2) - 3.0 * a * m**3 * v**4 / hb**4
    decay = -m * v / hb**2 - 4.0 * a * m**3 * v**3 / hb**4
    return BoundState(energy, PiecewiseExponential.normalized(decay), PATH_INTEGRAL)


def bound_state_from_pole(p: PhysParams, tol: float = 1e-12,
                          check_tol_alpha2: float = 10.0):
    """Bound state from the pole and residue of the resolvent.

    Newton-solves D(eps) = hbar/v + sqrt(m/2 hbar eps)(1 + 6 alpha hbar m eps),
    extracts the residue -N(eps_p)/D'(eps_p) analytically, and reads the decay
    constant off the exponent at the pole.  Returns (PoleResult, BoundState).

    The results are cross-checked against the first-order closed forms; the
    measured discrepancies are O(alpha^2) with coefficients around 22-29 for
    the energy and 27 for the decay, so the nominal check_tol_alpha2 = 10 is
    exceeded for every alpha > 0 and only a ToleranceWarning is issued.
    """
    if p.v >= 0:
        raise NoBoundStateError("bound_state_from_pole: needs v < 0")
    hb, m, v, a = p.hbar, p.m, p.v, p.alpha
    eps_p = pole_location(p, tol)

    w = a * hb * m * eps_p
    numer = m / (2.0 * hb * eps_p) * (1.0 + 6.0 * w) ** 2
    dprime = math.sqrt(m / (2.0 * hb * eps_p)) * (6.0 * w - 1.0) / (2.0 * eps_p)
    residue = -numer / dprime
    decay = math.sqrt(2.0 * m * eps_p / hb) * (1.0 + 2.0 * w)
    if residue <= 0:
        raise NoBoundStateError("bound_state_from_pole: residue is not positive")

    closed = bound_state_pathintegral_closed(p)
    energy = -hb * eps_p
    scale_E = m * v * v / hb**2
    scale_a = m * abs(v) / hb**2
    if a > 0:
        gap_E = abs(energy - closed.energy) / (a * a * scale_E)
        gap_a = abs(decay - closed.decay) / (a * a * scale_a)
        if max(gap_E, gap_a) > check_tol_alpha2:
            warnings.warn(
                "bound_state_from_pole: pole differs from the first-order closed "
                f"forms by {gap_E:.1f} alpha^2 (energy) / {gap_a:.1f} alpha^2 (decay), "
                f"beyond the nominal {check_tol_alpha2} alpha^2",
                ToleranceWarning,
                stacklevel=2,
            )

    pole = PoleResult(eps_p, energy, residue, decay)
    state = BoundState(energy, PiecewiseExponential.normalized(decay), PATH_INTEGRAL)
    return pole, state


def count_pole_sign_changes(p: PhysParams, upper_factor: float = 4.0,
                            samples: int = 4000) -> int:
    """Sign changes of D(eps) on (0, upper_factor * eps0); exactly one is the
    uniqueness statement for the principal denominator form."""
    if p.v >= 0:
        raise NoBoundStateError("count_pole_sign_changes: needs v < 0")
    hb, m, v, a = p.hbar, p.m, p.v, p.alpha
    eps0 = m * v * v / (2.0 * hb**3)

    def D(e):
        return hb / v + math.sqrt(m / (2.0 * hb * e)) * (1.0 + 6.0 * a * hb * m * e)

    changes = 0
    prev = D(eps0 * upper_factor / samples)
    for i in range(2, samples + 1):
        cur = D(eps0 * upper_factor * i / samples)
        if prev * cur < 0:
            changes += 1
        prev = cur
    return changes


def schwinger_convolution_residual(p: PhysParams, q_f: float, q_0: float,
                                   tau: float) -> float:
    """Relative mismatch of the time-domain self-consistency identity

        dG(q_f, q_0; tau) = -(v/hbar) int_0^tau ds G0(q_f, 0; tau-s) G(0, q_0; s)

    Exact at alpha = 0; at alpha > 0 the first-order forms violate it at
    O(alpha^2) (measured coefficient ~1.4e2 alpha^2 at the reference point).
    """
    lhs = delta_propagator_time(p, DeltaGreenQuery(q_f, q_0, tau=tau), DELTA)

    def integrand(s):
        g0 = free_euclidean(p, PropagatorQuery.euclidean(abs(q_f), 0.0, tau - s))
        g = delta_propagator_time(p, DeltaGreenQuery(0.0, q_0, tau=s), FULL)
        return g0 * g

    with warnings.catch_warnings():
        # the quadrature legitimately probes s -> tau where the first-order
        # brackets blow up inside a vanishing Gaussian envelope
        warnings.simplefilter("ignore")
        val, _ = _quad(integrand, 0.0, tau, epsabs=1e-12, epsrel=1e-10, limit=400,
                       points=[0.0, tau])
    rhs = -(p.v / p.hbar) * val
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs))


def _check_part(part: str) -> None:
    if part not in (FULL, DELTA):
        raise DomainError(f"part must be {FULL!r} or {DELTA!r}")
