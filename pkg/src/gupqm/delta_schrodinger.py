"""Schrodinger side of the attractive delta potential: derivative-jump
boundary condition, first-order bound state, and the jump calculus for
even piecewise-exponential wavefunctions."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, NoBoundStateError
from .params import PhysParams, flag_order_validity

SCHRODINGER = "schrodinger"
PATH_INTEGRAL = "path-integral"
SPECTRAL = "spectral"

_NORM_TOL = 1e-12


@dataclass(frozen=True)
class PiecewiseExponential:
    """Even wavefunction psi(q) = amplitude * e^{-decay |q|}."""

    amplitude: float
    decay: float

    def __post_init__(self):
        if not self.decay > 0:
            raise DomainError("PiecewiseExponential: decay must be > 0")

    @classmethod
    def normalized(cls, decay: float) -> "PiecewiseExponential":
        return cls(math.sqrt(decay), decay)

    def __call__(self, q: float) -> float:
        return self.amplitude * math.exp(-self.decay * abs(q))

    @property
    def norm_squared(self) -> float:
        """integral psi^2 dq = amplitude^2 / decay."""
        return self.amplitude**2 / self.decay


@dataclass(frozen=True)
class BoundState:
    energy: float
    wavefunction: PiecewiseExponential
    method: str

    def __post_init__(self):
        if not self.energy < 0:
            raise DomainError("BoundState: energy must be negative")
        if abs(self.wavefunction.norm_squared - 1.0) > _NORM_TOL:
            raise DomainError("BoundState: wavefunction must be normalized")
        if self.method not in (SCHRODINGER, PATH_INTEGRAL, SPECTRAL):
            raise DomainError(f"BoundState: unknown method {self.method!r}")

    @property
    def decay(self) -> float:
        return self.wavefunction.decay


@dataclass(frozen=True)
class BcResidual:
    """Two sides of a derivative-jump boundary condition at the origin."""

    lhs: float
    rhs: float

    @property
    def residual(self) -> float:
        return self.lhs - self.rhs

    @property
    def relative(self) -> float:
        scale = max(abs(self.lhs), abs(self.rhs))
        return self.residual / scale if scale else 0.0


def jump_calculus(psi: PiecewiseExponential, derivative_order: int) -> float:
    """One-sided derivative jump psi^(n)(0+) - psi^(n)(0-) = -2 A a^n, odd n.

    Analytic on the exponential family; no finite differencing."""
    if derivative_order not in (1, 3):
        raise DomainError("jump_calculus: derivative order must be 1 or 3")
    return -2.0 * psi.amplitude * psi.decay**derivative_order


def bc_residual_schrodinger(p: PhysParams, psi: PiecewiseExponential) -> BcResidual:
    """Boundary condition of the fourth-order stationary equation:
    jump[psi'] - 2 alpha hbar^2 jump[psi'''] = (2 m v / hbar^2) psi(0)."""
    lhs = jump_calculus(psi, 1) - 2.0 * p.alpha * p.hbar**2 * jump_calculus(psi, 3)
    rhs = 2.0 * p.m * p.v / p.hbar**2 * psi(0.0)
    return BcResidual(lhs, rhs)


def bound_state_schrodinger(p: PhysParams) -> BoundState:
    """First-order bound state of the attractive well (v < 0):

        decay  a = -m v / hbar^2 - 2 alpha m^3 v^3 / hbar^4
        energy B = -m v^2 / 2 hbar^2 - alpha m^3 v^4 / hbar^4

    a also equals sqrt(-2 m B)(1 - 2 alpha m B)/hbar up to O(alpha^2).
    """
    if p.v >= 0:
        raise NoBoundStateError("bound_state_schrodinger: needs an attractive coupling v < 0")
    hb, m, v, a = p.hbar, p.m, p.v, p.alpha
    x = a * (m * v / hb) ** 2  # dimensionless expansion parameter
    flag_order_validity(2.0 * x, "bound_state_schrodinger")
    decay = -m * v / hb**2 - 2.0 * a * m**3 * v**3 / hb**4
    energy = -m * v * v / (2.0 * hb**2) - a * m**3 * v**4 / hb**4
    return BoundState(energy, PiecewiseExponential.normalized(decay), SCHRODINGER)
