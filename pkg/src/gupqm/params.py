"""Physical parameters, propagator queries and numerical configuration."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, fields, replace

from .errors import DomainError, OrderValidityWarning

# Fraction of the leading term beyond which a first-order correction stops
# being trustworthy; exceeding it triggers a non-fatal OrderValidityWarning.
ORDER_VALIDITY_FRACTION = 0.2


@dataclass(frozen=True)
class PhysParams:
    """Physical context: hbar, mass, GUP parameter alpha, delta coupling v.

    alpha has dimension (momentum)^-2 and must be small: every closed form
    in this package is exact only to first order in alpha.
    """

    hbar: float = 1.0
    m: float = 1.0
    alpha: float = 0.01
    v: float = -1.0

    def __post_init__(self):
        if not (self.hbar > 0 and self.m > 0):
            raise DomainError("hbar and m must be positive")
        if self.alpha < 0:
            raise DomainError("alpha must be >= 0")
        for name in ("hbar", "m", "alpha", "v"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")


def flag_order_validity(correction_ratio: float, where: str) -> None:
    """Warn (non-fatally) when |correction|/|leading| exceeds the trust fraction."""
    if abs(correction_ratio) > ORDER_VALIDITY_FRACTION:
        # static message so the default warning filter deduplicates per site
        warnings.warn(
            f"{where}: first-order correction exceeds 20% of the leading term; "
            "result valid only to first order in alpha",
            OrderValidityWarning,
            stacklevel=3,
        )


@dataclass(frozen=True)
class PropagatorQuery:
    """Endpoints plus exactly one time argument (Euclidean tau, real T, or energy eps)."""

    q_f: float
    q_0: float
    tau: float | None = None
    T: float | None = None
    eps: float | None = None

    def __post_init__(self):
        set_args = [x for x in (self.tau, self.T, self.eps) if x is not None]
        if len(set_args) != 1:
            raise DomainError("exactly one of tau, T, eps must be set")
        if self.tau is not None and not self.tau > 0:
            raise DomainError("Euclidean time tau must be > 0")
        if self.eps is not None and not self.eps > 0:
            raise DomainError("energy argument eps must be > 0")
        if self.T is not None and self.T == 0:
            raise DomainError("real time T must be nonzero")

    @classmethod
    def euclidean(cls, q_f, q_0, tau):
        return cls(q_f, q_0, tau=tau)

    @classmethod
    def realtime(cls, q_f, q_0, T):
        return cls(q_f, q_0, T=T)

    @classmethod
    def energy(cls, q_f, q_0, eps):
        return cls(q_f, q_0, eps=eps)

    @property
    def dq(self) -> float:
        return self.q_f - self.q_0


@dataclass(frozen=True)
class Quadratures:
    """Adaptive-quadrature budget."""

    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_subdivisions: int = 2000

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise DomainError("rel_tol must be > 0")
        if self.abs_tol < 0:
            raise DomainError("abs_tol must be >= 0")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be >= 1")


@dataclass(frozen=True)
class TalbotSpec:
    """Fixed-Talbot contour: node count (doubled for the convergence check)
    and a scale factor on the contour abscissa."""

    node_count: int = 32
    contour_scale: float = 1.0

    def __post_init__(self):
        if self.node_count < 16 or self.node_count % 2:
            raise DomainError("node_count must be even and >= 16")
        if not self.contour_scale > 0:
            raise DomainError("contour_scale must be > 0")


@dataclass(frozen=True)
class Config:
    """One block holding every tunable tolerance and grid default.

    Suites read their thresholds from here so refinement studies can tighten
    them programmatically; a key=value config file may override any field.
    """

    quad: Quadratures = field(default_factory=Quadratures)
    talbot: TalbotSpec = field(default_factory=TalbotSpec)
    talbot_rel_tol: float = 1e-7
    newton_tol: float = 1e-12
    pole_guard: float = 1e-8
    # spectral-oracle grid defaults
    box_decay_lengths: float = 40.0      # box length in units of 1/decay
    min_points: int = 512
    sigma_ladder: tuple = (0.2, 0.1, 0.05, 0.025, 0.0125)
    alpha_ladder: tuple = (0.0, 0.005, 0.01)
    eigensolver_tol: float = 1e-11
    # suite tolerances (names mirror the suite check labels)
    tol_erfc_identity: float = 1e-12
    tol_bessel_identity: float = 1e-8
    tol_semigroup: float = 1e-6
    tol_normalization: float = 1e-8
    tol_closed_vs_oracle: float = 1e-8
    tol_laplace_forward: float = 1e-8
    tol_talbot_roundtrip: float = 1e-6
    tol_transform_consistency: float = 1e-6
    tol_integral_identity: float = 1e-12
    tol_schwinger: float = 1e-5
    tol_bc_diagonal_alpha2: float = 10.0   # residual <= this * alpha^2
    tol_gap_alpha2: float = 10.0           # closed-form gap checks, units of alpha^2

    def scaled(self, **overrides) -> "Config":
        return replace(self, **overrides)


_FLOAT_FIELDS = None


def load_config(path, base: Config | None = None) -> Config:
    """Read a simple key=value text file into a Config.

    Lines starting with '#' and blank lines are ignored.  Keys must match
    Config field names (dotted keys quad.rel_tol etc. reach subobjects).
    Unknown keys raise ValueError.  No environment variables are consulted.
    """
    cfg = base or Config()
    quad_kw, talbot_kw, top_kw = {}, {}, {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {raw!r}")
            key, val = (s.strip() for s in line.split("=", 1))
            if key.startswith("quad."):
                quad_kw[key[5:]] = _coerce(val)
            elif key.startswith("talbot."):
                talbot_kw[key[7:]] = _coerce(val)
            else:
                top_kw[key] = _coerce(val)
    if quad_kw:
        top_kw["quad"] = replace(cfg.quad, **quad_kw)
    if talbot_kw:
        top_kw["talbot"] = replace(cfg.talbot, **talbot_kw)
    valid = {f.name for f in fields(Config)}
    unknown = set(top_kw) - valid
    if unknown:
        raise ValueError(f"{path}: unknown config keys {sorted(unknown)}")
    return replace(cfg, **top_kw)


def _coerce(text: str):
    if "," in text:
        return tuple(_coerce(t) for t in text.split(",") if t.strip())
    try:
        i = int(text)
        return i
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text
