"""Report assembly, verification suites and file emission.

The comparison report records the two first-order bound states side by side
with the boundary-condition cross matrix; the suites execute each module's
invariants with thresholds taken from one Config block and record measured
values next to their tolerances, pass or fail.
"""

from __future__ import annotations

import csv
import io
import json
import math
import warnings
from dataclasses import asdict, dataclass, field

import numpy as np

from . import delta_pathintegral as dpi
from . import delta_schrodinger as dsc
from . import gup_free as free
from . import numerics, oracle_spectral
from .errors import NumericsError
from .params import Config, PhysParams, PropagatorQuery, TalbotSpec

_FOOTNOTE_CAVEAT = (
    "first-order-equivalent rearrangements of the resolvent denominator move "
    "the bound-state pole and can produce multiple bound states; only the "
    "principal denominator form is evaluated here"
)
_RESIDUE_CAVEAT = (
    "the resolvent residue at the pole is (1 + 8 alpha m^2 v^2/hbar^2) times "
    "the decay constant, so the pole wavefunction is normalized only to first "
    "order; the reported path-integral state uses the normalized closed form"
)
_SPECTRAL_CAVEAT = (
    "the operator-limit ground energy rises like sqrt(alpha) above both "
    "first-order values (the quartic momentum term is a positive operator), "
    "so the grid oracle agrees with neither closed form at finite alpha"
)


@dataclass(frozen=True)
class SuiteCheck:
    name: str
    measured: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.measured <= self.tolerance


@dataclass(frozen=True)
class SuiteOutcome:
    suite_name: str
    checks: tuple

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]


@dataclass(frozen=True)
class ComparisonReport:
    params: PhysParams
    schrodinger: dsc.BoundState
    path_integral: dsc.BoundState
    deltas: dict
    bc_matrix: dict
    caveats: tuple
    spectral: tuple | None = None


def compare_bound_states(p: PhysParams, with_spectral: bool = False,
                         config: Config = Config()) -> ComparisonReport:
    """Assemble the side-by-side bound-state report.

    Both states use the first-order closed forms (the pole/residue machinery
    is exercised separately); the deltas are recomputed from the embedded
    states, never stored independently.
    """
    schr = dsc.bound_state_schrodinger(p)
    pint = dpi.bound_state_pathintegral_closed(p)
    deltas = {
        "energy_gap": schr.energy - pint.energy,
        "decay_gap": pint.decay - schr.decay,
    }
    bc_matrix = {
        "schrodinger_state": {
            "schrodinger_bc": dsc.bc_residual_schrodinger(p, schr.wavefunction),
            "path_integral_bc": dpi.bc_residual_pathintegral(p, schr.wavefunction),
        },
        "path_integral_state": {
            "schrodinger_bc": dsc.bc_residual_schrodinger(p, pint.wavefunction),
            "path_integral_bc": dpi.bc_residual_pathintegral(p, pint.wavefunction),
        },
    }
    caveats = [_FOOTNOTE_CAVEAT, _RESIDUE_CAVEAT]
    diag = [
        bc_matrix["schrodinger_state"]["schrodinger_bc"],
        bc_matrix["path_integral_state"]["path_integral_bc"],
    ]
    if p.alpha > 0 and any(
        abs(r.relative) > config.tol_bc_diagonal_alpha2 * p.alpha**2 for r in diag
    ):
        caveats.append(
            "diagonal boundary-condition residuals exceed the nominal "
            "10 alpha^2 (measured leading constants are 12 and 48 alpha^2)"
        )
    spectral = None
    if with_spectral:
        spectral = oracle_spectral.delta_limit_energy(
            p, config.sigma_ladder,
            box_decay_lengths=config.box_decay_lengths,
            min_points=config.min_points, tol=config.eigensolver_tol,
        )
        caveats.append(_SPECTRAL_CAVEAT)
    return ComparisonReport(p, schr, pint, deltas, bc_matrix, tuple(caveats), spectral)


# ----------------------------------------------------------------------
# inverse-Laplace table
# ----------------------------------------------------------------------

def _phi(a, b, tau):
    return dpi._stabilized_erfc_product(a, b, tau)


def _gauss(a, tau):
    return math.exp(-a * a / (4.0 * tau))


_LAPLACE_TABLE = (
    ("exp(-a sqrt(e))/(sqrt(e)+b)",
     lambda e, a, b: np.exp(-a * np.sqrt(e)) / (np.sqrt(e) + b),
     lambda t, a, b: _gauss(a, t) / math.sqrt(math.pi * t) - b * _phi(a, b, t)),
    ("exp(-a sqrt(e))/(sqrt(e)(sqrt(e)+b))",
     lambda e, a, b: np.exp(-a * np.sqrt(e)) / (np.sqrt(e) * (np.sqrt(e) + b)),
     lambda t, a, b: _phi(a, b, t)),
    ("sqrt(e) exp(-a sqrt(e))/(sqrt(e)+b)",
     lambda e, a, b: np.sqrt(e) * np.exp(-a * np.sqrt(e)) / (np.sqrt(e) + b),
     lambda t, a, b: (a - 2.0 * b * t) / (2.0 * math.sqrt(math.pi * t**3)) * _gauss(a, t)
                     + b * b * _phi(a, b, t)),
    ("e exp(-a sqrt(e))/(sqrt(e)+b)",
     lambda e, a, b: e * np.exp(-a * np.sqrt(e)) / (np.sqrt(e) + b),
     lambda t, a, b: (4.0 * b * b * t * t - 2.0 * (a * b + 1.0) * t + a * a)
                     / (4.0 * math.sqrt(math.pi * t**5)) * _gauss(a, t)
                     - b**3 * _phi(a, b, t)),
    ("exp(-a sqrt(e))/(sqrt(e)+b)^2",
     lambda e, a, b: np.exp(-a * np.sqrt(e)) / (np.sqrt(e) + b) ** 2,
     lambda t, a, b: -2.0 * b * math.sqrt(t / math.pi) * _gauss(a, t)
                     + (2.0 * b * b * t + a * b + 1.0) * _phi(a, b, t)),
)


def verify_laplace_table(config: Config = Config()) -> SuiteOutcome:
    """Both-direction checks of the five transform pairs used by the
    time-domain propagator: forward quadrature of the time side against the
    energy side, and Talbot inversion of the energy side against the time
    side.  Failures are recorded in the outcome, never raised."""
    a = 1.0
    bs = (0.5, 1.0)
    checks = []
    for name, F, f in _LAPLACE_TABLE:
        for e in (0.5, 1.0, 2.0):
            worst = 0.0
            for b in bs:
                fwd = numerics.laplace_forward(lambda t: f(t, a, b), e, config.quad)
                exact = float(F(e, a, b))
                worst = max(worst, abs(fwd - exact) / abs(exact))
            checks.append(SuiteCheck(f"forward[{name}] eps={e}", worst,
                                     config.tol_laplace_forward))
        for t in (0.5, 1.0, 2.0):
            worst = 0.0
            for b in bs:
                inv = numerics.talbot_inverse(lambda s: F(s, a, b), t, config.talbot,
                                              rel_tol=config.talbot_rel_tol)
                exact = f(t, a, b)
                worst = max(worst, abs(inv - exact) / abs(exact))
            checks.append(SuiteCheck(f"talbot[{name}] tau={t}", worst,
                                     config.tol_talbot_roundtrip))
    return SuiteOutcome("laplace-table", tuple(checks))


# ----------------------------------------------------------------------
# suites
# ----------------------------------------------------------------------

def _suite_free(config: Config) -> SuiteOutcome:
    checks = []
    xs = np.linspace(-5.0, 5.0, 21)
    checks.append(SuiteCheck(
        "erfc reflection erfc(x)+erfc(-x)=2",
        max(abs(numerics.erfc(x) + numerics.erfc(-x) - 2.0) for x in xs),
        config.tol_erfc_identity))
    checks.append(SuiteCheck(
        "erfcx consistency erfcx(x) e^{-x^2} = erfc(x)",
        max(abs(numerics.erfcx(x) * math.exp(-x * x) - numerics.erfc(x))
            for x in np.linspace(0.0, 5.0, 21)),
        config.tol_erfc_identity))
    worst = 0.0
    for e in (0.5, 1.0, 2.0):
        rt = numerics.laplace_forward(
            lambda t: numerics.talbot_inverse(lambda s: 1.0 / (s + 1.0), t,
                                              config.talbot,
                                              rel_tol=config.talbot_rel_tol),
            e, config.quad)
        worst = max(worst, abs(rt - 1.0 / (e + 1.0)))
    checks.append(SuiteCheck("laplace(talbot(F)) round trip, F=1/(e+1)", worst,
                             config.tol_talbot_roundtrip))
    worst = 0.0
    for nu in (0.5, 1.5):
        for beta in (0.5, 1.0, 2.0):
            for gamma in (0.5, 1.0, 2.0):
                worst = max(worst, numerics.verify_bessel_integral(
                    nu, beta, gamma, config.quad))
    checks.append(SuiteCheck("Laplace-type Bessel integral identity", worst,
                             config.tol_bessel_identity))

    p0 = PhysParams(alpha=1e-3)
    checks.append(SuiteCheck(
        "semigroup composition (full-exponent oracle)",
        max(free.semigroup_residual(p0, 0.4, -0.2, t1, t2)
            for t1, t2 in ((0.5, 0.5), (0.3, 0.7))),
        config.tol_semigroup))
    checks.append(SuiteCheck(
        "normalization of the full-exponent oracle",
        max(free.normalization_residual(PhysParams(alpha=a), 0.3, t)
            for a in (0.0, 1e-3) for t in (0.5, 1.0)),
        config.tol_normalization))

    worst = 0.0
    for a in (0.0, 1e-3):
        p = PhysParams(alpha=a)
        for tau in (0.5, 1.0, 2.0):
            ge1 = free.free_euclidean(p, PropagatorQuery.euclidean(0.9, -0.4, tau))
            ge2 = free.free_euclidean(p, PropagatorQuery.euclidean(-0.4, 0.9, tau))
            worst = max(worst, abs(ge1 - ge2))
        for e in (0.5, 2.0):
            gg1 = free.free_green(p, PropagatorQuery.energy(0.9, -0.4, e))
            gg2 = free.free_green(p, PropagatorQuery.energy(-0.4, 0.9, e))
            worst = max(worst, abs(gg1 - gg2))
    checks.append(SuiteCheck("endpoint-exchange symmetry (exact)", worst, 0.0))

    p = PhysParams(alpha=0.0)
    worst = 0.0
    for tau in (0.5, 1.0, 2.0):
        for dq in (0.0, 0.7, 1.5):
            val = free.free_euclidean(p, PropagatorQuery.euclidean(dq, 0.0, tau))
            textbook = math.sqrt(p.m / (2.0 * math.pi * p.hbar * tau)) * math.exp(
                -p.m * dq * dq / (2.0 * p.hbar * tau))
            worst = max(worst, abs(val - textbook))
    checks.append(SuiteCheck("alpha-continuity: alpha=0 equals textbook exactly",
                             worst, 0.0))

    kernel = free.free_kernel(p, PropagatorQuery.realtime(0.0, 0.0, 1.0))
    pinned = complex(math.cos(math.pi / 4), -math.sin(math.pi / 4)) / math.sqrt(2 * math.pi)
    checks.append(SuiteCheck("principal-branch phase e^{-i pi/4}/sqrt(2 pi) at T=1",
                             abs(kernel - pinned), 1e-15))

    worst = 0.0
    for a in (0.0, 1e-4, 1e-3):
        p = PhysParams(alpha=a)
        for dq in (0.0, 0.5, 1.0, 2.0):
            for tau in (0.5, 1.0, 2.0):
                q = PropagatorQuery.euclidean(dq, 0.0, tau)
                closed = free.free_euclidean(p, q)
                oracle = free.euclidean_oracle(p, q, free.TRUNCATED, config.quad)
                worst = max(worst, abs(closed - oracle) / abs(oracle))
    checks.append(SuiteCheck("closed form vs truncated-integrand oracle (36 points)",
                             worst, config.tol_closed_vs_oracle))
    return SuiteOutcome("free", tuple(checks))


def _suite_delta_schrodinger(config: Config) -> SuiteOutcome:
    checks = []
    worst = 0.0
    for a in (0.0, 1e-3, 1e-2):
        st = dsc.bound_state_schrodinger(PhysParams(alpha=a))
        worst = max(worst, abs(st.wavefunction.norm_squared - 1.0))
    checks.append(SuiteCheck("analytic normalization amplitude^2/decay = 1",
                             worst, config.tol_erfc_identity))

    worst = 0.0
    for hb, m, v in ((1.0, 1.0, -1.0), (1.0, 2.0, -0.5), (2.0, 1.0, -3.0)):
        st = dsc.bound_state_schrodinger(PhysParams(hb, m, 0.0, v))
        worst = max(worst, abs(st.energy + m * v * v / (2.0 * hb * hb)))
    checks.append(SuiteCheck("alpha=0 energy is the textbook well value", worst, 0.0))

    worst = 0.0
    for a in (1e-4, 1e-3, 1e-2):
        b_a = dsc.bound_state_schrodinger(PhysParams(alpha=a)).energy
        b_0 = dsc.bound_state_schrodinger(PhysParams(alpha=0.0)).energy
        worst = max(worst, abs((b_a - b_0) / a - (-1.0)))
    checks.append(SuiteCheck("energy slope in alpha is -m^3 v^4/hbar^4 exactly",
                             worst, 1e-9))

    worst = 0.0
    ratios = []
    for a in (1e-4, 1e-3, 1e-2):
        p = PhysParams(alpha=a)
        res = dsc.bc_residual_schrodinger(p, dsc.bound_state_schrodinger(p).wavefunction)
        worst = max(worst, abs(res.relative) / a**2)
        half = PhysParams(alpha=a / 2)
        res_half = dsc.bc_residual_schrodinger(
            half, dsc.bound_state_schrodinger(half).wavefunction)
        ratios.append(abs(res.relative) / abs(res_half.relative))
    checks.append(SuiteCheck("own-state boundary residual, units of alpha^2",
                             worst, config.tol_bc_diagonal_alpha2))
    checks.append(SuiteCheck("residual shrinks ~x4 under alpha -> alpha/2",
                             max(abs(r - 4.0) for r in ratios), 1.0))
    return SuiteOutcome("delta-schrodinger", tuple(checks))


def _suite_delta_pathintegral(config: Config) -> SuiteOutcome:
    checks = []
    worst = 0.0
    for a in (0.0, 1e-3):
        p = PhysParams(alpha=a)
        for qf, q0 in ((1.0, 1.0), (0.5, 1.5), (2.0, 0.3)):
            for e in (1.0, 2.0):
                dg = dpi.delta_green_closed(p, dpi.DeltaGreenQuery(qf, q0, eps=e),
                                            dpi.DELTA)
                g_f0 = free.free_green(p, PropagatorQuery.energy(qf, 0.0, e))
                g_full_0q = dpi.delta_green_closed(
                    p, dpi.DeltaGreenQuery(0.0, q0, eps=e), dpi.FULL)
                rhs = -(p.v / p.hbar) * g_f0 * g_full_0q
                worst = max(worst, abs(dg - rhs) / abs(rhs))
    checks.append(SuiteCheck("resolvent integral-equation identity (algebraic)",
                             worst, config.tol_integral_identity))

    p0 = PhysParams(alpha=0.0)
    checks.append(SuiteCheck(
        "time-domain self-consistency at alpha=0",
        dpi.schwinger_convolution_residual(p0, 1.0, 1.0, 1.0),
        config.tol_schwinger))
    checks.append(SuiteCheck(
        "time-domain self-consistency at alpha=1e-3",
        dpi.schwinger_convolution_residual(PhysParams(alpha=1e-3), 1.0, 1.0, 1.0),
        config.tol_schwinger))

    worst_f = 0.0
    worst_t = 0.0
    for a in (0.0, 1e-3):
        p = PhysParams(alpha=a)
        pole = dpi.pole_location(p)
        for e in (1.0, 2.0):
            fwd = numerics.laplace_forward(
                lambda t: dpi.delta_propagator_time(
                    p, dpi.DeltaGreenQuery(1.0, 1.0, tau=t), dpi.DELTA),
                e, config.quad)
            hat = dpi.delta_green_expanded(p, dpi.DeltaGreenQuery(1.0, 1.0, eps=e))
            worst_f = max(worst_f, abs(fwd - hat) / abs(hat))
        for t in (0.5, 1.0, 2.0):
            inv = numerics.talbot_inverse(
                lambda s: dpi.expanded_green_correction(p, 2.0, s),
                t, config.talbot, rel_tol=config.talbot_rel_tol,
                abscissa_min=pole)
            direct = dpi.delta_propagator_time(
                p, dpi.DeltaGreenQuery(1.0, 1.0, tau=t), dpi.DELTA)
            worst_t = max(worst_t, abs(inv - direct) / abs(direct))
    checks.append(SuiteCheck("forward Laplace of dG matches expanded dG-hat",
                             worst_f, config.tol_transform_consistency))
    checks.append(SuiteCheck("Talbot inverse of dG-hat matches dG", worst_t,
                             config.tol_transform_consistency))

    p = PhysParams(alpha=1e-3)
    worst = 0.0
    for e in (1.0, 2.0):
        # the correction is a function of (|q_f|, |q_0|) alone
        base_d = dpi.delta_green_closed(p, dpi.DeltaGreenQuery(1.2, -0.7, eps=e),
                                        dpi.DELTA)
        for qf, q0 in ((-1.2, 0.7), (1.2, 0.7), (-0.7, -1.2), (0.7, 1.2)):
            other = dpi.delta_green_closed(p, dpi.DeltaGreenQuery(qf, q0, eps=e),
                                           dpi.DELTA)
            worst = max(worst, abs(base_d - other))
        # the full function is symmetric under exchange and joint reflection
        base_f = dpi.delta_green_closed(p, dpi.DeltaGreenQuery(1.2, -0.7, eps=e),
                                        dpi.FULL)
        for qf, q0 in ((-0.7, 1.2), (-1.2, 0.7), (0.7, -1.2)):
            other = dpi.delta_green_closed(p, dpi.DeltaGreenQuery(qf, q0, eps=e),
                                           dpi.FULL)
            worst = max(worst, abs(base_f - other))
    checks.append(SuiteCheck("correction depends only on |q_f|, |q_0|; "
                             "full G exchange- and reflection-symmetric",
                             worst, 0.0))

    worst = 0.0
    for a in (1e-4, 1e-3, 1e-2):
        worst = max(worst, abs(dpi.count_pole_sign_changes(PhysParams(alpha=a)) - 1))
    checks.append(SuiteCheck("exactly one pole on (0, 4 eps0)", worst, 0.0))

    worst = 0.0
    for a in (1e-4, 1e-3, 1e-2):
        p = PhysParams(alpha=a)
        schr = dsc.bound_state_schrodinger(p)
        pint = dpi.bound_state_pathintegral_closed(p)
        gap_e = (schr.energy - pint.energy) - 2.0 * a * p.m**3 * p.v**4 / p.hbar**4
        gap_a = (pint.decay - schr.decay) - (-2.0 * a * p.m**3 * p.v**3 / p.hbar**4)
        scale = 10.0 * a * a
        worst = max(worst, abs(gap_e) / max(scale, 1e-300),
                    abs(gap_a) / max(scale, 1e-300))
    checks.append(SuiteCheck("inequivalence witness gaps match closed forms", worst, 1.0))
    return SuiteOutcome("delta-pathintegral", tuple(checks))


def _suite_spectral(config: Config) -> SuiteOutcome:
    checks = []
    p = PhysParams(alpha=0.0)

    g = oracle_spectral.GridSpec(40.0, 1024, 0.2)
    q, dx, vec = oracle_spectral.ground_vector(p, g)
    mirrored = np.roll(vec[::-1], 1)  # index n-i is the grid point at -q_i
    checks.append(SuiteCheck("ground state even under q -> -q",
                             float(np.max(np.abs(vec - mirrored))), 1e-8))

    worst = -math.inf
    trial = dsc.bound_state_schrodinger(p).wavefunction
    for sigma in (0.2, 0.1):
        gs = oracle_spectral.GridSpec.for_sigma(sigma)
        ground = oracle_spectral.ground_state(p, gs, tol=config.eigensolver_tol)
        rq = oracle_spectral.rayleigh_quotient(p, gs, trial)
        worst = max(worst, ground.ground_energy - rq)
    checks.append(SuiteCheck("variational bound against the exponential trial state",
                             worst, 0.0))

    e1 = oracle_spectral.ground_state(p, oracle_spectral.GridSpec(40.0, 2048, 0.1),
                                      tol=config.eigensolver_tol).ground_energy
    e2 = oracle_spectral.ground_state(p, oracle_spectral.GridSpec(40.0, 4096, 0.1),
                                      tol=config.eigensolver_tol).ground_energy
    checks.append(SuiteCheck("doubling the grid moves the energy < 1e-8",
                             abs(e1 - e2), 1e-8))

    e_l = oracle_spectral.ground_state(p, oracle_spectral.GridSpec(80.0, 4096, 0.1),
                                       tol=config.eigensolver_tol).ground_energy
    checks.append(SuiteCheck("doubling the box leaves the energy unchanged "
                             "(finite-size error exponentially small)",
                             abs(e2 - e_l), 1e-9))

    energy, est = oracle_spectral.delta_limit_energy(
        p, (0.2, 0.1, 0.05), min_points=config.min_points,
        box_decay_lengths=config.box_decay_lengths, tol=config.eigensolver_tol)
    finest = oracle_spectral.ground_state(
        p, oracle_spectral.GridSpec.for_sigma(0.05), tol=config.eigensolver_tol
    ).ground_energy
    checks.append(SuiteCheck("extrapolation error estimate is conservative",
                             abs(energy - finest) / 10.0 - est, 0.0))

    ho = oracle_spectral.ground_state(
        p, oracle_spectral.GridSpec(40.0, 1024, 0.2),
        potential=lambda q: 0.5 * q * q, tol=config.eigensolver_tol)
    checks.append(SuiteCheck("harmonic sanity swap ground energy = 1/2",
                             abs(ho.ground_energy - 0.5), 1e-6))
    return SuiteOutcome("spectral", tuple(checks))


_SUITES = {
    "free": _suite_free,
    "delta-schrodinger": _suite_delta_schrodinger,
    "delta-pathintegral": _suite_delta_pathintegral,
    "spectral": _suite_spectral,
    "laplace-table": lambda config: verify_laplace_table(config),
}


def run_suite(name: str, config: Config = Config()) -> SuiteOutcome:
    """Execute one named invariant suite (or 'all'); deterministic for a
    fixed configuration.  Check failures are recorded, never raised."""
    if name == "all":
        checks = []
        for key in sorted(_SUITES):
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                checks.extend(_SUITES[key](config).checks)
        return SuiteOutcome("all", tuple(checks))
    if name not in _SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from "
                         f"{sorted(_SUITES) + ['all']}")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return _SUITES[name](config)


# ----------------------------------------------------------------------
# alpha grids and emission
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class AlphaGridResult:
    """Rows of (alpha, B, B_prime, spectral_E, spectral_err); spectral columns
    are NaN unless requested."""

    rows: tuple
    with_spectral: bool
    columns = ("alpha", "B", "B_prime", "spectral_E", "spectral_err")


def alpha_grid(p: PhysParams, alphas, with_spectral: bool = False,
               config: Config = Config()) -> AlphaGridResult:
    rows = []
    for a in alphas:
        pa = PhysParams(p.hbar, p.m, a, p.v)
        b = dsc.bound_state_schrodinger(pa).energy
        bp = dpi.bound_state_pathintegral_closed(pa).energy
        se, serr = (math.nan, math.nan)
        if with_spectral:
            se, serr = oracle_spectral.delta_limit_energy(
                pa, config.sigma_ladder,
                box_decay_lengths=config.box_decay_lengths,
                min_points=config.min_points, tol=config.eigensolver_tol)
        rows.append((a, b, bp, se, serr))
    return AlphaGridResult(tuple(rows), with_spectral)


def to_jsonable(obj):
    """Recursive conversion to JSON-serializable data with stable key order."""
    if isinstance(obj, ComparisonReport):
        out = {
            "params": to_jsonable(obj.params),
            "schrodinger": to_jsonable(obj.schrodinger),
            "path_integral": to_jsonable(obj.path_integral),
            "deltas": {k: to_jsonable(v) for k, v in obj.deltas.items()},
            "bc_matrix": to_jsonable(obj.bc_matrix),
            "caveats": list(obj.caveats),
        }
        if obj.spectral is not None:
            out["spectral"] = {"energy": float(obj.spectral[0]),
                               "error_estimate": float(obj.spectral[1])}
        return out
    if isinstance(obj, dsc.BoundState):
        return {"energy": float(obj.energy),
                "decay": float(obj.decay),
                "amplitude": float(obj.wavefunction.amplitude),
                "method": obj.method}
    if isinstance(obj, dsc.BcResidual):
        return {"lhs": float(obj.lhs), "rhs": float(obj.rhs),
                "residual": float(obj.residual), "relative": float(obj.relative)}
    if isinstance(obj, SuiteOutcome):
        return {"suite_name": obj.suite_name,
                "checks": [to_jsonable(c) for c in obj.checks],
                "passed": obj.passed}
    if isinstance(obj, SuiteCheck):
        return {"name": obj.name, "measured": float(obj.measured),
                "tolerance": float(obj.tolerance), "pass": obj.passed}
    if isinstance(obj, AlphaGridResult):
        return {"columns": list(obj.columns),
                "rows": [[float(x) for x in row] for row in obj.rows]}
    if isinstance(obj, PhysParams):
        return {"hbar": obj.hbar, "m": obj.m, "alpha": obj.alpha, "v": obj.v}
    if isinstance(obj, dpi.PoleResult):
        return {"epsilon_pole": obj.epsilon_pole, "energy": obj.energy,
                "residue": obj.residue, "decay_from_residue": obj.decay_from_residue}
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, dict):
        return {k: to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    return obj


def _rows_for(obj):
    """(header, rows) for delimited emission."""
    if isinstance(obj, SuiteOutcome):
        header = ("name", "measured", "tolerance", "pass")
        rows = [(c.name, repr(float(c.measured)), repr(float(c.tolerance)),
                 str(c.passed).lower()) for c in obj.checks]
        return header, rows
    if isinstance(obj, AlphaGridResult):
        rows = [tuple(repr(float(x)) for x in row) for row in obj.rows]
        return obj.columns, rows
    if isinstance(obj, ComparisonReport):
        flat = _flatten(to_jsonable(obj))
        return ("key", "value"), [(k, _scalar_str(v)) for k, v in flat]
    raise TypeError(f"emit: unsupported object type {type(obj).__name__}")


def _flatten(data, prefix=""):
    items = []
    if isinstance(data, dict):
        for k, v in data.items():
            items.extend(_flatten(v, f"{prefix}{k}."))
    elif isinstance(data, list):
        for i, v in enumerate(data):
            items.extend(_flatten(v, f"{prefix}{i}."))
    else:
        items.append((prefix.rstrip("."), data))
    return items


def _scalar_str(v):
    if isinstance(v, float):
        return repr(v)
    return str(v)


def emit(obj, fmt: str, path) -> None:
    """Write a report, suite outcome or alpha grid to path.

    json: stable key order, full-precision numbers.  csv: header row then
    records.  gnuplot-dat: whitespace-separated columns under a '#' header.
    """
    if fmt == "json":
        text = json.dumps(to_jsonable(obj), indent=2) + "\n"
    elif fmt == "csv":
        header, rows = _rows_for(obj)
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        text = buf.getvalue()
    elif fmt == "gnuplot-dat":
        header, rows = _rows_for(obj)
        lines = ["# " + " ".join(str(h) for h in header)]
        for row in rows:
            lines.append(" ".join(_dat_field(x) for x in row))
        text = "\n".join(lines) + "\n"
    else:
        raise ValueError(f"emit: unknown format {fmt!r}")
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"emit: cannot write {path}: {exc}") from exc


def _dat_field(x) -> str:
    s = str(x)
    return s.replace(" ", "_") if " " in s else s
