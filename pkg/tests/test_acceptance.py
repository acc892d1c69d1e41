"""Acceptance criteria, one test per criterion, each at its stated tolerance.

Every subcheck is recorded as (name, measured, tolerance) and a pass/fail
line is printed per criterion.  Three criteria carry subchecks whose stated
tolerances are exceeded by the measured mathematics of the first-order
closed forms themselves (boundary-residual constants 12/48 alpha^2, pole
constants 45/27 alpha^2, and the operator-limit slope, which min-max forces
to be positive); those asserts fail honestly and the analysis lives in the
reviewer ledger.  Nothing here is loosened to force green.
"""

import math
import time

import pytest

from gupqm import delta_pathintegral as dpi
from gupqm import delta_schrodinger as dsc
from gupqm import gup_free as free
from gupqm import numerics as N
from gupqm import oracle_spectral, report
from gupqm.errors import DivergenceError
from gupqm.params import Config, PhysParams, PropagatorQuery

CONFIG = Config()


class Criterion:
    def __init__(self, number, title, budget_s):
        self.number = number
        self.title = title
        self.budget_s = budget_s
        self.t0 = time.monotonic()
        self.rows = []

    def check(self, name, measured, tolerance):
        self.rows.append((name, float(measured), float(tolerance)))

    def check_true(self, name, ok):
        self.rows.append((name, 0.0 if ok else 1.0, 0.5))

    def conclude(self):
        elapsed = time.monotonic() - self.t0
        self.rows.append((f"runtime < {self.budget_s} s", elapsed, self.budget_s))
        failures = [(n, m, t) for n, m, t in self.rows if not m <= t]
        verdict = "PASS" if not failures else "FAIL"
        print(f"\nACCEPTANCE {self.number} [{verdict}] {self.title} "
              f"({len(self.rows) - len(failures)}/{len(self.rows)} subchecks, "
              f"{elapsed:.1f} s)")
        for n, m, t in self.rows:
            mark = "ok  " if m <= t else "FAIL"
            print(f"  [{mark}] {n}: measured {m:.6g} vs tolerance {t:.6g}")
        assert not failures, (
            f"criterion {self.number}: {len(failures)} subcheck(s) beyond stated "
            f"tolerance: {failures} (see decisions ledger for the analysis)")


def test_criterion_1_free_sector_oracle_equivalence():
    c = Criterion(1, "free closed form vs truncated-integrand oracle", 10.0)
    worst = 0.0
    for alpha in (0.0, 1e-4, 1e-3):
        p = PhysParams(alpha=alpha)
        for dq in (0.0, 0.5, 1.0, 2.0):
            for tau in (0.5, 1.0, 2.0):
                q = PropagatorQuery.euclidean(dq, 0.0, tau)
                closed = free.free_euclidean(p, q)
                oracle = free.euclidean_oracle(p, q, free.TRUNCATED, CONFIG.quad)
                worst = max(worst, abs(closed - oracle) / abs(oracle))
    c.check("36-point grid relative error", worst, 1e-8)
    c.conclude()


def test_criterion_2_green_function_transform():
    c = Criterion(2, "Laplace transform of the propagator vs Green's function", 10.0)
    for alpha in (0.0, 1e-3):
        p = PhysParams(alpha=alpha)
        worst = 0.0
        for dq in (0.5, 1.0, 2.0):
            for eps in (0.5, 1.0, 2.0):
                fwd = N.laplace_forward(
                    lambda t: free.free_euclidean(
                        p, PropagatorQuery.euclidean(dq, 0.0, t)), eps, CONFIG.quad)
                direct = free.free_green(p, PropagatorQuery.energy(dq, 0.0, eps))
                worst = max(worst, abs(fwd - direct) / abs(direct))
        c.check(f"9-point grid at alpha={alpha}", worst, max(1e-8, 5.0 * alpha**2))
    refused = False
    try:
        N.laplace_forward(
            lambda t: free.free_euclidean(
                PhysParams(alpha=1e-3), PropagatorQuery.euclidean(0.0, 0.0, t)),
            1.0, CONFIG.quad)
    except DivergenceError:
        refused = True
    c.check_true("coincident-point transform refused as divergent", refused)
    c.conclude()


def test_criterion_3_inverse_laplace_table():
    c = Criterion(3, "all five inverse-Laplace pairs, both directions", 5.0)
    outcome = report.verify_laplace_table(CONFIG)
    for chk in outcome.checks:
        c.check(chk.name, chk.measured, chk.tolerance)
    c.conclude()


def test_criterion_4_delta_sector_transform_consistency():
    c = Criterion(4, "delta-sector correction: time domain vs energy domain", 30.0)
    for alpha in (0.0, 1e-3):
        p = PhysParams(alpha=alpha)
        pole = dpi.pole_location(p)
        for eps in (1.0, 2.0):
            fwd = N.laplace_forward(
                lambda t: dpi.delta_propagator_time(
                    p, dpi.DeltaGreenQuery(1.0, 1.0, tau=t), dpi.DELTA),
                eps, CONFIG.quad)
            hat = dpi.delta_green_expanded(p, dpi.DeltaGreenQuery(1.0, 1.0, eps=eps))
            c.check(f"forward alpha={alpha} eps={eps}",
                    abs(fwd - hat) / abs(hat), 1e-6)
        # eps = 0.5 lies at/left of the bound-state pole: the transform
        # provably diverges there and must be refused, not matched
        refused = False
        try:
            N.laplace_forward(
                lambda t: dpi.delta_propagator_time(
                    p, dpi.DeltaGreenQuery(1.0, 1.0, tau=t), dpi.DELTA),
                0.5, CONFIG.quad)
        except DivergenceError:
            refused = True
        c.check_true(f"eps=0.5 (left of the pole at {pole:.4f}) refused", refused)
        for tau in (0.5, 1.0, 2.0):
            inv = N.talbot_inverse(
                lambda s: dpi.expanded_green_correction(p, 2.0, s), tau,
                CONFIG.talbot, rel_tol=CONFIG.talbot_rel_tol, abscissa_min=pole)
            direct = dpi.delta_propagator_time(
                p, dpi.DeltaGreenQuery(1.0, 1.0, tau=tau), dpi.DELTA)
            c.check(f"Talbot alpha={alpha} tau={tau}",
                    abs(inv - direct) / abs(direct), 1e-6)
    c.conclude()


def test_criterion_5_alpha_zero_ground_truth():
    c = Criterion(5, "alpha = 0: image representation and textbook bound state", 5.0)
    p = PhysParams(alpha=0.0)
    worst = 0.0
    for qf, q0, tau in ((1.0, 1.0, 1.0), (1.0, 0.7, 0.5), (0.3, 1.6, 2.0)):
        q = dpi.DeltaGreenQuery(qf, q0, tau=tau)
        erfc_form = dpi.delta_propagator_time(p, q, dpi.DELTA)
        image = dpi.image_integral_oracle(p, q, CONFIG.quad)
        worst = max(worst, abs(erfc_form - image) / abs(image))
    c.check("erfc form vs image-integral form", worst, 1e-8)
    state = dsc.bound_state_schrodinger(p)
    c.check("bound-state energy is -m v^2 / 2 hbar^2 exactly",
            abs(state.energy - (-0.5)), 0.0)
    c.conclude()


def test_criterion_6_inequivalence_reproduction():
    c = Criterion(6, "headline inequivalence report at alpha = 0.01", 1.0)
    p = PhysParams(hbar=1.0, m=1.0, alpha=0.01, v=-1.0)
    rep = report.compare_bound_states(p, config=CONFIG)
    tol = 10.0 * p.alpha**2
    c.check("B = -0.51", abs(rep.schrodinger.energy - (-0.51)), tol)
    c.check("B' = -0.53", abs(rep.path_integral.energy - (-0.53)), tol)
    c.check("a = 1.02", abs(rep.schrodinger.decay - 1.02), tol)
    c.check("a' = 1.04", abs(rep.path_integral.decay - 1.04), tol)
    c.check("energy gap = 2 alpha", abs(rep.deltas["energy_gap"] - 0.02), tol)
    c.check("decay gap = 2 alpha", abs(rep.deltas["decay_gap"] - 0.02), tol)
    diag1 = rep.bc_matrix["schrodinger_state"]["schrodinger_bc"]
    diag2 = rep.bc_matrix["path_integral_state"]["path_integral_bc"]
    c.check("diagonal residual (stationary state, own condition)",
            abs(diag1.relative), tol)
    c.check("diagonal residual (pole state, own condition)",
            abs(diag2.relative), tol)
    off1 = rep.bc_matrix["schrodinger_state"]["path_integral_bc"]
    off2 = rep.bc_matrix["path_integral_state"]["schrodinger_bc"]
    for name, res in (("stationary state under propagator condition", off1),
                      ("pole state under stationary condition", off2)):
        dev = abs(abs(res.relative) - 2.0 * p.alpha)
        c.check(f"off-diagonal {name} = 2 alpha (1 +/- 0.1)",
                dev, 0.1 * 2.0 * p.alpha)
    c.conclude()


def test_criterion_7_pole_extraction():
    c = Criterion(7, "Newton pole and residue vs first-order closed forms", 1.0)
    for alpha in (1e-4, 1e-3, 1e-2):
        p = PhysParams(alpha=alpha)
        pole, _ = dpi.bound_state_from_pole(p, CONFIG.newton_tol)
        closed_eps = 0.5 * (1.0 + 6.0 * alpha)
        c.check(f"pole vs -B'/hbar at alpha={alpha} (relative)",
                abs(pole.epsilon_pole - closed_eps) / closed_eps, 10.0 * alpha**2)
        closed_decay = 1.0 + 4.0 * alpha
        c.check(f"residue decay vs a' at alpha={alpha} (relative)",
                abs(pole.decay_from_residue - closed_decay) / closed_decay,
                10.0 * alpha**2)
    c.conclude()


def test_criterion_8_spectral_adjudication():
    c = Criterion(8, "operator-oracle slope adjudication", 300.0)
    p = PhysParams(alpha=0.0)
    slope, err = oracle_spectral.alpha_slope(
        p, CONFIG.alpha_ladder, CONFIG.sigma_ladder,
        box_decay_lengths=CONFIG.box_decay_lengths,
        min_points=CONFIG.min_points, tol=CONFIG.eigensolver_tol)
    c.check("slope within 10% of -1 (stationary-equation coefficient)",
            abs(slope - (-1.0)), 0.1)
    c.check_true("slope >= 3 error estimates away from -3 "
                 f"(slope {slope:.2f} +- {err:.2f})",
                 abs(slope - (-3.0)) >= 3.0 * err)
    energy, est = oracle_spectral.delta_limit_energy(
        p, CONFIG.sigma_ladder, box_decay_lengths=CONFIG.box_decay_lengths,
        min_points=CONFIG.min_points, tol=CONFIG.eigensolver_tol)
    c.check("alpha = 0 extrapolated energy within 1e-3 of -0.5",
            abs(energy - (-0.5)), 1e-3)
    c.conclude()


def test_criterion_9_order_of_validity_scaling():
    c = Criterion(9, "first-order residuals shrink x4 under alpha -> alpha/2", 30.0)

    def ratio(f, alpha):
        return f(alpha) / f(alpha / 2.0)

    def bc_diag_schr(alpha):
        p = PhysParams(alpha=alpha)
        return abs(dsc.bc_residual_schrodinger(
            p, dsc.bound_state_schrodinger(p).wavefunction).relative)

    def bc_diag_pint(alpha):
        p = PhysParams(alpha=alpha)
        return abs(dpi.bc_residual_pathintegral(
            p, dpi.bound_state_pathintegral_closed(p).wavefunction).relative)

    def pole_energy_gap(alpha):
        pole, _ = dpi.bound_state_from_pole(PhysParams(alpha=alpha))
        return abs(pole.epsilon_pole - 0.5 * (1.0 + 6.0 * alpha))

    def pole_decay_gap(alpha):
        pole, _ = dpi.bound_state_from_pole(PhysParams(alpha=alpha))
        return abs(pole.decay_from_residue - (1.0 + 4.0 * alpha))

    def green_completion_gap(alpha):
        p = PhysParams(alpha=alpha)
        q = dpi.DeltaGreenQuery(1.0, 1.0, eps=1.0)
        return abs(dpi.delta_green_expanded(p, q)
                   - dpi.delta_green_closed(p, q, dpi.DELTA))

    def schwinger_defect(alpha):
        return dpi.schwinger_convolution_residual(PhysParams(alpha=alpha),
                                                  1.0, 1.0, 1.0)

    for name, f in (("stationary-condition diagonal residual", bc_diag_schr),
                    ("propagator-condition diagonal residual", bc_diag_pint),
                    ("pole-energy gap to closed form", pole_energy_gap),
                    ("pole-decay gap to closed form", pole_decay_gap),
                    ("expanded-vs-resummed Green gap", green_completion_gap),
                    ("time-domain self-consistency defect", schwinger_defect)):
        for alpha in (1e-3, 1e-2):
            c.check(f"{name} ratio at alpha={alpha}",
                    abs(ratio(f, alpha) - 4.0), 1.0)
    c.conclude()


def test_criterion_10_property_suites():
    c = Criterion(10, "property suites via verify --suite all", 600.0)
    outcome = report.run_suite("all", CONFIG)
    names = {chk.name: chk for chk in outcome.checks}
    required = (
        "semigroup composition (full-exponent oracle)",
        "normalization of the full-exponent oracle",
        "endpoint-exchange symmetry (exact)",
        "erfc reflection erfc(x)+erfc(-x)=2",
        "erfcx consistency erfcx(x) e^{-x^2} = erfc(x)",
        "Laplace-type Bessel integral identity",
        "analytic normalization amplitude^2/decay = 1",
        "correction depends only on |q_f|, |q_0|; "
        "full G exchange- and reflection-symmetric",
    )
    for name in required:
        chk = names[name]
        c.check(chk.name, chk.measured, chk.tolerance)
    c.conclude()
