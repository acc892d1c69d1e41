"""Command-line interface.

Verbs: free-kernel, green, bound-state, compare, verify.  Common flags set
the physical parameters; --config reads a key=value file whose values are
overridden by explicit flags.  Exit codes: 0 success, 1 suite-check failure,
2 usage error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import delta_pathintegral as dpi
from . import delta_schrodinger as dsc
from . import gup_free as free
from . import oracle_spectral, report
from .errors import NumericsError
from .params import Config, PhysParams, PropagatorQuery, load_config

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3


def _common_flags(sub):
    sub.add_argument("--hbar", type=float, default=None)
    sub.add_argument("--m", type=float, default=None)
    sub.add_argument("--alpha", type=float, default=None)
    sub.add_argument("--v", type=float, default=None)
    sub.add_argument("--config", type=Path, default=None,
                     help="key=value file for tolerances and grid defaults")
    sub.add_argument("--out", type=Path, default=None, help="output file path")
    sub.add_argument("--format", choices=("json", "csv", "gnuplot-dat"),
                     default="json")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="gupqm",
        description="Propagators, Green's functions and bound states of the "
                    "minimal-length-corrected 1D delta potential, with "
                    "machine-checked cross-validation suites.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    k = sub.add_parser("free-kernel", help="free propagator at real or Euclidean time")
    k.add_argument("--qf", type=float, required=True)
    k.add_argument("--q0", type=float, required=True)
    grp = k.add_mutually_exclusive_group(required=True)
    grp.add_argument("--T", type=float, help="real time")
    grp.add_argument("--tau", type=float, help="Euclidean time")
    _common_flags(k)

    g = sub.add_parser("green", help="energy-domain Green's functions at eps")
    g.add_argument("--qf", type=float, required=True)
    g.add_argument("--q0", type=float, required=True)
    g.add_argument("--eps", type=float, required=True)
    g.add_argument("--free-only", action="store_true",
                   help="skip the delta-potential correction")
    _common_flags(g)

    b = sub.add_parser("bound-state", help="bound state by method")
    b.add_argument("--method", choices=(dsc.SCHRODINGER, dsc.PATH_INTEGRAL,
                                        dsc.SPECTRAL), required=True)
    _common_flags(b)

    c = sub.add_parser("compare", help="side-by-side bound-state report")
    c.add_argument("--alpha-grid", metavar="LO:HI:N", default=None,
                   help="emit a grid of alphas instead of a single report")
    c.add_argument("--with-spectral", action="store_true")
    c.add_argument("--plot", action="store_true",
                   help="render a PNG figure next to the output")
    _common_flags(c)

    v = sub.add_parser("verify", help="run an invariant suite")
    v.add_argument("--suite", required=True,
                   choices=("free", "delta-schrodinger", "delta-pathintegral",
                            "spectral", "laplace-table", "all"))
    v.add_argument("--plot", action="store_true",
                   help="render a PNG summary next to the output")
    _common_flags(v)
    return ap


def _params_and_config(args) -> tuple[PhysParams, Config]:
    config = Config()
    if args.config is not None:
        config = load_config(args.config, config)
    defaults = PhysParams()
    p = PhysParams(
        hbar=args.hbar if args.hbar is not None else defaults.hbar,
        m=args.m if args.m is not None else defaults.m,
        alpha=args.alpha if args.alpha is not None else defaults.alpha,
        v=args.v if args.v is not None else defaults.v,
    )
    return p, config


def _deliver(obj, args) -> None:
    if args.out is not None:
        report.emit(obj, args.format, args.out)
        print(f"wrote {args.out}")
    else:
        print(json.dumps(report.to_jsonable(obj), indent=2))


def _parse_grid(text: str):
    try:
        lo, hi, n = text.split(":")
        lo, hi, n = float(lo), float(hi), int(n)
    except ValueError:
        raise ValueError(f"--alpha-grid expects LO:HI:N, got {text!r}") from None
    if n < 2 or hi <= lo or lo < 0:
        raise ValueError("--alpha-grid needs 0 <= LO < HI and N >= 2")
    step = (hi - lo) / (n - 1)
    return [lo + i * step for i in range(n)]


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        p, config = _params_and_config(args)
        if args.command == "free-kernel":
            if args.T is not None:
                val = free.free_kernel(p, PropagatorQuery.realtime(args.qf, args.q0, args.T))
                _deliver({"kernel": val, "T": args.T}, args)
            else:
                val = free.free_euclidean(p, PropagatorQuery.euclidean(args.qf, args.q0, args.tau))
                _deliver({"euclidean": val, "tau": args.tau}, args)

        elif args.command == "green":
            g0 = free.free_green(p, PropagatorQuery.energy(args.qf, args.q0, args.eps))
            out = {"free": g0}
            if not args.free_only:
                q = dpi.DeltaGreenQuery(args.qf, args.q0, eps=args.eps)
                out["delta_correction"] = dpi.delta_green_closed(p, q, dpi.DELTA,
                                                                 config.pole_guard)
                out["delta_correction_expanded"] = dpi.delta_green_expanded(
                    p, q, dpi.DELTA, config.pole_guard)
                out["total"] = g0 + out["delta_correction"]
            _deliver(out, args)

        elif args.command == "bound-state":
            if args.method == dsc.SCHRODINGER:
                st = dsc.bound_state_schrodinger(p)
                _deliver(st, args)
            elif args.method == dsc.PATH_INTEGRAL:
                pole, st = dpi.bound_state_from_pole(p, config.newton_tol)
                closed = dpi.bound_state_pathintegral_closed(p)
                _deliver({"closed_form": closed, "from_pole": st, "pole": pole}, args)
            else:
                energy, est = oracle_spectral.delta_limit_energy(
                    p, config.sigma_ladder,
                    box_decay_lengths=config.box_decay_lengths,
                    min_points=config.min_points, tol=config.eigensolver_tol)
                _deliver({"energy": energy, "error_estimate": est,
                          "method": dsc.SPECTRAL}, args)

        elif args.command == "compare":
            if args.alpha_grid is not None:
                alphas = _parse_grid(args.alpha_grid)
                grid = report.alpha_grid(p, alphas, args.with_spectral, config)
                _deliver(grid, args)
                if args.plot:
                    from . import plotting
                    png = _sibling_png(args, "alpha_grid")
                    print(f"figure: {plotting.render_alpha_grid(grid, png)}")
            else:
                rep = report.compare_bound_states(p, args.with_spectral, config)
                _deliver(rep, args)
            return EXIT_OK

        elif args.command == "verify":
            outcome = report.run_suite(args.suite, config)
            _deliver(outcome, args)
            if args.plot:
                from . import plotting
                png = _sibling_png(args, f"suite_{args.suite}")
                print(f"figure: {plotting.render_suite(outcome, png)}")
            for c in outcome.checks:
                status = "pass" if c.passed else "FAIL"
                print(f"[{status}] {c.name}: measured {c.measured:.3e} "
                      f"vs tolerance {c.tolerance:.3e}", file=sys.stderr)
            return EXIT_OK if outcome.passed else EXIT_CHECK_FAILED

        return EXIT_OK
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericsError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


def _sibling_png(args, stem: str) -> Path:
    if args.out is not None:
        return args.out.with_suffix(".png")
    return Path(f"{stem}.png")


if __name__ == "__main__":
    sys.exit(main())
