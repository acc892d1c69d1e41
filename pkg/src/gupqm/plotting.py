"""Optional figure rendering for the report path.

Renders PNG figures next to the delimited output when the CLI is invoked
with --plot.  Nothing in the verification logic depends on this module.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

_RC = {
    "figure.dpi": 150,
    "font.size": 9,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "legend.frameon": False,
}


def render_alpha_grid(grid, path) -> str:
    """Bound-state energies against alpha: both first-order closed forms and,
    when present, the operator-oracle extrapolation with its error bars."""
    alphas = [r[0] for r in grid.rows]
    b = [r[1] for r in grid.rows]
    bp = [r[2] for r in grid.rows]
    with plt.rc_context(_RC):
        fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(8.0, 3.2))
        ax1.plot(alphas, b, "o-", label="stationary-equation B")
        ax1.plot(alphas, bp, "s-", label="resolvent-pole B'")
        if grid.with_spectral and not all(math.isnan(r[3]) for r in grid.rows):
            ax1.errorbar(alphas, [r[3] for r in grid.rows],
                         yerr=[r[4] for r in grid.rows],
                         fmt="^", capsize=3, label="operator oracle")
        ax1.set_xlabel(r"$\alpha$")
        ax1.set_ylabel("bound-state energy")
        ax1.legend()
        gaps = [bi - bpi for bi, bpi in zip(b, bp)]
        ax2.plot(alphas, gaps, "o-", label="B - B'")
        ax2.plot(alphas, [2.0 * a for a in alphas], "--",
                 label=r"$2\alpha$ (units $\hbar=m=1$, $v=-1$)")
        ax2.set_xlabel(r"$\alpha$")
        ax2.set_ylabel("energy gap")
        ax2.legend()
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
    return str(path)


def render_suite(outcome, path) -> str:
    """Horizontal bar chart of measured/tolerance per check (log scale);
    bars crossing 1 are failures."""
    names = [c.name for c in outcome.checks]
    ratios = []
    for c in outcome.checks:
        if c.tolerance > 0:
            ratios.append(max(c.measured, 1e-18) / c.tolerance)
        else:
            ratios.append(1e-18 if c.passed else 10.0)
    colors = ["tab:green" if c.passed else "tab:red" for c in outcome.checks]
    height = max(2.0, 0.28 * len(names) + 1.0)
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(8.5, height))
        ax.barh(range(len(names)), ratios, color=colors)
        ax.set_yticks(range(len(names)))
        ax.set_yticklabels(names, fontsize=6)
        ax.set_xscale("log")
        ax.axvline(1.0, color="k", lw=1)
        ax.set_xlabel("measured / tolerance (1 = at tolerance)")
        ax.set_title(f"suite '{outcome.suite_name}': "
                     f"{'pass' if outcome.passed else 'FAIL'}")
        ax.invert_yaxis()
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
    return str(path)
