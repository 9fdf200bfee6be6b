"""Figure builders: log-log profile panels and the exponent-vs-alpha chart.

Pure functions of the CSV input: chemical potential selects the color,
inverse temperature the line style, chain length the line weight.  Output is
vector SVG with suppressed timestamps and a fixed hash salt so identical
input renders to identical bytes.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)
import numpy as np  # noqa: E402

from .schema import ProfileRow, SummaryRow, read_profiles, read_summary  # noqa: E402

matplotlib.rcParams["svg.hashsalt"] = "corrplots"

MU_COLORS = {0.5: "tab:blue", 1.0: "tab:orange", 1.5: "tab:green"}
BETA_STYLES = {0.1: ":", 1.0: "--", math.inf: "-"}
FALLBACK_COLORS = ["tab:red", "tab:purple", "tab:brown", "tab:pink", "tab:gray"]
FALLBACK_STYLES = ["-.", (0, (5, 1)), (0, (1, 1))]


@dataclass
class FigureSpec:
    """Inputs and styling of one figure.

    ``kind`` is ``profiles`` or ``nu_summary``; ``mu_colors`` and
    ``beta_styles`` extend the defaults (color per chemical potential, line
    style per inverse temperature).
    """

    csv_path: str
    kind: str
    output_path: str
    mu_colors: dict[float, str] = field(default_factory=dict)
    beta_styles: dict[float, object] = field(default_factory=dict)

    def color_for(self, mu: float, order: int) -> str:
        table = {**MU_COLORS, **self.mu_colors}
        return table.get(mu, FALLBACK_COLORS[order % len(FALLBACK_COLORS)])

    def style_for(self, beta: float, order: int):
        table = {**BETA_STYLES, **self.beta_styles}
        return table.get(beta, FALLBACK_STYLES[order % len(FALLBACK_STYLES)])


def _beta_label(beta: float) -> str:
    return "∞" if math.isinf(beta) else f"{beta:g}"


def _save(fig, path: str) -> None:
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def build_profiles_figure(rows: list[ProfileRow], spec: FigureSpec):
    """One panel per interaction exponent; curves overlay every chain length."""
    alphas = sorted({r.alpha for r in rows})
    mus = sorted({r.mu for r in rows})
    betas = sorted({r.beta for r in rows})
    sizes = sorted({r.L for r in rows})

    fig, axes = plt.subplots(
        1, len(alphas), figsize=(3.2 * len(alphas), 3.4), sharey=True, squeeze=False
    )
    for ax, alpha in zip(axes[0], alphas):
        for mu in mus:
            for beta in betas:
                for L in sizes:
                    pts = [
                        (r.l, r.corr)
                        for r in rows
                        if r.alpha == alpha and r.mu == mu and r.beta == beta and r.L == L
                    ]
                    if not pts:
                        continue
                    pts.sort()
                    ls, corr = zip(*pts)
                    ax.plot(
                        ls,
                        corr,
                        linestyle=spec.style_for(beta, betas.index(beta)),
                        color=spec.color_for(mu, mus.index(mu)),
                        linewidth=0.7 + 0.4 * sizes.index(L),
                        alpha=0.9,
                        label=f"μ={mu:g}, β={_beta_label(beta)}, L={L}",
                    )
        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.set_title(f"α = {alpha:g}")
        ax.set_xlabel("l")
    axes[0][0].set_ylabel("|corr(n_i, n_{i+l})|")
    handles, labels = axes[0][0].get_legend_handles_labels()
    if handles:
        fig.legend(handles, labels, loc="outside right upper", fontsize=6)
    return fig


def build_nu_summary_figure(rows: list[SummaryRow], spec: FigureSpec):
    """Exponent against interaction decay, with the excluded region shaded.

    The shading is drawn at the limiting boundary nu = 2*alpha; the bound
    formally excludes nu < 2*(1-eps)*alpha for every eps > 0 at T > 0.
    """
    if all(r.passed == "" for r in rows):
        warnings.warn("summary has no exclusion verdicts; rendering without them")
    mus = sorted({r.mu for r in rows})
    betas = sorted({r.beta for r in rows})

    fig, ax = plt.subplots(figsize=(4.6, 3.6))
    alpha_grid = np.linspace(0.0, max(r.alpha for r in rows) * 1.05, 200)
    ax.fill_between(
        alpha_grid,
        0.0,
        2.0 * alpha_grid,
        color="0.8",
        zorder=0,
        label="excluded for T > 0 (limit ε → 0)",
    )
    for mu in mus:
        for beta in betas:
            pts = sorted(
                (r.alpha, r.nu)
                for r in rows
                if r.mu == mu and r.beta == beta and r.nu is not None
            )
            if not pts:
                continue
            xs, ys = zip(*pts)
            ax.plot(
                xs,
                ys,
                marker="o",
                markersize=3,
                linestyle=spec.style_for(beta, betas.index(beta)),
                color=spec.color_for(mu, mus.index(mu)),
                label=f"μ={mu:g}, β={_beta_label(beta)}",
            )
    ax.set_xlabel("α")
    ax.set_ylabel("ν")
    ax.set_xlim(left=0.0)
    ax.set_ylim(bottom=0.0)
    ax.legend(fontsize=6)
    return fig


def plot_profiles(spec: FigureSpec) -> str:
    if spec.kind != "profiles":
        raise ValueError(f"spec kind {spec.kind!r} is not 'profiles'")
    fig = build_profiles_figure(read_profiles(spec.csv_path), spec)
    _save(fig, spec.output_path)
    return spec.output_path


def plot_nu_summary(spec: FigureSpec) -> str:
    if spec.kind != "nu_summary":
        raise ValueError(f"spec kind {spec.kind!r} is not 'nu_summary'")
    fig = build_nu_summary_figure(read_summary(spec.csv_path), spec)
    _save(fig, spec.output_path)
    return spec.output_path
