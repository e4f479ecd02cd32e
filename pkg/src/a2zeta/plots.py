"""Figures for the euler and psi reports (written to files, Agg backend)."""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np
from sympy import primerange

from .dirichlet import THRESHOLDS, _psi_vector


def slope_figure(est, path, target=1.0, title=None):
    x = np.array(est.grid, dtype=float)
    fig, ax = plt.subplots(figsize=(4.5, 3.2))
    ax.semilogx(x, est.slopes, "o-", lw=1, label="log(sum a_n) / log N")
    ax.axhline(target, color="k", ls=":", lw=0.8, label=f"expected {target:g}")
    ax.axhline(est.extrapolated, color="C1", ls="--", lw=0.8,
               label=f"extrapolated {est.extrapolated:.3f}")
    ax.set_xlabel("N")
    ax.set_ylabel("slope")
    if title:
        ax.set_title(title, fontsize=9)
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def partial_sum_figure(tag, variant, s_values, prime_bound, path):
    qs = np.fromiter(primerange(2, prime_bound + 1), dtype=float)
    fig, ax = plt.subplots(figsize=(4.5, 3.2))
    for s in s_values:
        vals = _psi_vector(tag, variant, qs, s)
        if np.isinf(vals).any():
            continue
        ax.loglog(qs, np.cumsum(vals), lw=1, label=f"s = {s:g}")
    ax.set_xlabel("prime bound")
    ax.set_ylabel("partial sum")
    ax.set_title(f"{variant} {tag}, threshold {float(THRESHOLDS[tag]):.4g}", fontsize=9)
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
