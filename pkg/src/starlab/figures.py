"""File-only figure rendering for the CLI report paths.

Every renderer writes a PNG next to the delimited data it illustrates
and returns the path.  The Agg backend is forced so the package never
needs a display.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = [
    "render_grid",
    "render_product",
    "render_structure",
    "render_limit_scan",
    "render_verify_summary",
]


def render_grid(grid, path):
    """Node layout in the (phi, cos theta) rectangle, weight-colored."""
    fig, ax = plt.subplots(figsize=(6, 4))
    sc = ax.scatter(grid.phi, np.cos(grid.theta), c=grid.weights, s=14,
                    cmap="viridis")
    fig.colorbar(sc, ax=ax, label="weight (sr)")
    ax.set_xlabel("phi")
    ax.set_ylabel("cos theta")
    ax.set_title(f"quadrature nodes {grid.n_polar}x{grid.n_azimuth}")
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return path


def render_product(result, path):
    """Real and imaginary parts of the product over the node rectangle."""
    g = result.grid
    fig, axes = plt.subplots(1, 2, figsize=(9.5, 4), sharey=True)
    for ax, part, label in ((axes[0], result.values.real, "Re"),
                            (axes[1], result.values.imag, "Im")):
        lim = float(np.max(np.abs(part))) or 1.0
        sc = ax.scatter(g.phi, np.cos(g.theta), c=part, s=18, cmap="RdBu_r",
                        vmin=-lim, vmax=lim)
        fig.colorbar(sc, ax=ax)
        ax.set_title(f"{label} of {result.spec.describe()}")
        ax.set_xlabel("phi")
    axes[0].set_ylabel("cos theta")
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return path


def render_structure(tensor, path):
    """Magnitude map of the tensor, first two indices flattened."""
    ncoef = tensor.entries.shape[0]
    flat = np.abs(tensor.entries).reshape(ncoef * ncoef, ncoef)
    fig, ax = plt.subplots(figsize=(5, 7))
    im = ax.imshow(flat, aspect="auto", cmap="magma", origin="lower")
    fig.colorbar(im, ax=ax, label="|C|")
    ax.set_xlabel("(l3, m3) flat index")
    ax.set_ylabel("(l1, m1) x (l2, m2) flat index")
    ax.set_title(f"structure constants n={tensor.n}, L={tensor.L}")
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return path


def render_limit_scan(rows, path):
    """Relative error against k on a log-log scale."""
    ks = [row.k for row in rows]
    errs = [max(row.rel_error, 1e-17) for row in rows]
    fig, ax = plt.subplots(figsize=(5.5, 4))
    ax.loglog(ks, errs, "o-")
    ax.set_xlabel("k (n = 2k)")
    ax.set_ylabel("relative L2 error vs pointwise product")
    ax.set_title("classical limit trend")
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return path


def render_verify_summary(results, path):
    """Horizontal bars of log10 error per property, tolerance-marked."""
    names = [r.name for r in results]
    logerr = [math.log10(max(r.error, 1e-17)) for r in results]
    logtol = [math.log10(max(r.tolerance, 1e-17)) for r in results]
    colors = ["#2a7e43" if r.passed else "#b03030" for r in results]
    y = np.arange(len(results))
    fig, ax = plt.subplots(figsize=(8, 0.36 * len(results) + 1.6))
    ax.barh(y, [le + 17 for le in logerr], left=-17, color=colors, height=0.6)
    for yi, lt in zip(y, logtol):
        ax.plot([lt, lt], [yi - 0.4, yi + 0.4], "k-", lw=1)
    ax.set_yticks(y)
    ax.set_yticklabels(names, fontsize=8)
    ax.set_xlim(-17, 1)
    ax.set_xlabel("log10 worst error (tick = tolerance)")
    ax.set_title("property suite")
    ax.invert_yaxis()
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return path
