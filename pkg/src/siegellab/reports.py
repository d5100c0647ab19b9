"""Delimited output and companion figures for the command-line reports.

Every CSV writer formats reals with 12 significant digits so reruns diff
cleanly, and each report can drop a rendered figure next to its delimited
file.  Figures use the Agg backend with pinned metadata; identical inputs
produce identical bytes.
"""

from __future__ import annotations

import csv
import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .plane import fmt, is_inf

# constant PNG metadata so rerenders stay byte-identical
_PNG_META = {"Software": "siegellab"}


def write_csv(path, header, rows):
    """Write rows of mixed str/real fields; reals go through fmt()."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([cell if isinstance(cell, str) else fmt(cell) for cell in row])


def _save(fig, path):
    fig.savefig(path, dpi=144, metadata=_PNG_META)
    plt.close(fig)


def figure_path(csv_path) -> str:
    s = str(csv_path)
    root = s[: -len(".csv")] if s.endswith(".csv") else s
    return root + ".png"


def boundary_figure(curve, path):
    """Scatter of the sampled boundary, colored by internal angle."""
    fig, ax = plt.subplots(figsize=(5.2, 5.2))
    sc = ax.scatter(curve.points.real, curve.points.imag, c=curve.angles, s=2.0, cmap="twilight")
    ax.plot([1.0], [0.0], marker="+", color="k", markersize=8)
    ax.set_aspect("equal")
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    ax.set_title("boundary samples (critical orbit)")
    fig.colorbar(sc, ax=ax, label="internal angle")
    _save(fig, path)


def xi_scan_figure(results, path):
    """Parameter-plane scatter colored by log distance to the boundary."""
    pts = [r for r in results if r.error is None and not is_inf(r.c) and math.isfinite(r.distance)]
    fig, ax = plt.subplots(figsize=(5.6, 5.0))
    if pts:
        xs = np.array([complex(r.c).real for r in pts])
        ys = np.array([complex(r.c).imag for r in pts])
        ds = np.array([max(r.distance, 1e-300) for r in pts])
        sc = ax.scatter(xs, ys, c=np.log10(ds), s=6.0, cmap="viridis")
        fig.colorbar(sc, ax=ax, label="log10 d(c, boundary)")
    bad = [r for r in results if r.error is not None and not is_inf(r.c)]
    if bad:
        ax.scatter(
            [complex(r.c).real for r in bad],
            [complex(r.c).imag for r in bad],
            marker="x",
            color="crimson",
            s=12.0,
            label="failed",
        )
        ax.legend(loc="upper right", fontsize=8)
    ax.set_aspect("equal")
    ax.set_xlabel("Re c")
    ax.set_ylabel("Im c")
    ax.set_title("distance from c to its boundary curve")
    _save(fig, path)


def comparability_figure(report, path):
    """Ratio ranges per return index, with the empirical comparability band."""
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    ns = [row.n for row in report.rows]
    for attr_lo, attr_hi, color, label in (
        ("backward_min", "backward_max", "tab:blue", "backward/forward"),
        ("step_min", "step_max", "tab:orange", "consecutive returns"),
    ):
        lo = [getattr(r, attr_lo) for r in report.rows]
        hi = [getattr(r, attr_hi) for r in report.rows]
        ax.fill_between(ns, lo, hi, alpha=0.3, color=color, label=label)
        ax.plot(ns, lo, color=color, lw=0.8)
        ax.plot(ns, hi, color=color, lw=0.8)
    k = report.comparability_constant
    if math.isfinite(k):
        ax.axhline(k, color="k", ls="--", lw=0.8)
        ax.axhline(1.0 / k, color="k", ls="--", lw=0.8)
    ax.set_yscale("log")
    ax.set_xlabel("return index n")
    ax.set_ylabel("length ratio")
    ax.set_title("closest-return comparability ratios")
    ax.legend(fontsize=8)
    _save(fig, path)
