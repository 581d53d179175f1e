"""Deterministic SVG line plots of result tables."""
from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

__all__ = ["plot_table"]

_RC = {"svg.hashsalt": "shearlab", "svg.fonttype": "path", "path.simplify": False}


def plot_table(
    path: str | Path,
    header: Sequence[str],
    rows: Sequence[Sequence],
    x: str,
    ys: Sequence[str],
    group: str | None = None,
    scale: str = "linear",
    title: str = "",
) -> None:
    """Write one SVG with a polyline per (y column, group value).

    ``scale`` is ``linear``, ``semilogy`` or ``loglog``; on log axes the
    absolute value is plotted and non-positive points are dropped.
    """
    cols = {name: i for i, name in enumerate(header)}
    groups = sorted({r[cols[group]] for r in rows}, key=str) if group else [None]
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(6, 4))
        for g in groups:
            sel = [r for r in rows if group is None or r[cols[group]] == g]
            xv = np.array([float(r[cols[x]]) for r in sel])
            for y in ys:
                yv = np.array([float(np.real(r[cols[y]])) for r in sel])
                if scale != "linear":
                    yv = np.abs(yv)
                    keep = yv > 0
                    if scale == "loglog":
                        keep &= xv > 0
                    xs, yv2 = xv[keep], yv[keep]
                else:
                    xs, yv2 = xv, yv
                label = y if g is None else f"{y} ({group}={g})"
                ax.plot(xs, yv2, marker="o", markersize=3, label=label)
        if scale == "loglog":
            ax.set_xscale("log")
            ax.set_yscale("log")
        elif scale == "semilogy":
            ax.set_yscale("log")
        ax.set_xlabel(x)
        ax.set_title(title)
        if len(ys) * len(groups) <= 12:
            ax.legend(fontsize=7)
        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)
