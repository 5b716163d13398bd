"""Figure rendering for the command-line reports.

Uses the non-interactive backend and writes files next to the delimited
output; nothing here is required for the numeric results.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

_RC = {
    "figure.figsize": (6.4, 4.2),
    "figure.dpi": 130,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "axes.labelsize": 11,
    "legend.fontsize": 9,
    "lines.linewidth": 1.4,
}


def save_lines(path, x, series, labels, xlabel="", ylabel="", title="",
               logy=False, markers=False):
    """Render one or more y-series over a shared x axis and save to path."""
    with plt.rc_context(_RC):
        fig, ax = plt.subplots()
        for ys, label in zip(series, labels):
            style = "o-" if markers else "-"
            ax.plot(np.asarray(x), np.asarray(ys), style, label=label, markersize=3)
        if logy:
            ax.set_yscale("log")
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        if title:
            ax.set_title(title)
        if any(labels):
            ax.legend()
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
    return path


def save_stem(path, positions, values, xlabel="", ylabel="", title=""):
    """Discrete distribution plot."""
    with plt.rc_context(_RC):
        fig, ax = plt.subplots()
        ax.stem(np.asarray(positions), np.asarray(values))
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        if title:
            ax.set_title(title)
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
    return path
