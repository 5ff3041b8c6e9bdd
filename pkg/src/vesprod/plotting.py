"""
Matplotlib rendering for the figure reports.

Figures are built on a bare ``Figure`` (no pyplot state) and saved with a
fixed hash salt, text kept as text and no date stamp, so identical inputs
give identical SVG bytes.
"""

from __future__ import annotations

import matplotlib as mpl
from matplotlib.figure import Figure

RC = {
    "svg.hashsalt": "vesprod",
    "svg.fonttype": "none",
    "font.family": "DejaVu Sans",
    "font.size": 9,
    "axes.linewidth": 0.8,
    "lines.linewidth": 1.4,
    "legend.frameon": False,
    "path.simplify": False,
}


def line_chart(path, x, series, *, xlabel, ylabel, title, logx=True, logy=False, reference=None):
    """Save a line chart of up to two named series sharing ``x``.

    ``series`` is a list of (label, y) pairs.  ``reference`` draws a dotted
    horizontal line (e.g. sigma = 1).
    """
    if not 1 <= len(series) <= 2:
        raise ValueError("a chart carries one or two series")
    with mpl.rc_context(RC):
        fig = Figure(figsize=(4.5, 3.2))
        ax = fig.add_subplot()
        styles = ("-", "--")
        for (label, y), ls in zip(series, styles):
            ax.plot(x, y, ls, label=label)
        if reference is not None:
            ax.axhline(reference, color="0.5", lw=0.6, ls=":")
        if logx:
            ax.set_xscale("log")
        if logy:
            ax.set_yscale("log")
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        ax.set_title(title)
        if len(series) > 1:
            ax.legend(loc="best")
        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None})
