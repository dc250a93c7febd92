"""Naturality heatmap: which outer cells are natural with respect to which inner cells."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.colors import ListedColormap  # noqa: E402

from .naturality import naturality_matrix  # noqa: E402

TICK_LIMIT = 40


def _label(x, width: int = 12) -> str:
    s = str(x)
    return s if len(s) <= width else s[: width - 1] + "~"


def naturality_heatmap(H, path=None, title: str | None = None, labels=None):
    """Draw the natural_wrt grid of H; grey marks pairs that do not compose.

    ``labels`` maps cells to display names. Returns the figure and writes it
    to ``path`` when given.
    """
    cells, grid = naturality_matrix(H)
    n = len(cells)
    values = np.full((n, n), np.nan)
    for i, row in enumerate(grid):
        for j, v in enumerate(row):
            if v is not None:
                values[i, j] = 1.0 if v else 0.0
    side = min(12.0, 2.5 + 0.25 * n)
    fig, ax = plt.subplots(figsize=(side, side))
    cmap = ListedColormap(["#c0392b", "#27ae60"])
    cmap.set_bad("#d9d9d9")
    ax.imshow(np.ma.masked_invalid(values), cmap=cmap, vmin=0, vmax=1, interpolation="nearest")
    if n <= TICK_LIMIT:
        names = [_label(labels.get(x, x) if labels else x) for x in cells]
        ax.set_xticks(range(n), names, rotation=90, fontsize=7)
        ax.set_yticks(range(n), names, fontsize=7)
    else:
        ax.set_xticks([])
        ax.set_yticks([])
    ax.set_xlabel("inner cell z")
    ax.set_ylabel("outer cell x")
    failing = int(np.nansum(values == 0))
    ax.set_title(title or f"natural_wrt(x, z): {failing} failing pairs")
    fig.tight_layout()
    if path is not None:
        fig.savefig(path, dpi=120)
        plt.close(fig)
    return fig
