"""Render cost-model sweeps to image files."""

from __future__ import annotations

from collections import defaultdict
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .costmodel import SweepRow  # noqa: E402

_LABELS = {"hill": "Hill", "affine": "Affine Hill", "lin": "Lin et al.", "proposed": "Hash-chained"}
_DIRS = {"enc": "encryption", "dec": "decryption"}


def get_plot(width: float = 8, height: float | None = None):
    golden_ratio = (5**0.5 - 1.0) / 2.0
    if not height:
        height = width * golden_ratio
    fig, ax = plt.subplots(figsize=(width, height), facecolor="w")
    ax.tick_params(labelsize=width * 1.4)
    return fig, ax


def plot_sweep(rows: Sequence[SweepRow], path: str | Path, xlabel: str, title: str = "") -> Path:
    """Draw one line per (scheme, direction) series and save the figure.

    Modulus sweeps are drawn as steps since the cost only changes when the
    bit-length of p does.
    """
    series: dict[tuple[str, str], list[SweepRow]] = defaultdict(list)
    for row in rows:
        series[row.scheme.value, row.direction.value].append(row)

    fig, ax = get_plot()
    for (scheme, direction), pts in series.items():
        pts.sort(key=lambda r: r.x)
        xs = [r.x for r in pts]
        ys = [r.total_ops for r in pts]
        label = f"{_LABELS.get(scheme, scheme)} {_DIRS[direction]}"
        if xlabel.startswith("modulus"):
            ax.step(xs, ys, where="post", label=label)
        else:
            ax.plot(xs, ys, marker="o", markersize=3, label=label)
    ax.set_xlabel(xlabel, fontsize=12)
    ax.set_ylabel("total number of operations", fontsize=12)
    if title:
        ax.set_title(title, fontsize=12)
    ax.grid(alpha=0.3)
    ax.legend(fontsize=9)
    fig.tight_layout()

    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
