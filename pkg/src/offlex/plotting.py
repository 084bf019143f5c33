"""Figures written next to the text reports: confusion heatmaps and weight bars."""
from __future__ import annotations

from pathlib import Path
from typing import Sequence, Union

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.titlesize": 10,
    "axes.labelsize": 9,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "savefig.dpi": 150,
    "savefig.bbox": "tight",
}

PathLike = Union[str, Path]


def _save(fig, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_confusion(report, path: PathLike, title: str = "") -> Path:
    """Heatmap of gold (rows) versus predicted (columns) counts."""
    m = report.matrix
    with plt.rc_context(STYLE):
        k = len(m.labels)
        fig, ax = plt.subplots(figsize=(1.2 * k + 1.5, 1.2 * k + 1.0))
        ax.imshow(m.counts, cmap="Blues")
        peak = m.counts.max() or 1
        for i in range(k):
            for j in range(k):
                c = int(m.counts[i, j])
                ax.text(j, i, str(c), ha="center", va="center",
                        color="white" if c > 0.6 * peak else "black")
        ax.set_xticks(range(k), m.labels)
        ax.set_yticks(range(k), m.labels)
        ax.set_xlabel("predicted")
        ax.set_ylabel("gold")
        sub = f"macro-F1 {report.macro_f1:.2f}, acc {report.accuracy:.2f}"
        ax.set_title(f"{title}\n{sub}" if title else sub)
        return _save(fig, path)


def plot_feature_weights(report, path: PathLike, k: int = 20) -> Path:
    """One horizontal bar panel per class, heaviest weight on top."""
    labels = list(report.per_class)
    with plt.rc_context(STYLE):
        fig, axes = plt.subplots(1, len(labels), figsize=(3.2 * len(labels), 0.22 * k + 1.2),
                                 squeeze=False)
        for ax, lab in zip(axes[0], labels):
            rows = report.per_class[lab][:k]
            terms = [t for t, _ in rows][::-1]
            weights = [w for _, w in rows][::-1]
            ax.barh(np.arange(len(rows)), weights, color="tab:red" if lab == labels[-1] else "tab:blue")
            ax.set_yticks(np.arange(len(rows)), terms)
            ax.set_title(lab)
            ax.set_xlabel("weight")
        fig.tight_layout()
        return _save(fig, path)


def plot_ratios(rows: Sequence, path: PathLike, k: int = 30) -> Path:
    rows = list(rows)[:k]
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(4.5, 0.2 * len(rows) + 1.2))
        y = np.arange(len(rows))[::-1]
        ax.barh(y, [r.ratio for r in rows], color="tab:red")
        ax.set_yticks(y, [r.term for r in rows])
        ax.set_xlabel("OFF / max(NOT, 1)")
        return _save(fig, path)
