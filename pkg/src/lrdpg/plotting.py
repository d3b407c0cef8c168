"""Figure rendering: latent-position plots and benchmark summary curves.

All figures are written to files (SVG by default) with deterministic
content: fixed hash salt, no embedded creation date.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib
import numpy as np

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "lrdpg"

import matplotlib.pyplot as plt  # noqa: E402

from .graph import Graph, NodeLabels, degrees  # noqa: E402

__all__ = ["plot_embedding", "bench_figure", "save_figure"]


def save_figure(fig, out_path) -> None:
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    metadata = {"Date": None} if out_path.suffix.lower() == ".svg" else None
    fig.savefig(out_path, metadata=metadata)
    plt.close(fig)


def plot_embedding(coords: np.ndarray, labels: NodeLabels | None, out_path,
                   graph: Graph | None = None, title: str | None = None) -> None:
    """Scatter (d=2) or strip plot (d=1) of latent positions, colored by
    community, with the origin marked.

    When the graph is supplied, the Pearson correlation between node
    degree and distance from the origin is annotated on the figure.
    """
    coords = np.asarray(coords, dtype=np.float64)
    if coords.ndim == 1:
        coords = coords.reshape(-1, 1)
    n, d = coords.shape
    if n == 0:
        raise ValueError("embedding is empty; nothing to plot")
    if d == 0 or d > 2:
        raise ValueError(f"can only plot 1-D or 2-D embeddings, got d={d}; "
                         "project onto two columns first")
    if labels is not None and len(labels) != n:
        raise ValueError("labels do not match the embedding size")

    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    color_ids = labels.c if labels is not None else np.zeros(n, dtype=int)
    cmap = plt.get_cmap("tab10")
    if d == 2:
        for lab in np.unique(color_ids):
            sel = color_ids == lab
            name = labels.names[lab] if labels is not None and labels.names else str(lab)
            ax.scatter(coords[sel, 0], coords[sel, 1], s=14, alpha=0.7,
                       color=cmap(int(lab) % 10), label=name)
        ax.axhline(0.0, color="0.6", lw=0.8, zorder=0)
        ax.axvline(0.0, color="0.6", lw=0.8, zorder=0)
        ax.plot([0.0], [0.0], marker="+", color="black", ms=10)
        ax.set_xlabel("dimension 1")
        ax.set_ylabel("dimension 2")
    else:
        jitter_rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(0)))
        jitter = jitter_rng.uniform(-1.0, 1.0, size=n)
        for lab in np.unique(color_ids):
            sel = color_ids == lab
            name = labels.names[lab] if labels is not None and labels.names else str(lab)
            ax.scatter(coords[sel, 0], jitter[sel], s=14, alpha=0.7,
                       color=cmap(int(lab) % 10), label=name)
        ax.axvline(0.0, color="0.6", lw=0.8, zorder=0)
        ax.set_xlabel("latent coordinate")
        ax.set_yticks([])
    if graph is not None:
        if graph.n != n:
            raise ValueError("graph size does not match the embedding")
        dist = np.linalg.norm(coords, axis=1)
        corr = float(np.corrcoef(degrees(graph), dist)[0, 1])
        ax.annotate(f"corr(degree, |position|) = {corr:.2f}",
                    xy=(0.02, 0.97), xycoords="axes fraction", va="top", fontsize=9)
    if labels is not None:
        ax.legend(loc="best", fontsize=8)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    save_figure(fig, out_path)


def bench_figure(rows: list[dict], out_path) -> None:
    """Mean score vs signal, one line per method."""
    if not rows:
        raise ValueError("no benchmark rows to plot")
    methods = sorted({r["method"] for r in rows}, key=str)
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    for method in methods:
        pts: dict[float, list[float]] = {}
        for r in rows:
            if r["method"] == method:
                pts.setdefault(float(r["signal"]), []).append(float(r["jaccard"]))
        xs = sorted(pts)
        means = [float(np.mean(pts[x])) for x in xs]
        ax.plot(xs, means, marker="o", ms=4, label=method)
    ax.set_xlabel("signal")
    ax.set_ylabel("mean normalized Jaccard")
    ax.set_ylim(-0.05, 1.05)
    ax.legend(fontsize=8)
    panel = rows[0].get("panel", "")
    if panel:
        ax.set_title(f"panel {panel}")
    fig.tight_layout()
    save_figure(fig, out_path)
