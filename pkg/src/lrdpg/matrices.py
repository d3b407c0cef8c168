"""Matrix normalizations feeding the spectral clustering methods.

All builders return dense symmetric float64 arrays:

- mean-centered adjacency B = A - mean (the matrix whose top eigenvectors
  drive the embedding),
- modularity matrix M = A - d d^T / 2|E|,
- symmetric normalized Laplacian L = D^{-1/2} (D - A) D^{-1/2},
- Bethe Hessian H(r) = (r^2 - 1) I - r A + D.
"""

from __future__ import annotations

import numpy as np

from .graph import Graph, degrees, density

__all__ = [
    "build_centered",
    "build_modularity",
    "build_norm_laplacian",
    "build_bethe_hessian",
    "bethe_radius",
]


def build_centered(g: Graph) -> np.ndarray:
    """A minus its off-diagonal mean, subtracted from every entry.

    The diagonal therefore holds -mean; off-diagonal entries sum to zero.
    """
    if g.n < 2:
        raise ValueError("centered matrix needs at least 2 nodes")
    return g.adjacency() - density(g)


def build_modularity(g: Graph) -> np.ndarray:
    """A - d d^T / 2|E| with d the degree vector; all row sums are zero."""
    if g.num_edges < 1:
        raise ValueError("modularity matrix undefined for an edgeless graph")
    d = degrees(g).astype(np.float64)
    return g.adjacency() - np.outer(d, d) / (2.0 * g.num_edges)


def build_norm_laplacian(g: Graph) -> np.ndarray:
    """D^{-1/2} (D - A) D^{-1/2}; unit diagonal, eigenvalues in [0, 2]."""
    d = degrees(g)
    if (d == 0).any():
        bad = int(np.flatnonzero(d == 0)[0])
        raise ValueError(f"normalized Laplacian undefined: node {bad} has degree 0 "
                         "(drop isolated nodes first)")
    inv_sqrt = 1.0 / np.sqrt(d.astype(np.float64))
    lap = -g.adjacency() * np.outer(inv_sqrt, inv_sqrt)
    np.fill_diagonal(lap, 1.0)
    return lap


def bethe_radius(g: Graph) -> tuple[float, bool]:
    """Default deformation r = sqrt(mean degree).

    Returns (r, degenerate); when the mean degree is <= 1 the radius
    falls back to 1 + 1e-6 and the degenerate flag is set.
    """
    mean_deg = float(degrees(g).mean())
    if mean_deg > 1.0:
        return float(np.sqrt(mean_deg)), False
    return 1.0 + 1e-6, True


def build_bethe_hessian(g: Graph, r: float | None = None) -> np.ndarray:
    """(r^2 - 1) I - r A + D, defaulting r to sqrt(mean degree)."""
    if r is None:
        r, _ = bethe_radius(g)
    h = -r * g.adjacency()
    np.fill_diagonal(h, r * r - 1.0)
    h[np.diag_indices(g.n)] += degrees(g)
    return h
