"""k-means post-processing and the uniform clustering front-end.

`cluster_graph` maps a method name to its spectral coordinates (scaled
latent positions for the embedding method, raw eigenvectors for the
baselines) and runs seeded k-means++ with restarts on them.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .eigen import bottom_eigenpairs_skip, top_eigenpairs
from .embed import fit_embedding
from .graph import Graph, NodeLabels
from .matrices import (bethe_radius, build_bethe_hessian, build_centered,
                       build_modularity, build_norm_laplacian)

__all__ = ["KMeansResult", "kmeans", "cluster_graph", "METHODS"]

log = logging.getLogger(__name__)

METHODS = ("logistic-rdpg", "adjacency", "centered-unscaled",
           "modularity", "norm-laplacian", "bethe-hessian")


@dataclass(frozen=True)
class KMeansResult:
    assignments: np.ndarray
    centroids: np.ndarray
    inertia: float
    restarts_used: int


def _plusplus_init(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = points.shape[0]
    centers = np.empty((k, points.shape[1]))
    centers[0] = points[int(rng.integers(n))]
    d2 = ((points - centers[0]) ** 2).sum(axis=1)
    for c in range(1, k):
        total = float(d2.sum())
        if total <= 0.0:
            idx = int(rng.integers(n))
        else:
            u = rng.random() * total
            idx = min(int(np.searchsorted(np.cumsum(d2), u)), n - 1)
        centers[c] = points[idx]
        d2 = np.minimum(d2, ((points - centers[c]) ** 2).sum(axis=1))
    return centers


def _lloyd(points: np.ndarray, centers: np.ndarray, max_iter: int = 300):
    """Lloyd iterations until assignments are stable; returns the result
    plus the per-iteration inertia history (non-increasing)."""
    n, k = points.shape[0], centers.shape[0]
    assign = np.full(n, -1, dtype=np.int64)
    history = []
    for _ in range(max_iter):
        dists = ((points[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        new_assign = dists.argmin(axis=1)
        own = dists[np.arange(n), new_assign]
        counts = np.bincount(new_assign, minlength=k)
        for empty in np.flatnonzero(counts == 0):
            far = int(np.argmax(own))
            counts[new_assign[far]] -= 1
            new_assign[far] = empty
            counts[empty] = 1
            own[far] = 0.0
        history.append(float(own.sum()))
        if (new_assign == assign).all():
            break
        assign = new_assign
        for c in range(k):
            members = points[assign == c]
            if members.shape[0]:
                centers[c] = members.mean(axis=0)
    # make centroids exact means of the final assignment, then score it
    for c in range(k):
        members = points[assign == c]
        if members.shape[0]:
            centers[c] = members.mean(axis=0)
    dists = ((points[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
    inertia = float(dists[np.arange(n), assign].sum())
    return assign, centers, inertia, history


def kmeans(points: np.ndarray, k: int, seed: int, restarts: int = 50) -> KMeansResult:
    """Best-inertia result over `restarts` k-means++ initializations.

    Restart r uses an independent Philox substream of `seed`, so the
    result does not depend on execution order.
    """
    points = np.asarray(points, dtype=np.float64)
    if points.ndim == 1:
        points = points.reshape(-1, 1)
    n = points.shape[0]
    if n == 0:
        raise ValueError("no points to cluster")
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= {n}, got k={k}")
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    best = None
    for r in range(restarts):
        rng = np.random.Generator(np.random.Philox(
            np.random.SeedSequence(entropy=int(seed), spawn_key=(r,))))
        centers = _plusplus_init(points, k, rng)
        assign, centers, inertia, _ = _lloyd(points, centers)
        if best is None or inertia < best.inertia:
            best = KMeansResult(assignments=assign, centroids=centers,
                                inertia=inertia, restarts_used=r + 1)
    return KMeansResult(assignments=best.assignments, centroids=best.centroids,
                        inertia=best.inertia, restarts_used=restarts)


def _method_coordinates(g: Graph, method: str, d: int,
                        bethe_r: float | None = None) -> np.ndarray:
    if method == "logistic-rdpg":
        emb = fit_embedding(g, d)
        coords = emb.positions()
        if coords.shape[1] == 0:
            # every scaling hit the zero bound: no informative scaled column,
            # fall back to the unscaled eigenvectors
            log.warning("all eigenvalue scalings are zero; clustering unscaled eigenvectors")
            coords = emb.eigvecs
        return coords
    if method == "adjacency":
        return top_eigenpairs(g.adjacency(), d).vectors
    if method == "centered-unscaled":
        return top_eigenpairs(build_centered(g), d).vectors
    if method == "modularity":
        return top_eigenpairs(build_modularity(g), d).vectors
    if method == "norm-laplacian":
        return bottom_eigenpairs_skip(build_norm_laplacian(g), d, 1).vectors
    if method == "bethe-hessian":
        if bethe_r is None:
            bethe_r, degenerate = bethe_radius(g)
            if degenerate:
                log.warning("mean degree <= 1; Bethe Hessian radius fell back to %g", bethe_r)
        return bottom_eigenpairs_skip(build_bethe_hessian(g, bethe_r), d, 1).vectors
    raise ValueError(f"unknown method {method!r}; choose from {METHODS}")


def cluster_graph(g: Graph, method: str, d: int, k: int, seed: int,
                  restarts: int = 50, bethe_r: float | None = None) -> NodeLabels:
    """Cluster a graph with one of the spectral methods (k-means on its
    d-dimensional spectral coordinates)."""
    coords = _method_coordinates(g, method, d, bethe_r)
    result = kmeans(coords, k, seed, restarts)
    return NodeLabels(k=k, c=result.assignments)
