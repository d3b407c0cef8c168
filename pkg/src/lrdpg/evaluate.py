"""Scoring and validation tools: permutation-matched Jaccard score,
latent-position NMSE, linear assignment, and a direct gradient-ascent
maximizer of the exact likelihood used as a desk-scale oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .embed import estimate_mu, log_likelihood
from .graph import Graph, NodeLabels, density
from .linkfun import sigmoid

__all__ = [
    "ScoreReport",
    "normalized_jaccard",
    "max_assignment",
    "latent_nmse",
    "loglik_gradient",
    "oracle_mle",
    "spearman",
]

ORACLE_MAX_NODES = 200
_Z_GUARD = 30.0


@dataclass(frozen=True)
class ScoreReport:
    """Per-trial scores: clustering quality, latent recovery, likelihoods."""

    jaccard: float
    nmse: float | None = None
    loglik_algorithm: float | None = None
    loglik_oracle: float | None = None


def _min_cost_assignment(cost: np.ndarray) -> np.ndarray:
    """Hungarian algorithm with potentials, O(k^3); returns column of each row."""
    n = cost.shape[0]
    u = np.zeros(n + 1)
    v = np.zeros(n + 1)
    p = np.zeros(n + 1, dtype=np.int64)      # p[j]: row matched to column j (1-based)
    way = np.zeros(n + 1, dtype=np.int64)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = np.full(n + 1, np.inf)
        used = np.zeros(n + 1, dtype=bool)
        while True:
            used[j0] = True
            i0 = p[j0]
            delta = np.inf
            j1 = 0
            for j in range(1, n + 1):
                if used[j]:
                    continue
                cur = cost[i0 - 1, j - 1] - u[i0] - v[j]
                if cur < minv[j]:
                    minv[j] = cur
                    way[j] = j0
                if minv[j] < delta:
                    delta = minv[j]
                    j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
    cols = np.empty(n, dtype=np.int64)
    for j in range(1, n + 1):
        cols[p[j] - 1] = j - 1
    return cols


def max_assignment(s: np.ndarray) -> tuple[np.ndarray, float]:
    """Permutation maximizing the trace sum over a square score matrix."""
    s = np.asarray(s, dtype=np.float64)
    if s.ndim != 2 or s.shape[0] != s.shape[1]:
        raise ValueError("score matrix must be square")
    if not np.isfinite(s).all():
        raise ValueError("score matrix must be finite")
    perm = _min_cost_assignment(-s)
    return perm, float(s[np.arange(s.shape[0]), perm].sum())


def normalized_jaccard(truth: NodeLabels, pred: NodeLabels, k: int) -> float:
    """Permutation-matched mean per-community recall, rescaled so that a
    perfect partition scores 1: (max_sigma sum_l |C_l n Chat_sigma(l)|/|C_l| - 1)/(k - 1).
    """
    if k < 2:
        raise ValueError("score needs k >= 2 communities")
    if len(truth) != len(pred):
        raise ValueError("truth and prediction must label the same nodes")
    true_sizes = np.bincount(truth.c, minlength=k)
    if truth.c.max(initial=-1) >= k or (true_sizes == 0).any():
        raise ValueError(f"truth must have exactly {k} nonempty communities")
    if pred.c.max(initial=-1) >= k:
        raise ValueError(f"prediction uses more than {k} labels")
    overlap = np.zeros((k, k))
    np.add.at(overlap, (truth.c, pred.c), 1.0)
    s = overlap / true_sizes[:, None]
    _, total = max_assignment(s)
    return (total - 1.0) / (k - 1.0)


def latent_nmse(v_true: np.ndarray, v_est: np.ndarray) -> float:
    """One minus squared correlation for 1-D latent positions; for d > 1
    one minus the scaled-Procrustes R^2 (orthogonal alignment plus scale).

    Invariant to sign/orthogonal transforms and positive rescaling of
    either argument. Configurations of different widths are zero-padded.
    """
    xt = np.asarray(v_true, dtype=np.float64)
    xe = np.asarray(v_est, dtype=np.float64)
    if xt.ndim == 1:
        xt = xt.reshape(-1, 1)
    if xe.ndim == 1:
        xe = xe.reshape(-1, 1)
    if xt.shape[0] != xe.shape[0]:
        raise ValueError("latent position matrices must have the same node count")
    d = max(xt.shape[1], xe.shape[1])
    if xt.shape[1] < d:
        xt = np.pad(xt, ((0, 0), (0, d - xt.shape[1])))
    if xe.shape[1] < d:
        xe = np.pad(xe, ((0, 0), (0, d - xe.shape[1])))
    xt = xt - xt.mean(axis=0)
    xe = xe - xe.mean(axis=0)
    nt = float(np.linalg.norm(xt))
    ne = float(np.linalg.norm(xe))
    if nt == 0.0 or ne == 0.0:
        raise ValueError("latent positions have zero variance")
    trace = float(np.linalg.svd(xe.T @ xt, compute_uv=False).sum())
    return max(0.0, 1.0 - (trace / (nt * ne)) ** 2)


def loglik_gradient(g: Graph, v: np.ndarray, mu: float):
    """Gradient of `log_likelihood` with respect to (V, mu)."""
    v = np.asarray(v, dtype=np.float64)
    if v.ndim == 1:
        v = v.reshape(-1, 1)
    a = g.adjacency()
    z = v @ v.T - mu
    s = a - sigmoid(z)
    np.fill_diagonal(s, 0.0)
    grad_v = s @ v
    grad_mu = -0.5 * float(s.sum())
    return grad_v, grad_mu


def _max_abs_z(v: np.ndarray, mu: float) -> float:
    z = v @ v.T - mu
    iu = np.triu_indices(v.shape[0], 1)
    return float(np.abs(z[iu]).max()) if iu[0].size else 0.0


def _ascend(g: Graph, v0: np.ndarray, mu0: float,
            max_iter: int = 5000, tol: float = 1e-6):
    """Backtracking gradient ascent of the exact likelihood.

    Steps producing |v_i . v_j - mu| beyond the saturation guard are
    rejected; when no admissible step remains the current (capped)
    iterate is returned.
    """
    v, mu = v0.copy(), float(mu0)
    ll = log_likelihood(g, v, mu)
    guard = max(_Z_GUARD, _max_abs_z(v, mu) + 1.0)
    step = 1.0
    for _ in range(max_iter):
        grad_v, grad_mu = loglik_gradient(g, v, mu)
        gnorm = max(float(np.abs(grad_v).max(initial=0.0)), abs(grad_mu))
        if gnorm <= tol:
            break
        gsq = float((grad_v ** 2).sum()) + grad_mu ** 2
        accepted = False
        while step >= 1e-14:
            v_t = v + step * grad_v
            mu_t = mu + step * grad_mu
            if _max_abs_z(v_t, mu_t) <= guard:
                ll_t = log_likelihood(g, v_t, mu_t)
                if ll_t >= ll + 1e-4 * step * gsq:
                    v, mu, ll = v_t, mu_t, ll_t
                    accepted = True
                    step *= 2.0
                    break
            step *= 0.5
        if not accepted:
            break
    return v, mu, ll


def oracle_mle(g: Graph, d: int, seed: int, init: np.ndarray | None = None,
               restarts: int = 20):
    """Direct maximization of the exact likelihood by gradient ascent.

    Runs `restarts` random starts plus one warm start (the spectral
    embedding by default) and returns the best (V, mu, loglik). Only
    usable at desk scale (n <= 200).
    """
    if g.n > ORACLE_MAX_NODES:
        raise ValueError(f"oracle limited to n <= {ORACLE_MAX_NODES}, got n={g.n}")
    if not 1 <= d < g.n:
        raise ValueError(f"need 1 <= d < n, got d={d}")
    try:
        mu0 = estimate_mu(g)
    except ValueError:
        mu0 = 0.0
    starts: list[tuple[np.ndarray, float]] = []
    if init is not None:
        init = np.asarray(init, dtype=np.float64)
        if init.ndim == 1:
            init = init.reshape(-1, 1)
        warm = np.zeros((g.n, d))
        warm[:, : min(d, init.shape[1])] = init[:, : min(d, init.shape[1])]
        starts.append((warm, mu0))
    else:
        from .embed import fit_embedding

        if 0.0 < density(g) < 1.0:
            emb = fit_embedding(g, d)
            starts.append((emb.V.copy(), emb.mu_hat))
        else:
            starts.append((np.zeros((g.n, d)), mu0))
    for r in range(restarts):
        rng = np.random.Generator(np.random.Philox(
            np.random.SeedSequence(entropy=int(seed), spawn_key=(r,))))
        starts.append((0.1 * rng.standard_normal((g.n, d)), mu0))
    best = None
    for v0, m0 in starts:
        v, mu, ll = _ascend(g, v0, m0)
        if best is None or ll > best[2]:
            best = (v, mu, ll)
    return best


def spearman(x, y) -> float:
    """Spearman rank correlation with average ranks for ties."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1 or x.size < 2:
        raise ValueError("need two equal-length 1-D samples")

    def ranks(a):
        order = np.argsort(a, kind="stable")
        r = np.empty(a.size)
        sa = a[order]
        i = 0
        while i < a.size:
            j = i
            while j + 1 < a.size and sa[j + 1] == sa[i]:
                j += 1
            r[order[i:j + 1]] = 0.5 * (i + j) + 1.0
            i = j + 1
        return r

    rx, ry = ranks(x), ranks(y)
    rx -= rx.mean()
    ry -= ry.mean()
    denom = np.sqrt((rx ** 2).sum() * (ry ** 2).sum())
    if denom == 0.0:
        raise ValueError("constant sample has no rank correlation")
    return float((rx * ry).sum() / denom)
