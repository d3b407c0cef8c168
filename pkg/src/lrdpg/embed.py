"""Maximum-likelihood latent position embedding.

The estimator: form the mean-centered adjacency matrix, take its top d
eigenvectors e_1..e_d, then recover the eigenvalue scalings by logistic
regression of the upper-triangular adjacency entries on the pair features
(e_i[a] * e_i[b]) under a nonnegativity constraint on the coefficients.
The fitted column scalings sqrt(lambda_i) turn the eigenvectors into
latent positions V with edge probabilities l(v_a . v_b - mu).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .eigen import top_eigenpairs
from .graph import Graph, density
from .linkfun import log_sigmoid, logit, sigmoid
from .matrices import build_centered

__all__ = [
    "RegressionFit",
    "Embedding",
    "estimate_mu",
    "fit_nonneg_logistic",
    "fit_embedding",
    "log_likelihood",
]


def estimate_mu(g: Graph) -> float:
    """Offset for which the logistic link reproduces the observed density.

    mu_hat = -logit(density); undefined for empty or complete graphs.
    """
    dbar = density(g)
    if dbar <= 0.0 or dbar >= 1.0:
        raise ValueError(f"density {dbar} is not strictly inside (0, 1); "
                         "the logit offset is undefined")
    return -logit(dbar)


@dataclass(frozen=True)
class RegressionFit:
    """Result of the nonnegativity-constrained logistic regression."""

    coeffs: np.ndarray
    intercept: float
    converged: bool
    iterations: int
    final_grad_norm: float


def _neg_loglik(z: np.ndarray, y: np.ndarray) -> float:
    # softplus(z) - y*z, summed; stable for |z| up to ~700
    softplus = np.log1p(np.exp(-np.abs(z))) + np.maximum(z, 0.0)
    return float(np.sum(softplus - y * z))


def fit_nonneg_logistic(features: np.ndarray, targets: np.ndarray,
                        fit_intercept: bool = True,
                        fixed_intercept: float | None = None,
                        tol: float = 1e-8, max_iter: int = 200) -> RegressionFit:
    """Maximize the Bernoulli log-likelihood subject to coeffs >= 0.

    Projected Newton with Armijo backtracking (factor 0.5, slope 1e-4).
    Converged when the projected-gradient infinity norm drops to `tol`;
    otherwise the best iterate found is returned with converged=False.
    """
    x = np.asarray(features, dtype=np.float64)
    y = np.asarray(targets, dtype=np.float64)
    if x.ndim != 2 or y.ndim != 1 or x.shape[0] != y.shape[0]:
        raise ValueError("features must be (m, d) with matching targets (m,)")
    if x.shape[0] < 1 or x.shape[1] < 1:
        raise ValueError("need at least one sample and one feature")
    if not (np.isfinite(x).all() and np.isfinite(y).all()):
        raise ValueError("non-finite values in regression input")
    if fit_intercept and fixed_intercept is not None:
        raise ValueError("fit_intercept and fixed_intercept are mutually exclusive")

    m, d = x.shape
    lam = np.zeros(d)
    if fixed_intercept is not None:
        b = float(fixed_intercept)
    elif fit_intercept:
        ybar = min(max(float(y.mean()), 1e-12), 1.0 - 1e-12)
        b = logit(ybar)
    else:
        b = 0.0

    def objective(lam_v, b_v):
        return _neg_loglik(x @ lam_v + b_v, y)

    f = objective(lam, b)
    best = (f, lam.copy(), b)
    converged = False
    grad_norm = np.inf
    it = 0
    for it in range(1, max_iter + 1):
        z = x @ lam + b
        p = sigmoid(z)
        r = p - y
        g_lam = x.T @ r
        g_b = float(r.sum()) if fit_intercept else 0.0
        at_bound = lam <= 0.0
        pg = np.where(at_bound, np.minimum(g_lam, 0.0), g_lam)
        grad_norm = max(float(np.abs(pg).max()), abs(g_b))
        if grad_norm <= tol:
            converged = True
            break

        free = ~(at_bound & (g_lam > 0.0))
        w = p * (1.0 - p)
        xf = x[:, free]
        xw = xf * w[:, None]
        h_ff = xf.T @ xw
        if fit_intercept:
            h_fb = xw.sum(axis=0)
            nf = h_ff.shape[0]
            h = np.empty((nf + 1, nf + 1))
            h[:nf, :nf] = h_ff
            h[:nf, nf] = h_fb
            h[nf, :nf] = h_fb
            h[nf, nf] = float(w.sum())
            g_free = np.append(g_lam[free], g_b)
        else:
            h = h_ff
            g_free = g_lam[free]
        if g_free.size == 0:
            converged = True
            break
        h[np.diag_indices_from(h)] += 1e-12 * max(1.0, np.abs(np.diag(h)).max())
        try:
            step = np.linalg.solve(h, -g_free)
        except np.linalg.LinAlgError:
            step = -g_free
        if not np.isfinite(step).all() or float(g_free @ step) >= 0.0:
            step = -g_free

        direction = np.zeros(d)
        direction[free] = step[: int(free.sum())]
        db = step[-1] if fit_intercept else 0.0
        t = 1.0
        accepted = False
        for _ in range(60):
            lam_t = np.maximum(lam + t * direction, 0.0)
            b_t = b + t * db
            f_t = objective(lam_t, b_t)
            decrease = float(g_lam @ (lam_t - lam)) + g_b * (b_t - b)
            if f_t <= f + 1e-4 * decrease and np.isfinite(f_t):
                accepted = True
                break
            t *= 0.5
        if not accepted:
            break
        lam, b, f = lam_t, b_t, f_t
        if f < best[0]:
            best = (f, lam.copy(), b)

    if not converged:
        _, lam, b = best
    return RegressionFit(coeffs=lam, intercept=float(b), converged=converged,
                         iterations=it, final_grad_norm=float(grad_norm))


@dataclass(frozen=True)
class Embedding:
    """Latent positions V (column i = sqrt(lambdas[i]) * eigvecs[:, i]).

    kept_dims lists the columns with a strictly positive scaling; the
    remaining columns of V are identically zero and carry no information.
    """

    V: np.ndarray
    lambdas: np.ndarray
    mu_hat: float
    eigvecs: np.ndarray
    kept_dims: np.ndarray
    fit: RegressionFit = field(repr=False, default=None)

    @property
    def d(self) -> int:
        return self.V.shape[1]

    def positions(self) -> np.ndarray:
        """V restricted to the informative (positively scaled) columns."""
        return self.V[:, self.kept_dims]


def pair_features(eigvecs: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Strictly-upper-triangular pair index arrays and the per-pair
    eigenvector products used as regression features."""
    n = eigvecs.shape[0]
    iu = np.triu_indices(n, 1)
    return iu[0], iu[1], eigvecs[iu[0], :] * eigvecs[iu[1], :]


def fit_embedding(g: Graph, d: int, fixed_mu: float | None = None) -> Embedding:
    """Run the full estimator on a graph.

    With fixed_mu the regression intercept is pinned to -fixed_mu instead
    of being fitted jointly with the scalings.
    """
    if not 1 <= d < g.n:
        raise ValueError(f"need 1 <= d < n, got d={d}, n={g.n}")
    dbar = density(g)
    if dbar <= 0.0 or dbar >= 1.0:
        raise ValueError("embedding requires graph density strictly inside (0, 1)")
    es = top_eigenpairs(build_centered(g), d)
    i, j, feats = pair_features(es.vectors)
    targets = g.adjacency()[i, j]
    if fixed_mu is not None:
        fit = fit_nonneg_logistic(feats, targets, fit_intercept=False,
                                  fixed_intercept=-float(fixed_mu))
    else:
        fit = fit_nonneg_logistic(feats, targets, fit_intercept=True)
    lambdas = fit.coeffs
    v = es.vectors * np.sqrt(lambdas)
    return Embedding(V=v, lambdas=lambdas, mu_hat=-fit.intercept,
                     eigvecs=es.vectors, kept_dims=np.flatnonzero(lambdas > 0),
                     fit=fit)


def log_likelihood(g: Graph, v: np.ndarray, mu: float) -> float:
    """Bernoulli log-likelihood of the graph under P_ij = l(v_i . v_j - mu),
    summed over unordered pairs i < j."""
    v = np.asarray(v, dtype=np.float64)
    if v.ndim == 1:
        v = v.reshape(-1, 1)
    if v.shape[0] != g.n:
        raise ValueError(f"latent positions have {v.shape[0]} rows for n={g.n}")
    iu = np.triu_indices(g.n, 1)
    z = (v @ v.T)[iu] - mu
    y = g.adjacency()[iu]
    return float(np.sum(y * z + log_sigmoid(-z)))
