"""Latent position inference for logistic random dot product graphs.

Spectral maximum-likelihood embedding (mean-centered adjacency, top
eigenvectors, nonnegative logistic-regression scaling), spectral
clustering baselines, scoring, and a benchmark harness.
"""

from .cluster import METHODS, KMeansResult, cluster_graph, kmeans
from .eigen import EigenSystem, bottom_eigenpairs_skip, eigh_full, top_eigenpairs
from .embed import (Embedding, RegressionFit, estimate_mu, fit_embedding,
                    fit_nonneg_logistic, log_likelihood)
from .evaluate import (ScoreReport, latent_nmse, loglik_gradient,
                       max_assignment, normalized_jaccard, oracle_mle)
from .generate import (LatentConfig, SbmSpec, latent_from_memberships,
                       membership_labels, panel_model, sample_logistic_rdpg,
                       sample_sbm)
from .graph import (Graph, NodeLabels, degrees, density, drop_isolated,
                    load_edge_list, load_labels, save_edge_list, save_labels)
from .matrices import (build_bethe_hessian, build_centered, build_modularity,
                       build_norm_laplacian)

__version__ = "0.1.0"

__all__ = [
    "METHODS", "KMeansResult", "cluster_graph", "kmeans",
    "EigenSystem", "bottom_eigenpairs_skip", "eigh_full", "top_eigenpairs",
    "Embedding", "RegressionFit", "estimate_mu", "fit_embedding",
    "fit_nonneg_logistic", "log_likelihood",
    "ScoreReport", "latent_nmse", "loglik_gradient", "max_assignment",
    "normalized_jaccard", "oracle_mle",
    "LatentConfig", "SbmSpec", "latent_from_memberships", "membership_labels",
    "panel_model", "sample_logistic_rdpg", "sample_sbm",
    "Graph", "NodeLabels", "degrees", "density", "drop_isolated",
    "load_edge_list", "load_labels", "save_edge_list", "save_labels",
    "build_bethe_hessian", "build_centered", "build_modularity",
    "build_norm_laplacian",
    "__version__",
]
