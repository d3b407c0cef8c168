"""Benchmark harness: sweep a signal grid over a panel preset (or an
explicit model), run the requested clustering methods on shared sampled
graphs, and stream one CSV row per (grid point, method, trial).

Seeds are derived from (base seed, grid index, trial) for graph sampling
and additionally from the method index for k-means, so every method sees
the same graphs and results are independent of execution order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import IO

import numpy as np

from .cluster import METHODS, _method_coordinates, kmeans
from .embed import fit_embedding, log_likelihood
from .evaluate import latent_nmse, normalized_jaccard, oracle_mle, ORACLE_MAX_NODES
from .generate import (LatentConfig, PanelModel, PANEL_INFO, SbmSpec,
                       derive_seed, panel_model, sample_sbm,
                       sample_logistic_rdpg)
from .graph import NodeLabels

__all__ = ["BenchConfig", "run_bench", "CSV_COLUMNS"]

CSV_COLUMNS = ("trial", "panel", "method", "signal", "k", "d", "seed",
               "jaccard", "nmse", "ll_alg")


@dataclass(frozen=True)
class BenchConfig:
    """One benchmark sweep: panel preset (or explicit model), methods,
    signal grid, trials per grid point, and the base seed."""

    methods: tuple[str, ...]
    signals: tuple[float, ...]
    trials: int
    seed: int
    panel: str | None = None
    sbm: SbmSpec | None = None
    latent: LatentConfig | None = None
    labels: NodeLabels | None = field(default=None, repr=False)
    n: int = 1000
    d: int | None = None
    k: int | None = None
    restarts: int = 50
    oracle: bool = False

    def __post_init__(self):
        object.__setattr__(self, "methods", tuple(self.methods))
        object.__setattr__(self, "signals", tuple(float(s) for s in self.signals))
        if not self.signals:
            raise ValueError("signal grid must not be empty")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        unknown = [m for m in self.methods if m not in METHODS]
        if unknown:
            raise ValueError(f"unsupported methods {unknown}; choose from {METHODS}")
        if not self.methods:
            raise ValueError("need at least one method")
        sources = sum(x is not None for x in (self.panel, self.sbm, self.latent))
        if sources != 1:
            raise ValueError("specify exactly one of panel, sbm, latent")
        if self.panel is None and (self.d is None or self.k is None):
            raise ValueError("explicit models need d and k")

    @property
    def effective_dk(self) -> tuple[int, int]:
        if self.panel is not None:
            _, k, d = PANEL_INFO[self.panel]
            return (self.d or d, self.k or k)
        return (self.d, self.k)

    @classmethod
    def from_json(cls, text: str, **overrides) -> "BenchConfig":
        doc = json.loads(text)
        doc.update(overrides)
        if "sbm" in doc and doc["sbm"] is not None:
            doc["sbm"] = SbmSpec(sizes=tuple(doc["sbm"]["sizes"]),
                                 Q=np.array(doc["sbm"]["Q"]))
        if "latent" in doc and doc["latent"] is not None:
            doc["latent"] = LatentConfig(V=np.array(doc["latent"]["V"]),
                                         mu=doc["latent"]["mu"])
        doc.setdefault("methods", list(METHODS))
        return cls(**{k: v for k, v in doc.items() if v is not None or k in
                      ("panel", "sbm", "latent")})


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _sample(config: BenchConfig, signal: float, graph_seed: int):
    if config.panel is not None:
        model: PanelModel = panel_model(config.panel, signal, config.n)
        return model.sample(graph_seed)
    if config.sbm is not None:
        g, labels = sample_sbm(config.sbm, graph_seed)
        return g, labels, None
    g = sample_logistic_rdpg(config.latent, graph_seed)
    if config.labels is None:
        raise ValueError("explicit latent model benchmarks need true labels")
    return g, config.labels, config.latent.V


def run_bench(config: BenchConfig, stream: IO[str],
              collect: bool = True) -> list[dict]:
    """Execute the sweep, writing CSV rows as they are produced."""
    d, k = config.effective_dk
    columns = CSV_COLUMNS + (("ll_oracle",) if config.oracle else ())
    stream.write(",".join(columns) + "\n")
    rows: list[dict] = []
    for g_idx, signal in enumerate(config.signals):
        for trial in range(config.trials):
            graph_seed = derive_seed(config.seed, g_idx, trial)
            g, truth, v_true = _sample(config, signal, graph_seed)
            for m_idx, method in enumerate(config.methods):
                stage_seed = derive_seed(config.seed, g_idx, trial, m_idx + 1)
                ll_alg = ll_oracle = None
                if method == "logistic-rdpg":
                    emb = fit_embedding(g, d)
                    coords = emb.positions()
                    if coords.shape[1] == 0:
                        coords = emb.eigvecs
                    ll_alg = log_likelihood(g, emb.V, emb.mu_hat)
                    if config.oracle and g.n <= ORACLE_MAX_NODES:
                        _, _, ll_oracle = oracle_mle(g, d, stage_seed, init=emb.V)
                else:
                    coords = _method_coordinates(g, method, d)
                pred = NodeLabels(k=k, c=kmeans(coords, k, stage_seed,
                                                config.restarts).assignments)
                nmse = None
                if v_true is not None:
                    nmse = latent_nmse(v_true, coords)
                row = {
                    "trial": trial,
                    "panel": config.panel or ("sbm" if config.sbm is not None else "latent"),
                    "method": method,
                    "signal": signal,
                    "k": k,
                    "d": d,
                    "seed": graph_seed,
                    "jaccard": normalized_jaccard(truth, pred, k),
                    "nmse": nmse,
                    "ll_alg": ll_alg,
                }
                if config.oracle:
                    row["ll_oracle"] = ll_oracle
                stream.write(",".join(_fmt(row[c]) for c in columns) + "\n")
                stream.flush()
                if collect:
                    rows.append(row)
    return rows
