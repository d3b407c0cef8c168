"""Seeded random graph generators: SBM, logistic RDPG, and the benchmark
panel presets built from them.

All samplers draw per-pair uniforms from a counter-based Philox stream in
the canonical upper-triangular pair order, so a (config, seed) pair maps
to exactly one graph regardless of platform or thread scheduling.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .graph import Graph, NodeLabels
from .linkfun import logit, sigmoid

__all__ = [
    "SbmSpec",
    "LatentConfig",
    "sample_sbm",
    "sample_logistic_rdpg",
    "latent_from_memberships",
    "membership_labels",
    "PanelModel",
    "panel_model",
    "PANEL_INFO",
    "derive_seed",
]


@dataclass(frozen=True)
class SbmSpec:
    """Stochastic block model: community sizes plus the k x k edge
    probability matrix."""

    sizes: tuple[int, ...]
    Q: np.ndarray

    def __post_init__(self):
        q = np.asarray(self.Q, dtype=np.float64)
        q.setflags(write=False)
        object.__setattr__(self, "Q", q)
        object.__setattr__(self, "sizes", tuple(int(s) for s in self.sizes))
        k = len(self.sizes)
        if k < 1 or any(s < 1 for s in self.sizes):
            raise ValueError("community sizes must all be >= 1")
        if q.shape != (k, k):
            raise ValueError(f"Q must be {k}x{k}, got {q.shape}")
        if not np.allclose(q, q.T, atol=1e-12):
            raise ValueError("Q must be symmetric")
        if q.min() < 0.0 or q.max() > 1.0:
            raise ValueError("Q entries must lie in [0, 1]")

    @property
    def n(self) -> int:
        return sum(self.sizes)

    @property
    def k(self) -> int:
        return len(self.sizes)

    def labels(self) -> NodeLabels:
        c = np.repeat(np.arange(self.k, dtype=np.int64), self.sizes)
        return NodeLabels(k=self.k, c=c)

    def to_json(self) -> str:
        return json.dumps({"model": "sbm", "sizes": list(self.sizes),
                           "Q": self.Q.tolist()})

    @classmethod
    def from_json(cls, text: str) -> "SbmSpec":
        doc = json.loads(text)
        return cls(sizes=tuple(doc["sizes"]), Q=np.array(doc["Q"]))


@dataclass(frozen=True)
class LatentConfig:
    """Logistic RDPG parameters: latent position matrix V and offset mu."""

    V: np.ndarray
    mu: float

    def __post_init__(self):
        v = np.asarray(self.V, dtype=np.float64)
        if v.ndim == 1:
            v = v.reshape(-1, 1)
        v.setflags(write=False)
        object.__setattr__(self, "V", v)
        object.__setattr__(self, "mu", float(self.mu))
        if not np.isfinite(v).all() or not np.isfinite(self.mu):
            raise ValueError("latent positions and mu must be finite")
        if v.shape[1] > v.shape[0]:
            raise ValueError("latent dimension d cannot exceed node count")

    @property
    def n(self) -> int:
        return self.V.shape[0]

    @property
    def d(self) -> int:
        return self.V.shape[1]

    def to_json(self) -> str:
        return json.dumps({"model": "latent", "V": self.V.tolist(), "mu": self.mu})

    @classmethod
    def from_json(cls, text: str) -> "LatentConfig":
        doc = json.loads(text)
        return cls(V=np.array(doc["V"]), mu=doc["mu"])


def _pair_uniforms(n: int, seed: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Upper-triangular pair indices plus one uniform draw per pair (Philox)."""
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(int(seed))))
    iu = np.triu_indices(n, 1)
    return iu[0], iu[1], rng.random(iu[0].shape[0])


def derive_seed(*parts: int) -> int:
    """Stable integer sub-seed from a tuple of integers."""
    root = np.random.SeedSequence(entropy=int(parts[0]),
                                  spawn_key=tuple(int(p) for p in parts[1:]))
    return int(root.generate_state(1, dtype=np.uint64)[0])


def sample_sbm(spec: SbmSpec, seed: int) -> tuple[Graph, NodeLabels]:
    """Draw each pair (i < j) independently with probability Q[c_i, c_j]."""
    labels = spec.labels()
    i, j, u = _pair_uniforms(spec.n, seed)
    p = spec.Q[labels.c[i], labels.c[j]]
    mask = u < p
    edges = np.column_stack([i[mask], j[mask]])
    return Graph(spec.n, edges), labels


def sample_logistic_rdpg(cfg: LatentConfig, seed: int) -> Graph:
    """Draw each pair (i < j) independently with probability l(v_i . v_j - mu)."""
    i, j, u = _pair_uniforms(cfg.n, seed)
    p = sigmoid(np.einsum("ij,ij->i", cfg.V[i], cfg.V[j]) - cfg.mu)
    mask = u < p
    edges = np.column_stack([i[mask], j[mask]])
    return Graph(cfg.n, edges)


def latent_from_memberships(Z: np.ndarray, scale: float, mu: float) -> LatentConfig:
    """Latent positions V = scale * Z for a binary membership matrix Z."""
    z = np.asarray(Z, dtype=np.float64)
    if scale < 0:
        raise ValueError("scale must be nonnegative")
    return LatentConfig(V=scale * z, mu=mu)


def membership_labels(Z: np.ndarray) -> NodeLabels:
    """Communities = distinct rows of Z, numbered in first-appearance order."""
    z = np.asarray(Z)
    seen: dict[tuple, int] = {}
    c = np.empty(z.shape[0], dtype=np.int64)
    for idx, row in enumerate(map(tuple, z)):
        if row not in seen:
            seen[row] = len(seen)
        c[idx] = seen[row]
    return NodeLabels(k=len(seen), c=c)


# ---------------------------------------------------------------------------
# Benchmark panel presets. Every panel has 1000 nodes by default and a 0.05
# background density; `signal` is the single swept scalar: the in-cluster
# density boost for the SBM panels (a-d) and the latent position scale for
# the overlapping-membership (e) and continuous (f) panels.
# ---------------------------------------------------------------------------

BACKGROUND_DENSITY = 0.05

PANEL_INFO = {
    "a": ("one dense cluster vs background", 2, 1),
    "b": ("two equally dense clusters", 2, 1),
    "c": ("many small clusters", 25, 24),
    "d": ("several different-sized clusters", 17, 16),
    "e": ("two overlapping clusters, four communities", 4, 2),
    "f": ("continuous 1-D latent positions, two halves", 2, 1),
}


def _split_sizes(n: int, weights: np.ndarray) -> tuple[int, ...]:
    """Largest-remainder rounding of n * weights into integer sizes."""
    raw = n * weights / weights.sum()
    sizes = np.floor(raw).astype(int)
    rem = raw - sizes
    for idx in np.argsort(rem)[::-1][: n - sizes.sum()]:
        sizes[idx] += 1
    return tuple(int(s) for s in sizes)


@dataclass(frozen=True)
class PanelModel:
    """One benchmark configuration: sample(seed) yields a labeled graph
    and, when the generative latent positions are known, the true V."""

    panel: str
    k: int
    d: int
    signal: float
    n: int
    sbm: SbmSpec | None = None
    latent: LatentConfig | None = None
    labels_fixed: NodeLabels | None = None

    def sample(self, seed: int) -> tuple[Graph, NodeLabels, np.ndarray | None]:
        if self.sbm is not None:
            g, labels = sample_sbm(self.sbm, seed)
            return g, labels, None
        if self.panel == "f":
            draw_seed = derive_seed(seed, 1)
            rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(draw_seed)))
            half = self.n // 2
            centers = np.repeat([1.0, -1.0], [half, self.n - half])
            t = centers + 0.5 * rng.standard_normal(self.n)
            cfg = LatentConfig(V=self.signal * t.reshape(-1, 1),
                               mu=-logit(BACKGROUND_DENSITY))
            g = sample_logistic_rdpg(cfg, derive_seed(seed, 2))
            labels = NodeLabels(k=2, c=(centers < 0).astype(np.int64))
            return g, labels, cfg.V
        g = sample_logistic_rdpg(self.latent, seed)
        return g, self.labels_fixed, self.latent.V


def panel_model(panel: str, signal: float, n: int = 1000) -> PanelModel:
    """Build one of the named benchmark configurations a-f."""
    p = BACKGROUND_DENSITY
    mu = -logit(p)
    if panel not in PANEL_INFO:
        raise ValueError(f"unknown panel {panel!r}; choose from {sorted(PANEL_INFO)}")
    _, k, d = PANEL_INFO[panel]
    if panel in ("a", "b", "c", "d") and not 0.0 <= signal <= 1.0 - p:
        raise ValueError(f"panel {panel} signal must lie in [0, {1.0 - p}]")

    if panel == "a":
        sizes = _split_sizes(n, np.array([4.0, 1.0]))
        q = np.array([[p + signal, p], [p, p]])
        return PanelModel(panel, k, d, signal, n, sbm=SbmSpec(sizes, q))
    if panel == "b":
        sizes = _split_sizes(n, np.ones(2))
        q = np.array([[p + signal, p], [p, p + signal]])
        return PanelModel(panel, k, d, signal, n, sbm=SbmSpec(sizes, q))
    if panel == "c":
        sizes = _split_sizes(n, np.ones(25))
        q = np.full((25, 25), p)
        np.fill_diagonal(q, p + signal)
        return PanelModel(panel, k, d, signal, n, sbm=SbmSpec(sizes, q))
    if panel == "d":
        sizes = _split_sizes(n, np.linspace(1.0, 3.0, 17))
        q = np.full((17, 17), p)
        np.fill_diagonal(q, p + signal)
        return PanelModel(panel, k, d, signal, n, sbm=SbmSpec(sizes, q))
    if panel == "e":
        quarter = _split_sizes(n, np.ones(4))
        rows = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
        Z = np.repeat(rows, quarter, axis=0)
        cfg = latent_from_memberships(Z, signal, mu)
        return PanelModel(panel, k, d, signal, n, latent=cfg,
                          labels_fixed=membership_labels(Z))
    # panel f draws fresh latent positions per seed inside sample()
    return PanelModel(panel, k, d, signal, n)
