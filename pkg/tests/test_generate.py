"""Generator distribution checks: concentration, determinism,
independence, and the SBM / block-latent equivalence."""

import math

import numpy as np
import pytest

from lrdpg.generate import (LatentConfig, SbmSpec, latent_from_memberships,
                            membership_labels, panel_model,
                            sample_logistic_rdpg, sample_sbm)
from lrdpg.graph import density
from lrdpg.linkfun import sigmoid

LN19 = 2.9444389791664403  # -logit(0.05)

# chi-squared critical values at the 1% level
CHI2_99 = {1: 6.634896601021214, 2: 9.21034037197618, 3: 11.344866730144373}


def test_sbm_all_zero_and_all_one():
    g, _ = sample_sbm(SbmSpec(sizes=(5, 5), Q=np.zeros((2, 2))), seed=0)
    assert g.num_edges == 0
    g, labels = sample_sbm(SbmSpec(sizes=(4, 3), Q=np.ones((2, 2))), seed=0)
    assert g.num_edges == 7 * 6 // 2
    assert labels.c.tolist() == [0] * 4 + [1] * 3


def test_sbm_density_concentration():
    spec = SbmSpec(sizes=(500, 500), Q=np.full((2, 2), 0.05))
    g, _ = sample_sbm(spec, seed=123)
    pairs = 1000 * 999 / 2
    sigma = math.sqrt(0.05 * 0.95 / pairs)
    assert abs(density(g) - 0.05) < 3 * sigma


def test_rdpg_zero_latent_densities():
    n = 300
    pairs = n * (n - 1) / 2
    cfg = LatentConfig(V=np.zeros((n, 1)), mu=0.0)
    g = sample_logistic_rdpg(cfg, seed=5)
    sigma = math.sqrt(0.25 / pairs)
    assert abs(density(g) - 0.5) < 3 * sigma

    cfg = LatentConfig(V=np.zeros((n, 1)), mu=LN19)
    g = sample_logistic_rdpg(cfg, seed=6)
    sigma = math.sqrt(0.05 * 0.95 / pairs)
    assert abs(density(g) - 0.05) < 3 * sigma


def test_rdpg_single_pair_monte_carlo():
    # P(edge) = l(3) for v0 = v1 = sqrt(3), mu = 0
    p_true = 0.9525741268224334
    cfg = LatentConfig(V=np.full((2, 1), math.sqrt(3.0)), mu=0.0)
    trials = 100_000
    hits = sum(sample_logistic_rdpg(cfg, seed).num_edges for seed in range(trials))
    sigma = math.sqrt(p_true * (1 - p_true) / trials)
    assert abs(hits / trials - p_true) < 3 * sigma


def test_determinism():
    spec = SbmSpec(sizes=(30, 30), Q=np.array([[0.3, 0.1], [0.1, 0.3]]))
    g1, _ = sample_sbm(spec, seed=99)
    g2, _ = sample_sbm(spec, seed=99)
    assert g1 == g2
    g3, _ = sample_sbm(spec, seed=100)
    assert g1 != g3


def test_disjoint_pair_independence():
    # indicators of pairs (0,1) and (2,3) over many seeds are uncorrelated
    cfg = LatentConfig(V=np.zeros((4, 1)), mu=1.0)
    seeds = 10_000
    a = np.empty(seeds)
    b = np.empty(seeds)
    for s in range(seeds):
        es = sample_logistic_rdpg(cfg, s).edge_set()
        a[s] = (0, 1) in es
        b[s] = (2, 3) in es
    rho = np.corrcoef(a, b)[0, 1]
    assert abs(rho) < 0.02


def test_membership_latent_probabilities():
    # both nodes in both clusters: dot = 2, so P = l(2 s^2 - mu)
    z = np.array([[0, 0], [1, 0], [0, 1], [1, 1]], dtype=float)
    s = 0.8
    cfg = latent_from_memberships(z, s, mu=1.0)
    probs = sigmoid(cfg.V @ cfg.V.T - cfg.mu)
    assert probs[3, 3] == pytest.approx(sigmoid(2 * s * s - 1.0))
    # scale zero: everything at l(-mu)
    cfg0 = latent_from_memberships(z, 0.0, mu=1.0)
    probs0 = sigmoid(cfg0.V @ cfg0.V.T - cfg0.mu)
    assert np.allclose(probs0, sigmoid(-1.0))


def test_membership_latent_frozen_values():
    # s = 1, mu = ln 19: disjoint rows give 0.05, the 11.11 pair gives l(2 - ln 19)
    z = np.array([[1, 0], [0, 1], [1, 1]], dtype=float)
    cfg = latent_from_memberships(z, 1.0, mu=LN19)
    probs = sigmoid(cfg.V @ cfg.V.T - cfg.mu)
    assert probs[0, 1] == pytest.approx(0.05, abs=1e-12)
    assert probs[2, 2] == pytest.approx(0.28000456216507397, abs=1e-12)


def test_membership_labels_first_appearance_order():
    z = np.array([[0, 0], [1, 0], [0, 0], [1, 1]])
    labels = membership_labels(z)
    assert labels.k == 3
    assert labels.c.tolist() == [0, 1, 0, 2]


def test_sbm_matches_block_latent_rdpg():
    # SBM with Q_ab = l(w_a . w_b - mu) vs the RDPG with block-constant V:
    # per-block edge counts over many seeds pass a chi-squared homogeneity test.
    w = np.array([0.6, -0.6])
    mu = 0.5
    sizes = (15, 15)
    q = sigmoid(np.outer(w, w) - mu)
    spec = SbmSpec(sizes=sizes, Q=q)
    v = np.repeat(w, sizes).reshape(-1, 1)
    cfg = LatentConfig(V=v, mu=mu)
    labels = spec.labels()

    seeds = 150
    block_pairs = [(0, 0), (0, 1), (1, 1)]
    counts = {bp: [0, 0] for bp in block_pairs}
    totals = {bp: 0 for bp in block_pairs}
    for s in range(seeds):
        g_sbm, _ = sample_sbm(spec, seed=s)
        g_rdp = sample_logistic_rdpg(cfg, seed=seeds + s)
        for which, g in ((0, g_sbm), (1, g_rdp)):
            for i, j in g.edges:
                bp = tuple(sorted((labels.c[i], labels.c[j])))
                counts[bp][which] += 1
    n0, n1 = sizes
    pairs_per_graph = {(0, 0): n0 * (n0 - 1) // 2, (0, 1): n0 * n1,
                       (1, 1): n1 * (n1 - 1) // 2}
    chi2 = 0.0
    for bp in block_pairs:
        total_pairs = pairs_per_graph[bp] * seeds
        for which in (0, 1):
            edges = counts[bp][which]
            non_edges = total_pairs - edges
            expect_e = (counts[bp][0] + counts[bp][1]) / 2.0
            expect_n = 2 * total_pairs - counts[bp][0] - counts[bp][1]
            expect_n /= 2.0
            chi2 += (edges - expect_e) ** 2 / expect_e
            chi2 += (non_edges - expect_n) ** 2 / expect_n
    assert chi2 < CHI2_99[3]


def test_spec_validation():
    with pytest.raises(ValueError):
        SbmSpec(sizes=(2, 2), Q=np.array([[0.5, 0.2], [0.3, 0.5]]))  # asymmetric
    with pytest.raises(ValueError):
        SbmSpec(sizes=(2,), Q=np.array([[1.5]]))
    with pytest.raises(ValueError):
        SbmSpec(sizes=(0, 2), Q=np.zeros((2, 2)))
    with pytest.raises(ValueError):
        LatentConfig(V=np.zeros((2, 3)), mu=0.0)


def test_json_round_trip():
    spec = SbmSpec(sizes=(3, 4), Q=np.array([[0.5, 0.1], [0.1, 0.4]]))
    again = SbmSpec.from_json(spec.to_json())
    assert again.sizes == spec.sizes
    assert np.allclose(again.Q, spec.Q)
    cfg = LatentConfig(V=np.arange(6.0).reshape(3, 2), mu=1.5)
    again = LatentConfig.from_json(cfg.to_json())
    assert np.allclose(again.V, cfg.V)
    assert again.mu == cfg.mu


def test_panel_models_sample():
    for panel in "abcdef":
        pm = panel_model(panel, 0.4 if panel in "abcd" else 1.0, n=120)
        g, labels, v_true = pm.sample(3)
        assert g.n == 120
        assert len(labels) == 120
        assert labels.k == pm.k
        g2, _, _ = pm.sample(3)
        assert g2 == g
    with pytest.raises(ValueError):
        panel_model("z", 0.1)
