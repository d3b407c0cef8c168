"""Command-line front-end.

Subcommands: generate, embed, cluster, eval, bench, plot, fetch-data.
Every command is deterministic given its flags (including seeds); bench
emits a summary figure next to its CSV unless --no-figure is passed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import datasets
from .bench import BenchConfig, run_bench
from .cluster import METHODS, cluster_graph
from .embed import estimate_mu, fit_embedding
from .evaluate import normalized_jaccard
from .generate import (LatentConfig, SbmSpec, sample_logistic_rdpg, sample_sbm)
from .graph import (Graph, NodeLabels, drop_isolated, load_edge_list,
                    load_labels, save_edge_list, save_labels)

__all__ = ["main"]


def _parse_matrix(text: str) -> np.ndarray:
    rows = [[float(x) for x in row.split(",") if x.strip() != ""]
            for row in text.split(";")]
    return np.array(rows)


def _read_graph(path: str, drop: bool) -> tuple[Graph, np.ndarray | None]:
    with open(path) as f:
        g = load_edge_list(f)
    if drop:
        g, keep = drop_isolated(g)
        return g, keep
    return g, None


def _infer_n(paths: list[str]) -> int:
    top = -1
    for path in paths:
        with open(path) as f:
            for line in f:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                top = max(top, int(line.split(None, 1)[0]))
    if top < 0:
        raise ValueError("no node ids found in label files")
    return top + 1


def cmd_generate(args) -> int:
    if args.config:
        doc = json.loads(Path(args.config).read_text())
        model = doc.get("model")
        if model == "sbm":
            spec = SbmSpec(sizes=tuple(doc["sizes"]), Q=np.array(doc["Q"]))
        elif model == "latent":
            spec = LatentConfig(V=np.array(doc["V"]), mu=doc["mu"])
        else:
            raise ValueError(f"config model must be 'sbm' or 'latent', got {model!r}")
    elif args.model == "sbm":
        if not (args.sizes and args.q):
            raise ValueError("--model sbm needs --sizes and --q (or --config)")
        sizes = tuple(int(s) for s in args.sizes.split(","))
        spec = SbmSpec(sizes=sizes, Q=_parse_matrix(args.q))
    elif args.model == "er":
        if args.n is None or args.p is None:
            raise ValueError("--model er needs --n and --p")
        spec = SbmSpec(sizes=(args.n,), Q=np.array([[args.p]]))
    elif args.model == "latent":
        raise ValueError("--model latent needs --config with the latent positions")
    else:
        raise ValueError("specify --model or --config")

    labels = None
    if isinstance(spec, SbmSpec):
        g, labels = sample_sbm(spec, args.seed)
    else:
        g = sample_logistic_rdpg(spec, args.seed)
    with open(args.out_edges, "w") as f:
        save_edge_list(g, f)
    print(f"wrote {args.out_edges} (n={g.n}, edges={g.num_edges})")
    if args.out_labels:
        if labels is None:
            raise ValueError("latent configs carry no community labels to write")
        with open(args.out_labels, "w") as f:
            save_labels(labels, f)
        print(f"wrote {args.out_labels} (k={labels.k})")
    return 0


def cmd_embed(args) -> int:
    g, keep = _read_graph(args.edges, args.drop_isolated)
    fixed = estimate_mu(g) if args.fixed_mu else None
    emb = fit_embedding(g, args.dim, fixed_mu=fixed)
    out = Path(args.out)
    with open(out, "w") as f:
        f.write("node," + ",".join(f"x{i + 1}" for i in range(emb.d)) + "\n")
        for row in range(g.n):
            node = int(keep[row]) if keep is not None and args.original_ids else row
            f.write(f"{node}," + ",".join(repr(float(v)) for v in emb.V[row]) + "\n")
    meta = {
        "n": g.n,
        "d": emb.d,
        "lambdas": [float(v) for v in emb.lambdas],
        "mu_hat": float(emb.mu_hat),
        "kept_dims": [int(i) for i in emb.kept_dims],
        "converged": bool(emb.fit.converged),
        "iterations": int(emb.fit.iterations),
    }
    meta_path = args.meta or f"{args.out}.json"
    Path(meta_path).write_text(json.dumps(meta, indent=2) + "\n")
    print(f"wrote {args.out} ({g.n} rows) and {meta_path}")
    return 0


def cmd_cluster(args) -> int:
    g, _ = _read_graph(args.edges, args.drop_isolated)
    pred = cluster_graph(g, args.method, d=args.dim, k=args.k, seed=args.seed,
                         restarts=args.restarts, bethe_r=args.bethe_r)
    with open(args.out, "w") as f:
        save_labels(pred, f)
    print(f"wrote {args.out} (k={args.k})")
    return 0


def cmd_eval(args) -> int:
    n = args.n or _infer_n([args.truth, args.pred])
    with open(args.truth) as f:
        truth = load_labels(f, n)
    with open(args.pred) as f:
        pred = load_labels(f, n)
    k = args.k or truth.k
    print(normalized_jaccard(truth, pred, k))
    return 0


def cmd_bench(args) -> int:
    overrides = {key: getattr(args, key) for key in
                 ("panel", "trials", "seed", "n", "d", "k", "restarts")
                 if getattr(args, key) is not None}
    if args.signals:
        overrides["signals"] = [float(s) for s in args.signals.split(",")]
    if args.methods:
        overrides["methods"] = args.methods.split(",")
    if args.oracle:
        overrides["oracle"] = True
    if args.config:
        config = BenchConfig.from_json(Path(args.config).read_text(), **overrides)
    else:
        overrides.setdefault("methods", list(METHODS))
        config = BenchConfig(**overrides)
    with open(args.out, "w", newline="") as f:
        rows = run_bench(config, f)
    print(f"wrote {args.out} ({len(rows)} rows)")
    if not args.no_figure:
        from .plotting import bench_figure

        fig_path = args.figure or str(Path(args.out).with_suffix(".svg"))
        bench_figure(rows, fig_path)
        print(f"wrote {fig_path}")
    return 0


def cmd_plot(args) -> int:
    with open(args.embedding) as f:
        header = f.readline().strip().split(",")
        if not header or header[0] != "node":
            raise ValueError("embedding CSV must start with a `node,x1,...` header")
        nodes, coords = [], []
        for line in f:
            parts = line.strip().split(",")
            if not parts or parts == [""]:
                continue
            nodes.append(int(parts[0]))
            coords.append([float(x) for x in parts[1:]])
    coords = np.array(coords, dtype=np.float64).reshape(len(nodes), len(header) - 1)
    labels = None
    if args.labels:
        with open(args.labels) as f:
            labels = load_labels(f, len(nodes))
    graph = None
    if args.graph:
        graph, _ = _read_graph(args.graph, args.drop_isolated)
    from .plotting import plot_embedding

    plot_embedding(coords, labels, args.out, graph=graph, title=args.title)
    print(f"wrote {args.out}")
    return 0


def cmd_fetch_data(args) -> int:
    dest = Path(args.dest) if args.dest else datasets.data_dir()
    gml = datasets.fetch_polblogs(dest=dest, url=args.url,
                                  expected_sha256=args.sha256)
    g, labels = datasets.load_polblogs(dest)
    edges_path = dest / "polblogs_edges.tsv"
    labels_path = dest / "polblogs_labels.tsv"
    with open(edges_path, "w") as f:
        save_edge_list(g, f)
    with open(labels_path, "w") as f:
        save_labels(labels, f)
    print(f"{gml}")
    print(f"wrote {edges_path} (n={g.n}, edges={g.num_edges})")
    print(f"wrote {labels_path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lrdpg",
        description="Latent position inference and spectral clustering "
                    "for logistic random dot product graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="sample a graph from an SBM or latent config")
    p.add_argument("--model", choices=["sbm", "er", "latent"])
    p.add_argument("--config", help="JSON model document")
    p.add_argument("--sizes", help="comma-separated community sizes")
    p.add_argument("--q", help="edge probability matrix, rows separated by ';'")
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-edges", required=True)
    p.add_argument("--out-labels")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("embed", help="fit the latent position embedding")
    p.add_argument("--edges", required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--fixed-mu", action="store_true",
                   help="pin the offset to -logit(density) instead of fitting it")
    p.add_argument("--drop-isolated", action="store_true")
    p.add_argument("--original-ids", action="store_true",
                   help="with --drop-isolated, keep original node ids in the CSV")
    p.add_argument("--out", required=True)
    p.add_argument("--meta", help="sidecar JSON path (default: <out>.json)")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("cluster", help="cluster a graph with a spectral method")
    p.add_argument("--edges", required=True)
    p.add_argument("--method", choices=list(METHODS), required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=50)
    p.add_argument("--bethe-r", type=float, default=None,
                   help="override the Bethe Hessian radius sqrt(mean degree)")
    p.add_argument("--drop-isolated", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("eval", help="normalized Jaccard score of a prediction")
    p.add_argument("--truth", required=True)
    p.add_argument("--pred", required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("bench", help="run a benchmark sweep to CSV (+ figure)")
    p.add_argument("--config", help="BenchConfig JSON")
    p.add_argument("--panel", choices=list("abcdef"))
    p.add_argument("--signals", help="comma-separated signal grid")
    p.add_argument("--methods", help="comma-separated method list")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--restarts", type=int)
    p.add_argument("--oracle", action="store_true",
                   help="add the gradient-ascent oracle log-likelihood (n <= 200)")
    p.add_argument("--out", required=True)
    p.add_argument("--figure", help="summary figure path (default: <out>.svg)")
    p.add_argument("--no-figure", action="store_true")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("plot", help="render an embedding scatter/strip plot")
    p.add_argument("--embedding", required=True)
    p.add_argument("--labels")
    p.add_argument("--graph", help="edge list for the degree correlation annotation")
    p.add_argument("--drop-isolated", action="store_true")
    p.add_argument("--title")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("fetch-data", help="download and convert the political blogs network")
    p.add_argument("--dest", help="cache directory (default: $LRDPG_DATA_DIR)")
    p.add_argument("--url", default=datasets.POLBLOGS_URL)
    p.add_argument("--sha256", default=datasets.POLBLOGS_SHA256)
    p.set_defaults(func=cmd_fetch_data)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except Exception as exc:  # argparse handles its own usage errors
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
