"""Undirected simple graphs, community labels, and their TSV file formats.

Graphs are stored with 0-based contiguous node ids and a canonical edge
array (each edge appears once as (i, j) with i < j, lexicographically
sorted). All containers are immutable after construction and safe to
share across threads.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "EdgeListFormatError",
    "Graph",
    "NodeLabels",
    "load_edge_list",
    "save_edge_list",
    "load_labels",
    "save_labels",
    "density",
    "degrees",
    "drop_isolated",
]


class EdgeListFormatError(ValueError):
    """Malformed edge-list or label file; carries the offending line number."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class Graph:
    """Undirected simple graph: node count plus a set of unordered edges.

    Invariants enforced at construction: no self-loops, no duplicates,
    all indices in [0, n).
    """

    __slots__ = ("n", "edges")

    def __init__(self, n: int, edges):
        if n < 1:
            raise ValueError(f"node count must be positive, got {n}")
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                         dtype=np.int64)
        if arr.size == 0:
            arr = arr.reshape(0, 2)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise ValueError("edges must be pairs of node indices")
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            raise ValueError("edge endpoint out of range")
        if arr.size and (arr[:, 0] == arr[:, 1]).any():
            bad = int(arr[(arr[:, 0] == arr[:, 1]).argmax(), 0])
            raise ValueError(f"self-loop at node {bad}")
        lo = arr.min(axis=1)
        hi = arr.max(axis=1)
        canon = np.unique(np.column_stack([lo, hi]), axis=0)
        canon.setflags(write=False)
        self.n = int(n)
        self.edges = canon

    @property
    def num_edges(self) -> int:
        return self.edges.shape[0]

    def edge_set(self) -> set[tuple[int, int]]:
        return {(int(i), int(j)) for i, j in self.edges}

    def adjacency(self) -> np.ndarray:
        """Dense symmetric 0/1 adjacency matrix (float64)."""
        a = np.zeros((self.n, self.n))
        if self.num_edges:
            i, j = self.edges[:, 0], self.edges[:, 1]
            a[i, j] = 1.0
            a[j, i] = 1.0
        return a

    def __eq__(self, other):
        return (isinstance(other, Graph) and self.n == other.n
                and self.edges.shape == other.edges.shape
                and bool((self.edges == other.edges).all()))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.num_edges})"


@dataclass(frozen=True)
class NodeLabels:
    """Community assignment: k communities, c[i] in {0, ..., k-1}.

    `names` preserves the original string labels in first-appearance
    order when the labels came from a file.
    """

    k: int
    c: np.ndarray
    names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        c = np.asarray(self.c, dtype=np.int64)
        c.setflags(write=False)
        object.__setattr__(self, "c", c)
        if self.k < 1:
            raise ValueError("community count must be positive")
        if c.size and (c.min() < 0 or c.max() >= self.k):
            raise ValueError("label out of range")

    def __len__(self):
        return self.c.shape[0]


def density(g: Graph) -> float:
    """Fraction of node pairs joined by an edge: 2|E| / (n(n-1))."""
    if g.n < 2:
        raise ValueError("density undefined for a single-node graph")
    return 2.0 * g.num_edges / (g.n * (g.n - 1))


def degrees(g: Graph) -> np.ndarray:
    """Degree of every node; the sum equals 2|E|."""
    d = np.zeros(g.n, dtype=np.int64)
    if g.num_edges:
        d += np.bincount(g.edges[:, 0], minlength=g.n)
        d += np.bincount(g.edges[:, 1], minlength=g.n)
    return d


def drop_isolated(g: Graph) -> tuple[Graph, np.ndarray]:
    """Remove zero-degree nodes.

    Returns the reduced graph and the array of original node ids kept
    (new index -> old index).
    """
    deg = degrees(g)
    keep = np.flatnonzero(deg > 0)
    if keep.size == 0:
        raise ValueError("graph has no edges; nothing left after dropping isolated nodes")
    remap = np.full(g.n, -1, dtype=np.int64)
    remap[keep] = np.arange(keep.size)
    edges = remap[g.edges]
    return Graph(keep.size, edges), keep


def _iter_lines(stream):
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    for lineno, raw in enumerate(stream, start=1):
        yield lineno, raw.rstrip("\n")


def load_edge_list(stream) -> Graph:
    """Parse a whitespace-separated edge list.

    Lines starting with '#' are comments, except a `# n=<int>` header
    which fixes the node count (needed to represent isolated nodes).
    Duplicate lines and (j,i)/(i,j) pairs collapse to a single edge.
    """
    header_n = None
    pairs = []
    max_idx = -1
    for lineno, line in _iter_lines(stream):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            body = stripped[1:].strip().replace(" ", "")
            if body.startswith("n="):
                try:
                    header_n = int(body[2:])
                except ValueError:
                    raise EdgeListFormatError(lineno, f"bad node-count header {stripped!r}")
            continue
        parts = stripped.split()
        if len(parts) != 2:
            raise EdgeListFormatError(lineno, f"expected two node ids, got {stripped!r}")
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListFormatError(lineno, f"non-integer node id in {stripped!r}")
        if i < 0 or j < 0:
            raise EdgeListFormatError(lineno, "negative node id")
        if i == j:
            raise EdgeListFormatError(lineno, f"self-loop at node {i}")
        pairs.append((i, j))
        max_idx = max(max_idx, i, j)
    n = 1 + max_idx if header_n is None else header_n
    if n < 1:
        raise ValueError("empty edge list with no `# n=` header")
    if header_n is not None and header_n < 1 + max_idx:
        raise ValueError(f"header n={header_n} smaller than max node id {max_idx}")
    return Graph(n, pairs)


def save_edge_list(g: Graph, stream) -> None:
    """Write the canonical edge list with a `# n=` header (round-trips exactly)."""
    stream.write(f"# n={g.n}\n")
    for i, j in g.edges:
        stream.write(f"{i}\t{j}\n")


def load_labels(stream, n: int) -> NodeLabels:
    """Parse `node<TAB>label` lines; labels map to 0..k-1 in first-appearance order."""
    assigned = {}
    names: list[str] = []
    index: dict[str, int] = {}
    for lineno, line in _iter_lines(stream):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split(None, 1)
        if len(parts) != 2:
            raise EdgeListFormatError(lineno, f"expected `node label`, got {stripped!r}")
        try:
            node = int(parts[0])
        except ValueError:
            raise EdgeListFormatError(lineno, f"non-integer node id in {stripped!r}")
        if node < 0 or node >= n:
            raise EdgeListFormatError(lineno, f"node id {node} out of range for n={n}")
        label = parts[1].strip()
        if node in assigned and assigned[node] != label:
            raise EdgeListFormatError(lineno, f"conflicting labels for node {node}")
        assigned[node] = label
        if label not in index:
            index[label] = len(names)
            names.append(label)
    missing = [i for i in range(n) if i not in assigned]
    if missing:
        shown = ", ".join(map(str, missing[:10]))
        more = "" if len(missing) <= 10 else f" (+{len(missing) - 10} more)"
        raise ValueError(f"labels missing for nodes: {shown}{more}")
    c = np.array([index[assigned[i]] for i in range(n)], dtype=np.int64)
    return NodeLabels(k=len(names), c=c, names=tuple(names))


def save_labels(labels: NodeLabels, stream) -> None:
    names = labels.names if labels.names else tuple(str(j) for j in range(labels.k))
    for i, lab in enumerate(labels.c):
        stream.write(f"{i}\t{names[int(lab)]}\n")
