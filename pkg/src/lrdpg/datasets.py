"""Reference networks: the bundled karate club fixture and the political
blogs network (downloaded on demand, cached under LRDPG_DATA_DIR).

The karate club labels are the faction alignments from the original
study; the one member who joined a different club than his faction is
labeled by faction.
"""

from __future__ import annotations

import hashlib
import io
import os
import re
import urllib.request
import zipfile
from importlib import resources
from pathlib import Path

import numpy as np

from .graph import Graph, NodeLabels, drop_isolated, load_edge_list, load_labels

__all__ = [
    "karate_club",
    "data_dir",
    "fetch_polblogs",
    "load_polblogs",
    "parse_gml",
    "POLBLOGS_URL",
    "POLBLOGS_SHA256",
]

POLBLOGS_URL = "https://websites.umich.edu/~mejn/netdata/polblogs.zip"
# Expected digest of polblogs.zip. The build environment had no route to
# the host, so the digest is recorded on first successful fetch (printed
# and stored next to the data) and verified on every later fetch.
POLBLOGS_SHA256: str | None = None


def karate_club() -> tuple[Graph, NodeLabels]:
    """The 34-node karate club graph with its two-faction labels."""
    pkg = resources.files("lrdpg.data")
    with (pkg / "karate_edges.tsv").open("r") as f:
        g = load_edge_list(f)
    with (pkg / "karate_labels.tsv").open("r") as f:
        labels = load_labels(f, g.n)
    return g, labels


def data_dir() -> Path:
    root = os.environ.get("LRDPG_DATA_DIR")
    if root:
        return Path(root).expanduser()
    return Path.home() / ".cache" / "lrdpg"


def parse_gml(text: str) -> tuple[list[tuple[int, str | None]], list[tuple[int, int]]]:
    """Minimal GML reader for node/edge lists.

    Returns ([(node_id, value)...], [(source, target)...]); `value` is the
    raw string of the node's `value` attribute when present.
    """
    tokens = re.findall(r'"[^"]*"|\[|\]|[^\s\[\]]+', text)
    nodes: list[tuple[int, str | None]] = []
    edges: list[tuple[int, int]] = []
    i = 0

    def read_block(start: int) -> tuple[dict, int]:
        if tokens[start] != "[":
            raise ValueError("malformed GML: expected '['")
        fields: dict[str, str] = {}
        j = start + 1
        while j < len(tokens) and tokens[j] != "]":
            key = tokens[j]
            if j + 1 < len(tokens) and tokens[j + 1] == "[":
                _, j = read_block(j + 1)  # nested block: skip
                continue
            fields.setdefault(key, tokens[j + 1].strip('"'))
            j += 2
        return fields, j + 1

    while i < len(tokens):
        tok = tokens[i]
        if tok == "node":
            fields, i = read_block(i + 1)
            if "id" not in fields:
                raise ValueError("GML node block without id")
            nodes.append((int(fields["id"]), fields.get("value")))
        elif tok == "edge":
            fields, i = read_block(i + 1)
            edges.append((int(fields["source"]), int(fields["target"])))
        else:
            i += 1
    return nodes, edges


def _polblogs_from_gml(text: str) -> tuple[Graph, NodeLabels]:
    """Symmetrize the directed links, drop self-loops and duplicate edges,
    then drop zero-degree nodes."""
    nodes, raw_edges = parse_gml(text)
    ids = [nid for nid, _ in nodes]
    remap = {nid: pos for pos, nid in enumerate(ids)}
    edges = [(remap[a], remap[b]) for a, b in raw_edges if a != b]
    g = Graph(len(ids), edges)
    g, keep = drop_isolated(g)
    values = np.array([int(val) for _, val in nodes], dtype=np.int64)
    labels = NodeLabels(k=2, c=values[keep], names=("liberal", "conservative"))
    return g, labels


def _digest_path(dest: Path) -> Path:
    return dest / "polblogs.zip.sha256"


def fetch_polblogs(dest: Path | None = None, url: str = POLBLOGS_URL,
                   expected_sha256: str | None = POLBLOGS_SHA256,
                   timeout: float = 60.0) -> Path:
    """Download polblogs.zip, verify its digest, and extract the GML file.

    Returns the path of the extracted polblogs.gml. Raises URLError or
    OSError when offline; callers are expected to degrade gracefully.
    """
    dest = Path(dest) if dest is not None else data_dir()
    dest.mkdir(parents=True, exist_ok=True)
    gml_path = dest / "polblogs.gml"
    if gml_path.exists():
        return gml_path
    with urllib.request.urlopen(url, timeout=timeout) as response:
        blob = response.read()
    digest = hashlib.sha256(blob).hexdigest()
    recorded = _digest_path(dest)
    pinned = expected_sha256
    if pinned is None and recorded.exists():
        pinned = recorded.read_text().strip()
    if pinned is not None and digest != pinned:
        raise ValueError(f"polblogs.zip digest mismatch: got {digest}, expected {pinned}")
    with zipfile.ZipFile(io.BytesIO(blob)) as zf:
        name = next(n for n in zf.namelist() if n.endswith(".gml"))
        gml_path.write_bytes(zf.read(name))
    recorded.write_text(digest + "\n")
    print(f"fetched {url} (sha256 {digest})")
    return gml_path


def load_polblogs(dest: Path | None = None) -> tuple[Graph, NodeLabels]:
    """Load the cached political blogs network (fetch_polblogs first)."""
    dest = Path(dest) if dest is not None else data_dir()
    gml_path = dest / "polblogs.gml"
    if not gml_path.exists():
        raise FileNotFoundError(
            f"{gml_path} not found; run `lrdpg fetch-data` (requires network access)")
    return _polblogs_from_gml(gml_path.read_text(errors="replace"))
