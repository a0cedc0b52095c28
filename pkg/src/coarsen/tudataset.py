"""Reader/writer for the TUDataset plain-text format.

A dataset ``NAME`` is a directory holding::

    NAME_A.txt               one "u, v" line per directed edge, 1-indexed global node ids
    NAME_graph_indicator.txt graph id (1-indexed) of every node
    NAME_graph_labels.txt    class of every graph
    NAME_node_labels.txt     optional, one label per node
    NAME_edge_labels.txt     optional, one label per line of NAME_A.txt

Both orientations of an edge collapse into one undirected edge (the first
occurrence supplies the edge label); a single orientation is accepted too.
Self-loops are dropped and counted in ``Dataset.dropped_self_loops``.
"""

from __future__ import annotations

import logging
import os
import warnings
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .errors import IndicatorGap, MalformedLine, MissingFile, MissingNodeLabels
from .graph import DEFAULT_DEGREE_CAP, Graph, degree_one_hot, one_hot

log = logging.getLogger(__name__)

FEATURE_POLICIES = {
    "node-label": "node-label",
    "node-label-onehot": "node-label",
    "degree": "degree",
    "degree-onehot": "degree",
    "constant": "constant",
}


@dataclass(frozen=True, eq=False)
class Dataset:
    name: str
    graphs: list[Graph]
    labels: np.ndarray
    class_count: int
    dropped_self_loops: int = field(default=0)

    def __post_init__(self):
        labels = np.asarray(self.labels, dtype=np.int64)
        if len(labels) != len(self.graphs):
            raise ValueError("one label per graph required")
        if len(labels) and (labels.min() < 0 or labels.max() >= self.class_count):
            raise ValueError("graph labels must lie in [0, class_count)")
        object.__setattr__(self, "labels", labels)

    def __len__(self):
        return len(self.graphs)

    @property
    def avg_nodes(self) -> float:
        return float(np.mean([g.num_nodes for g in self.graphs])) if self.graphs else 0.0

    @property
    def avg_edges(self) -> float:
        return float(np.mean([g.num_edges for g in self.graphs])) if self.graphs else 0.0

    def stats(self) -> dict:
        return {
            "name": self.name,
            "graphs": len(self.graphs),
            "classes": self.class_count,
            "avg_nodes": self.avg_nodes,
            "avg_edges": self.avg_edges,
        }


def _int_rows(text: str) -> list[list[int]]:
    return [[int(tok) for tok in line.split(",")] for line in text.splitlines() if line.strip()]


def _read_table(path: Path, ncols: int | None) -> np.ndarray:
    """Integer table from a comma-separated file (spaces after commas allowed)."""
    if not path.exists():
        raise MissingFile(f"missing {path}")
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")  # empty-file warning
            arr = np.loadtxt(path, delimiter=",", dtype=np.int64, ndmin=2)
    except ValueError:
        arr = None
    if arr is None or (ncols is not None and arr.size and arr.shape[1] < ncols):
        _locate_bad_line(path, ncols)
        raise MalformedLine(path, 0, "unparseable table")  # unreachable in practice
    if ncols is None:
        ncols = 1
    if arr.size == 0:
        return np.zeros((0, ncols), dtype=np.int64)
    return arr[:, :ncols]


def _locate_bad_line(path: Path, ncols: int | None) -> None:
    width = None
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            parts = line.split(",")
            try:
                [int(p) for p in parts]
            except ValueError:
                raise MalformedLine(path, lineno, f"non-integer field in {line.strip()!r}") from None
            if ncols is not None and len(parts) < ncols:
                raise MalformedLine(path, lineno, f"expected {ncols} fields")
            if width is not None and len(parts) != width:
                raise MalformedLine(path, lineno, "inconsistent field count")
            width = len(parts)


def _first_bad(mask: np.ndarray) -> int:
    return int(np.flatnonzero(mask)[0])


def load_tudataset(directory, name: str) -> Dataset:
    """Load dataset ``name`` from ``directory`` (or ``directory/name``)."""
    root = Path(directory)
    if not (root / f"{name}_A.txt").exists() and (root / name / f"{name}_A.txt").exists():
        root = root / name
    prefix = root / name

    pairs = _read_table(Path(f"{prefix}_A.txt"), 2)
    indicator = _read_table(Path(f"{prefix}_graph_indicator.txt"), 1)[:, 0]
    raw_labels = _read_table(Path(f"{prefix}_graph_labels.txt"), 1)[:, 0]
    node_path = Path(f"{prefix}_node_labels.txt")
    edge_path = Path(f"{prefix}_edge_labels.txt")
    node_labels = _read_table(node_path, 1)[:, 0] if node_path.exists() else None
    edge_labels = _read_table(edge_path, 1)[:, 0] if edge_path.exists() else None

    num_graphs = len(raw_labels)
    num_nodes = len(indicator)
    if num_nodes and (indicator.min() < 1 or indicator.max() > num_graphs):
        bad = _first_bad((indicator < 1) | (indicator > num_graphs))
        raise IndicatorGap(
            f"{prefix}_graph_indicator.txt:{bad + 1}: graph {indicator[bad]} "
            f"does not exist ({num_graphs} graph labels)"
        )
    if node_labels is not None and len(node_labels) != num_nodes:
        raise MalformedLine(node_path, min(len(node_labels), num_nodes) + 1, "node label count mismatch")
    if edge_labels is not None and len(edge_labels) != len(pairs):
        raise MalformedLine(edge_path, min(len(edge_labels), len(pairs)) + 1, "edge label count mismatch")

    a_path = Path(f"{prefix}_A.txt")
    out_of_range = (pairs < 1) | (pairs > num_nodes)
    if out_of_range.any():
        raise MalformedLine(a_path, _first_bad(out_of_range.any(axis=1)) + 1, "node id out of range")
    src, dst = pairs[:, 0] - 1, pairs[:, 1] - 1
    graph_of = indicator - 1
    crossing = graph_of[src] != graph_of[dst]
    if crossing.any():
        raise MalformedLine(a_path, _first_bad(crossing) + 1, "edge joins two graphs")

    loops = src == dst
    dropped = int(loops.sum())
    if dropped:
        log.warning("%s: dropping %d self-loops", name, dropped)

    keep = np.flatnonzero(~loops)
    lo = np.minimum(src[keep], dst[keep])
    hi = np.maximum(src[keep], dst[keep])
    _, first = np.unique(lo * max(num_nodes, 1) + hi, return_index=True)
    first.sort()
    lo, hi, line_ids = lo[first], hi[first], keep[first]

    # local ids: position of each node among the nodes of its graph
    order = np.argsort(graph_of, kind="stable")
    counts = np.bincount(graph_of, minlength=num_graphs)
    starts = np.concatenate([[0], np.cumsum(counts)[:-1]])
    local = np.empty(num_nodes, dtype=np.int64)
    local[order] = np.arange(num_nodes) - np.repeat(starts, counts)

    edge_graph = graph_of[lo]
    edge_order = np.argsort(edge_graph, kind="stable")
    edge_counts = np.bincount(edge_graph, minlength=num_graphs)
    edge_starts = np.concatenate([[0], np.cumsum(edge_counts)[:-1]])

    graphs = []
    for gi in range(num_graphs):
        nodes = order[starts[gi] : starts[gi] + counts[gi]]
        sel = edge_order[edge_starts[gi] : edge_starts[gi] + edge_counts[gi]]
        edges = np.stack([local[lo[sel]], local[hi[sel]]], axis=1)
        graphs.append(
            Graph(
                int(counts[gi]),
                edges,
                node_labels=None if node_labels is None else node_labels[nodes],
                edge_labels=None if edge_labels is None else edge_labels[line_ids[sel]],
            )
        )

    classes, labels = np.unique(raw_labels, return_inverse=True)
    return Dataset(name, graphs, labels, len(classes), dropped)


def write_tudataset(d: Dataset, directory, name: str | None = None) -> Path:
    """Write ``d`` in TUDataset layout (both edge orientations, 1-indexed ids)."""
    name = name or d.name
    root = Path(directory)
    root.mkdir(parents=True, exist_ok=True)
    prefix = root / name

    with_nodes = all(g.node_labels is not None for g in d.graphs)
    with_edges = all(g.edge_labels is not None for g in d.graphs)
    a_lines, ind_lines, nl_lines, el_lines = [], [], [], []
    offset = 0
    for gi, g in enumerate(d.graphs, start=1):
        ind_lines.extend([str(gi)] * g.num_nodes)
        if with_nodes:
            nl_lines.extend(str(int(x)) for x in g.node_labels)
        for k, (u, v) in enumerate(g.edges.tolist()):
            u, v = u + offset + 1, v + offset + 1
            a_lines.append(f"{u}, {v}")
            a_lines.append(f"{v}, {u}")
            if with_edges:
                lab = str(int(g.edge_labels[k]))
                el_lines.extend([lab, lab])
        offset += g.num_nodes

    def dump(suffix, lines):
        with open(f"{prefix}_{suffix}.txt", "w", encoding="utf-8", newline="\n") as fh:
            fh.write("".join(line + "\n" for line in lines))

    dump("A", a_lines)
    dump("graph_indicator", ind_lines)
    dump("graph_labels", [str(int(y)) for y in d.labels])
    if with_nodes:
        dump("node_labels", nl_lines)
    if with_edges:
        dump("edge_labels", el_lines)
    return root


def init_features(d: Dataset, policy: str = "node-label", degree_cap: int = DEFAULT_DEGREE_CAP) -> Dataset:
    """Attach a feature matrix to every graph; the dimension is uniform across ``d``.

    ``node-label``: one-hot over the dataset's distinct node labels.
    ``degree``: one-hot degree, degrees ``>= degree_cap - 1`` share the last column.
    ``constant``: a single column of ones.
    """
    try:
        policy = FEATURE_POLICIES[policy]
    except KeyError:
        raise ValueError(f"unknown feature policy {policy!r}") from None

    if policy == "node-label":
        if any(g.node_labels is None for g in d.graphs):
            raise MissingNodeLabels(f"{d.name} has no node labels")
        values = np.unique(np.concatenate([g.node_labels for g in d.graphs] or [[]]).astype(np.int64))
        dim = max(len(values), 1)
        graphs = [g.with_features(one_hot(np.searchsorted(values, g.node_labels), dim)) for g in d.graphs]
    elif policy == "degree":
        graphs = [g.with_features(degree_one_hot(g, degree_cap)) for g in d.graphs]
    else:
        graphs = [g.with_features(np.ones((g.num_nodes, 1))) for g in d.graphs]
    return replace(d, graphs=graphs)


def default_policy(d: Dataset) -> str:
    """``node-label`` when every graph is labelled, else ``degree``."""
    return "node-label" if all(g.node_labels is not None for g in d.graphs) else "degree"


def data_root() -> Path:
    return Path(os.environ.get("COARSEN_DATA", "data"))
