"""Three-view pipeline (original, coarsened, line graph) and its text format.

Each view file holds one record per graph::

    graph <id> label <y> nodes <n> edges <m>
    e <u> <v>                  one per edge, u < v, lexicographic
    p <kind> <members...>      coarsened view only; line i describes supernode i
    f <node> <values...>       one per node when features exist

Line-node ``i`` of the line-graph view is edge ``i`` of the view it was built
from, so the edge origin needs no extra lines.  Files are UTF-8 with LF
newlines.
"""

from __future__ import annotations

import json
import os
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from . import strategies
from .errors import EmptyEdgeSetWarning, MalformedLine
from .graph import CoarsenedGraph, Graph, Kind, Partition
from .linegraph import LineGraphView, line_graph
from .strategies import StrategyOptions
from .tudataset import Dataset

VIEW_FILES = ("original", "coarsened", "linegraph")


@dataclass(frozen=True, eq=False)
class GraphViews:
    original: Graph
    coarse: CoarsenedGraph
    line: LineGraphView


def build_views(g: Graph, strategy: str = "lcc", opts: StrategyOptions = StrategyOptions(),
                lgc_source: str = "coarse") -> GraphViews:
    coarse, _ = strategies.get(strategy)(g, opts)
    base = coarse.super_graph if lgc_source == "coarse" else g
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", EmptyEdgeSetWarning)
        line = line_graph(base)
    return GraphViews(g, coarse, line)


@dataclass(frozen=True, eq=False)
class ViewRecord:
    graph_id: int
    label: int
    graph: Graph
    partitions: tuple[Partition, ...] | None = None


def _fmt(x: float) -> str:
    x = float(x)
    return str(int(x)) if x.is_integer() and abs(x) < 2**53 else repr(x)


def format_record(rec: ViewRecord) -> str:
    g = rec.graph
    out = [f"graph {rec.graph_id} label {rec.label} nodes {g.num_nodes} edges {g.num_edges}"]
    out.extend(f"e {u} {v}" for u, v in g.edges.tolist())
    if rec.partitions is not None:
        for part in rec.partitions:
            out.append(f"p {part.kind.value} " + " ".join(map(str, part.members)))
    if g.features is not None:
        for i, row in enumerate(g.features.tolist()):
            out.append(f"f {i} " + " ".join(_fmt(x) for x in row))
    return "\n".join(out) + "\n"


def write_view_file(path, records) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for rec in records:
            fh.write(format_record(rec))


def read_view_file(path) -> list[ViewRecord]:
    records = []
    current = None

    def finish():
        if current is None:
            return
        head, edges, parts, feats, lineno = current
        n, m = head["nodes"], head["edges"]
        if len(edges) != m:
            raise MalformedLine(path, lineno, f"expected {m} edge lines, found {len(edges)}")
        features = None
        if feats:
            if sorted(feats) != list(range(n)):
                raise MalformedLine(path, lineno, "feature rows do not cover every node")
            features = np.array([feats[i] for i in range(n)], dtype=np.float64)
        g = Graph(n, np.array(edges, dtype=np.int64).reshape(-1, 2), features=features)
        records.append(ViewRecord(head["graph"], head["label"], g, tuple(parts) if parts else None))

    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            tok = line.split()
            if not tok:
                continue
            try:
                if tok[0] == "graph":
                    finish()
                    head = {tok[i]: int(tok[i + 1]) for i in range(0, 8, 2)}
                    if set(head) != {"graph", "label", "nodes", "edges"}:
                        raise ValueError(line)
                    current = (head, [], [], {}, lineno)
                elif current is None:
                    raise ValueError("content before first graph header")
                elif tok[0] == "e":
                    current[1].append((int(tok[1]), int(tok[2])))
                elif tok[0] == "p":
                    current[2].append(Partition(tuple(int(t) for t in tok[2:]), Kind(tok[1])))
                elif tok[0] == "f":
                    current[3][int(tok[1])] = [float(t) for t in tok[2:]]
                else:
                    raise ValueError(f"unknown line type {tok[0]!r}")
            except (ValueError, IndexError) as exc:
                raise MalformedLine(path, lineno, str(exc)) from None
    finish()
    return records


def _worker(args):
    g, strategy, opts, lgc_source = args
    return build_views(g, strategy, opts, lgc_source)


def threads_from_env() -> int:
    try:
        return max(1, int(os.environ.get("COARSEN_THREADS", "1")))
    except ValueError:
        return 1


def compute_views(dataset: Dataset, strategy: str, opts: StrategyOptions,
                  lgc_source: str = "coarse", workers: int | None = None) -> list[GraphViews]:
    strategies.get(strategy)  # fail fast on unknown names
    workers = workers or threads_from_env()
    jobs = [(g, strategy, opts, lgc_source) for g in dataset.graphs]
    if workers <= 1 or len(jobs) < 2:
        return [_worker(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_worker, jobs, chunksize=max(1, len(jobs) // (4 * workers))))


def emit_views(dataset: Dataset, strategy: str, opts: StrategyOptions, out_dir,
               lgc_source: str = "coarse", workers: int | None = None) -> Path:
    """Write the three view files plus ``manifest.json`` under ``out_dir/<dataset>/<strategy>``."""
    views = compute_views(dataset, strategy, opts, lgc_source, workers)
    target = Path(out_dir) / dataset.name / strategy
    target.mkdir(parents=True, exist_ok=True)

    labels = dataset.labels.tolist()
    write_view_file(target / "original.txt",
                    (ViewRecord(i, y, v.original) for i, (v, y) in enumerate(zip(views, labels))))
    write_view_file(target / "coarsened.txt",
                    (ViewRecord(i, y, v.coarse.super_graph, v.coarse.partitions.partitions)
                     for i, (v, y) in enumerate(zip(views, labels))))
    write_view_file(target / "linegraph.txt",
                    (ViewRecord(i, y, v.line.graph) for i, (v, y) in enumerate(zip(views, labels))))

    manifest = {
        "dataset": dataset.name,
        "strategy": strategy,
        "options": asdict(opts),
        "lgc_source": lgc_source,
        "graphs": len(views),
        "empty_line_graphs": [i for i, v in enumerate(views) if v.line.empty],
    }
    with open(target / "manifest.json", "w", encoding="utf-8", newline="\n") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return target
