"""Scale and runtime reports over whole datasets."""

from __future__ import annotations

import copy
import gc
import json
import statistics
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import strategies
from .strategies import StrategyOptions
from .tudataset import Dataset
from .views import read_view_file


@dataclass(frozen=True)
class ScaleRow:
    dataset: str
    strategy: str
    graphs: int
    avg_nodes_original: float
    avg_edges_original: float
    avg_nodes: float
    avg_edges: float

    @property
    def ratio_nodes(self) -> float:
        return _ratio(self.avg_nodes, self.avg_nodes_original)

    @property
    def ratio_edges(self) -> float:
        return _ratio(self.avg_edges, self.avg_edges_original)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["ratio_nodes"] = self.ratio_nodes
        d["ratio_edges"] = self.ratio_edges
        return d


def _ratio(new: float, old: float) -> float:
    return (new - old) / old if old else 0.0


def scale_row(dataset: str, strategy: str, original_sizes, coarse_sizes) -> ScaleRow:
    """Averages from per-graph ``(nodes, edges)`` pairs of both views."""
    original_sizes, coarse_sizes = list(original_sizes), list(coarse_sizes)
    m = len(original_sizes)
    if m != len(coarse_sizes):
        raise ValueError("need one coarse graph per original graph")

    def avg(rows, k):
        return sum(r[k] for r in rows) / m if m else 0.0

    return ScaleRow(dataset, strategy, m, avg(original_sizes, 0), avg(original_sizes, 1),
                    avg(coarse_sizes, 0), avg(coarse_sizes, 1))


@dataclass
class ScaleReport:
    rows: list[ScaleRow] = field(default_factory=list)

    def mean_node_reduction(self, strategy: str) -> float:
        vals = [-r.ratio_nodes for r in self.rows if r.strategy == strategy]
        return statistics.fmean(vals) if vals else 0.0

    def mean_edge_reduction(self, strategy: str) -> float:
        vals = [-r.ratio_edges for r in self.rows if r.strategy == strategy]
        return statistics.fmean(vals) if vals else 0.0

    def to_dict(self) -> dict:
        names = sorted({r.strategy for r in self.rows})
        return {
            "rows": [r.to_dict() for r in self.rows],
            "mean_node_reduction": {s: self.mean_node_reduction(s) for s in names},
            "mean_edge_reduction": {s: self.mean_edge_reduction(s) for s in names},
        }

    def to_table(self) -> str:
        header = ("dataset", "strategy", "graphs", "V_o", "E_o", "V", "r_V", "E", "r_E")
        body = [
            (r.dataset, r.strategy, str(r.graphs), f"{r.avg_nodes_original:.2f}",
             f"{r.avg_edges_original:.2f}", f"{r.avg_nodes:.2f}", f"{r.ratio_nodes:+.2f}",
             f"{r.avg_edges:.2f}", f"{r.ratio_edges:+.2f}")
            for r in self.rows
        ]
        widths = [max(len(row[i]) for row in [header, *body]) for i in range(len(header))]
        lines = ["  ".join(c.rjust(w) if i > 1 else c.ljust(w) for i, (c, w) in enumerate(zip(row, widths)))
                 for row in [header, *body]]
        for s in sorted({r.strategy for r in self.rows}):
            lines.append(f"mean reduction [{s}]: nodes {self.mean_node_reduction(s):.1%}, "
                         f"edges {self.mean_edge_reduction(s):.1%}")
        return "\n".join(lines) + "\n"

    def write(self, path) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            json.dump(self.to_dict(), fh, indent=2)
            fh.write("\n")


def run_scale_report(dataset: Dataset, strategy_names, opts: StrategyOptions = StrategyOptions(),
                     report: ScaleReport | None = None) -> ScaleReport:
    report = report if report is not None else ScaleReport()
    original = [(g.num_nodes, g.num_edges) for g in dataset.graphs]
    for name in strategy_names:
        fn = strategies.get(name)
        coarse = []
        for g in dataset.graphs:
            cg, _ = fn(g, opts)
            coarse.append((cg.num_nodes, cg.num_edges))
        report.rows.append(scale_row(dataset.name, name, original, coarse))
    return report


def scale_from_views(view_dir, dataset: str = "", strategy: str = "") -> ScaleRow:
    """Recompute a scale row from emitted ``original.txt`` / ``coarsened.txt``."""
    view_dir = Path(view_dir)
    orig = read_view_file(view_dir / "original.txt")
    coarse = read_view_file(view_dir / "coarsened.txt")
    return scale_row(
        dataset or view_dir.parent.name,
        strategy or view_dir.name,
        [(r.graph.num_nodes, r.graph.num_edges) for r in orig],
        [(r.graph.num_nodes, r.graph.num_edges) for r in coarse],
    )


@dataclass(frozen=True)
class RuntimeReport:
    dataset: str
    strategy: str
    repetitions: int
    seconds: float
    all_seconds: tuple[float, ...]
    graphs: int
    total_nodes: int
    total_edges: int

    @property
    def graphs_per_second(self) -> float:
        return self.graphs / self.seconds if self.seconds > 0 else float("inf")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["all_seconds"] = list(self.all_seconds)
        d["graphs_per_second"] = self.graphs_per_second
        return d

    def to_table(self) -> str:
        return (f"{self.dataset} [{self.strategy}] {self.graphs} graphs, "
                f"|V|+|E| = {self.total_nodes + self.total_edges}: "
                f"median {self.seconds:.3f}s over {self.repetitions} runs "
                f"({self.graphs_per_second:.1f} graphs/s)\n")


def _uncached(g):
    # adjacency construction is part of the timed work in every repetition
    g = copy.copy(g)
    for key in ("_csr", "degrees", "adjacency_lists", "adjacency_sets"):
        g.__dict__.pop(key, None)
    return g


def time_coarsening(graphs, strategy: str = "lcc", opts: StrategyOptions = StrategyOptions(),
                    repetitions: int = 3) -> list[float]:
    """Wall seconds of each repetition of coarsening every graph (no I/O)."""
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    fn = strategies.get(strategy)
    times = []
    enabled = gc.isenabled()
    try:
        for _ in range(repetitions):
            fresh = [_uncached(g) for g in graphs]
            gc.collect()
            gc.disable()  # collector pauses would blur the size/time relation
            t0 = time.perf_counter()
            for g in fresh:
                fn(g, opts)
            times.append(time.perf_counter() - t0)
            if enabled:
                gc.enable()
    finally:
        if enabled:
            gc.enable()
    return times


def run_runtime_report(dataset: Dataset, strategy: str = "lcc", repetitions: int = 3,
                       opts: StrategyOptions = StrategyOptions()) -> RuntimeReport:
    graphs = dataset.graphs
    times = time_coarsening(graphs, strategy, opts, repetitions)
    return RuntimeReport(
        dataset=dataset.name,
        strategy=strategy,
        repetitions=repetitions,
        seconds=statistics.median(times),
        all_seconds=tuple(times),
        graphs=len(graphs),
        total_nodes=sum(g.num_nodes for g in graphs),
        total_edges=sum(g.num_edges for g in graphs),
    )
