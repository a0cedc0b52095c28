"""Line graph conversion.

Line-node ``i`` stands for ``g.edges[i]`` (edges are kept in lexicographic
order), and two line-nodes are adjacent when their source edges share an
endpoint.  Line-node features are the one-hot edge label when the source
carries edge labels, otherwise the sum of the two endpoint feature rows.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import EmptyEdgeSetWarning, MissingFeatures
from .graph import Graph, one_hot


@dataclass(frozen=True, eq=False)
class LineGraphView:
    graph: Graph
    edge_origin: np.ndarray
    features: np.ndarray | None

    @property
    def empty(self) -> bool:
        return self.graph.num_nodes == 0


def _line_edges(g: Graph) -> np.ndarray:
    m = g.num_edges
    if m == 0:
        return np.zeros((0, 2), dtype=np.int64)
    # incidence list: (node, edge id) sorted by node then edge id
    ends = np.concatenate([g.edges[:, 0], g.edges[:, 1]])
    ids = np.concatenate([np.arange(m), np.arange(m)])
    order = np.lexsort((ids, ends))
    ends, ids = ends[order], ids[order]
    starts = np.flatnonzero(np.r_[True, ends[1:] != ends[:-1]])
    stops = np.r_[starts[1:], len(ends)]

    chunks = []
    for lo, hi in zip(starts.tolist(), stops.tolist()):
        k = hi - lo
        if k < 2:
            continue
        a, b = np.triu_indices(k, 1)
        inc = ids[lo:hi]
        chunks.append(np.stack([inc[a], inc[b]], axis=1))
    if not chunks:
        return np.zeros((0, 2), dtype=np.int64)
    return np.concatenate(chunks)


def lgc_features(g: Graph, lg: LineGraphView, edge_label_dim: int | None = None) -> np.ndarray:
    """Feature rows for the line-nodes of ``lg``."""
    origin = lg.edge_origin
    if g.edge_labels is not None:
        labels = np.asarray(g.edge_labels, dtype=np.int64)
        if edge_label_dim is None:
            edge_label_dim = int(labels.max()) + 1 if len(labels) else 1
        return one_hot(labels, edge_label_dim)
    if g.features is None:
        raise MissingFeatures("graph has neither node features nor edge labels")
    if len(origin) == 0:
        return np.zeros((0, g.features.shape[1]), dtype=np.float64)
    return g.features[origin[:, 0]] + g.features[origin[:, 1]]


def line_graph(g: Graph, edge_label_dim: int | None = None) -> LineGraphView:
    """Line graph of ``g``; features are filled in whenever ``g`` can supply them.

    An edgeless ``g`` gives an empty view and an :class:`EmptyEdgeSetWarning`.
    """
    if g.num_edges == 0:
        warnings.warn(f"{g!r} has no edges; line graph is empty", EmptyEdgeSetWarning, stacklevel=2)
    origin = g.edges.copy()
    skeleton = LineGraphView(Graph(g.num_edges, _line_edges(g)), origin, None)
    if g.features is None and g.edge_labels is None:
        return skeleton
    feats = lgc_features(g, skeleton, edge_label_dim)
    return LineGraphView(skeleton.graph.with_features(feats), origin, feats)
