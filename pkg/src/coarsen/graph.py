"""Graph data model and partition-matrix coarsening.

A :class:`Graph` is an immutable simple undirected graph stored as a sorted
edge array plus CSR neighbour lists.  A :class:`PartitionSet` is a disjoint
cover of its nodes; coarsening collapses each partition into one supernode.

Two independent routes compute the coarsened graph:

* :func:`coarsen_by_partition` walks the edge list once (linear time, the
  production path);
* :func:`matrix_route_coarsen` materialises the block-permuted adjacency
  matrix and applies the block indicator (quadratic, for cross-checking).
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from scipy import sparse

from .errors import DuplicateEdge, InvalidPartition, OutOfRange, SelfLoop

DEFAULT_DEGREE_CAP = 64


def _optional_array(values, dtype=None):
    if values is None:
        return None
    arr = np.asarray(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph.

    ``edges`` is normalised on construction to an ``(m, 2)`` int64 array with
    ``u < v`` in every row and rows sorted lexicographically.  ``edge_labels``
    (if given) is permuted along with the edges.
    """

    num_nodes: int
    edges: np.ndarray
    node_labels: np.ndarray | None = None
    edge_labels: np.ndarray | None = None
    features: np.ndarray | None = None

    def __post_init__(self):
        n = int(self.num_nodes)
        if n < 0:
            raise OutOfRange(f"negative node count {n}")
        edges = np.asarray(self.edges, dtype=np.int64)
        if edges.size == 0:
            edges = np.zeros((0, 2), dtype=np.int64)
        if edges.ndim != 2 or edges.shape[1] != 2:
            raise ValueError(f"edges must have shape (m, 2), got {edges.shape}")

        bad = (edges < 0) | (edges >= n)
        if bad.any():
            row = int(np.flatnonzero(bad.any(axis=1))[0])
            raise OutOfRange(f"edge {tuple(edges[row])} has endpoint outside [0, {n})")
        loops = edges[:, 0] == edges[:, 1]
        if loops.any():
            row = int(np.flatnonzero(loops)[0])
            raise SelfLoop(f"self-loop on node {edges[row, 0]}")

        canon = np.sort(edges, axis=1)
        order = np.lexsort((canon[:, 1], canon[:, 0]))
        canon = canon[order]
        if len(canon) > 1:
            dup = (np.diff(canon, axis=0) == 0).all(axis=1)
            if dup.any():
                row = int(np.flatnonzero(dup)[0])
                raise DuplicateEdge(f"edge {tuple(canon[row])} given more than once")
        canon.setflags(write=False)

        edge_labels = self.edge_labels
        if edge_labels is not None:
            edge_labels = np.asarray(edge_labels)
            if len(edge_labels) != len(edges):
                raise ValueError("edge_labels length must equal the number of edges")
            edge_labels = _optional_array(edge_labels[order])

        node_labels = _optional_array(self.node_labels)
        if node_labels is not None and len(node_labels) != n:
            raise ValueError("node_labels length must equal num_nodes")

        features = self.features
        if features is not None:
            features = np.asarray(features, dtype=np.float64)
            if features.ndim == 1:
                features = features.reshape(-1, 1)
            if features.ndim != 2 or features.shape[0] != n:
                raise ValueError(
                    f"features must have one row per node, got shape {features.shape}"
                )
            features = _optional_array(features)

        object.__setattr__(self, "num_nodes", n)
        object.__setattr__(self, "edges", canon)
        object.__setattr__(self, "edge_labels", edge_labels)
        object.__setattr__(self, "node_labels", node_labels)
        object.__setattr__(self, "features", features)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def _csr(self) -> tuple[np.ndarray, np.ndarray]:
        n = self.num_nodes
        src = np.concatenate([self.edges[:, 0], self.edges[:, 1]])
        dst = np.concatenate([self.edges[:, 1], self.edges[:, 0]])
        mat = sparse.csr_matrix(
            (np.ones(len(src), dtype=np.int8), (src, dst)), shape=(n, n)
        )
        mat.sort_indices()
        return mat.indptr.astype(np.int64), mat.indices.astype(np.int64)

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.diff(self._csr[0])

    def neighbors(self, v: int) -> np.ndarray:
        """Sorted neighbour ids of ``v``."""
        indptr, indices = self._csr
        return indices[indptr[v] : indptr[v + 1]]

    @cached_property
    def adjacency_lists(self) -> list[list[int]]:
        """Sorted neighbour lists as plain Python lists (fast to iterate)."""
        indptr, indices = self._csr
        flat = indices.tolist()
        bounds = indptr.tolist()
        return [flat[bounds[v] : bounds[v + 1]] for v in range(self.num_nodes)]

    @cached_property
    def adjacency_sets(self) -> list[frozenset[int]]:
        return [frozenset(nbrs) for nbrs in self.adjacency_lists]

    def has_edge(self, u: int, v: int) -> bool:
        nbrs = self.neighbors(u)
        i = np.searchsorted(nbrs, v)
        return bool(i < len(nbrs) and nbrs[i] == v)

    def adjacency_matrix(self) -> sparse.csr_matrix:
        indptr, indices = self._csr
        data = np.ones(len(indices), dtype=np.int64)
        n = self.num_nodes
        return sparse.csr_matrix((data, indices, indptr), shape=(n, n))

    def edge_list(self) -> list[tuple[int, int]]:
        return [tuple(e) for e in self.edges.tolist()]

    def with_features(self, features) -> "Graph":
        return Graph(
            self.num_nodes, self.edges, self.node_labels, self.edge_labels, features
        )

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.num_nodes == other.num_nodes
            and np.array_equal(self.edges, other.edges)
            and _opt_equal(self.node_labels, other.node_labels)
            and _opt_equal(self.edge_labels, other.edge_labels)
            and _opt_equal(self.features, other.features)
        )

    __hash__ = None

    def __repr__(self):
        extra = ""
        if self.features is not None:
            extra = f", dim={self.features.shape[1]}"
        return f"Graph(nodes={self.num_nodes}, edges={self.num_edges}{extra})"


def _opt_equal(a, b) -> bool:
    if a is None or b is None:
        return a is None and b is None
    return a.shape == b.shape and np.array_equal(a, b)


def from_edge_list(
    num_nodes: int,
    pairs: Iterable[Sequence[int]],
    node_labels=None,
    edge_labels=None,
    features=None,
) -> Graph:
    """Build a :class:`Graph`, rejecting out-of-range ids, self-loops and duplicates.

    >>> from_edge_list(3, [(0, 1), (1, 2), (0, 2)]).degrees.tolist()
    [2, 2, 2]
    """
    pairs = list(pairs)
    edges = np.array(pairs, dtype=np.int64).reshape(len(pairs), 2)
    return Graph(num_nodes, edges, node_labels, edge_labels, features)


def one_hot(indices, dim: int) -> np.ndarray:
    indices = np.asarray(indices, dtype=np.int64)
    out = np.zeros((len(indices), dim), dtype=np.float64)
    out[np.arange(len(indices)), indices] = 1.0
    return out


def degree_one_hot(g: Graph, cap: int = DEFAULT_DEGREE_CAP) -> np.ndarray:
    """One-hot degree features; degrees ``>= cap - 1`` share the last column."""
    return one_hot(np.minimum(g.degrees, cap - 1), cap)


def default_features(g: Graph, degree_cap: int = DEFAULT_DEGREE_CAP) -> np.ndarray:
    """Node-label one-hot if labels exist (label value = column), else degree one-hot."""
    if g.node_labels is not None:
        labels = np.asarray(g.node_labels, dtype=np.int64)
        dim = int(labels.max()) + 1 if len(labels) else 1
        return one_hot(labels, dim)
    return degree_one_hot(g, degree_cap)


class Kind(str, enum.Enum):
    CLIQUE = "clique"
    LOOP = "loop"
    SINGLETON = "singleton"
    # baseline groups with no structural meaning
    ARBITRARY = "arbitrary"


@dataclass(frozen=True)
class Partition:
    members: tuple[int, ...]
    kind: Kind

    def __post_init__(self):
        members = tuple(map(int, self.members))
        kind = self.kind if isinstance(self.kind, Kind) else Kind(self.kind)
        if not members:
            raise InvalidPartition("empty partition")
        if len(members) > 1 and len(set(members)) != len(members):
            raise InvalidPartition(f"repeated node in partition {members}")
        if (kind is Kind.SINGLETON) != (len(members) == 1):
            raise InvalidPartition(
                f"kind {kind.value} does not match partition size {len(members)}"
            )
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "kind", kind)

    def __len__(self):
        return len(self.members)


@dataclass(frozen=True)
class PartitionSet:
    """Ordered disjoint cover of ``range(source_nodes)``."""

    partitions: tuple[Partition, ...]
    source_nodes: int

    def __post_init__(self):
        parts = tuple(self.partitions)
        n = int(self.source_nodes)
        sizes = np.fromiter((len(p.members) for p in parts), dtype=np.int64, count=len(parts))
        flat = np.fromiter(
            itertools.chain.from_iterable(p.members for p in parts),
            dtype=np.int64,
            count=int(sizes.sum()),
        )
        outside = (flat < 0) | (flat >= n)
        if outside.any():
            raise InvalidPartition(f"node {flat[outside][0]} outside [0, {n})")
        hits = np.bincount(flat, minlength=n)
        if (hits > 1).any():
            raise InvalidPartition(f"node {np.flatnonzero(hits > 1)[0]} appears in two partitions")
        if (hits == 0).any():
            missing = np.flatnonzero(hits == 0)[:5].tolist()
            raise InvalidPartition(f"nodes {missing} not covered by any partition")
        mapping = np.empty(n, dtype=np.int64)
        mapping[flat] = np.repeat(np.arange(len(parts)), sizes)
        mapping.setflags(write=False)
        object.__setattr__(self, "partitions", parts)
        object.__setattr__(self, "source_nodes", n)
        object.__setattr__(self, "_mapping", mapping)

    def __len__(self):
        return len(self.partitions)

    def __iter__(self):
        return iter(self.partitions)

    def __getitem__(self, i):
        return self.partitions[i]

    @property
    def mapping(self) -> np.ndarray:
        """``mapping[v]`` is the index of the partition containing node ``v``."""
        return self._mapping

    def count(self, kind: Kind) -> int:
        return sum(1 for p in self.partitions if p.kind is kind)

    @classmethod
    def singletons(cls, n: int) -> "PartitionSet":
        return cls(tuple(Partition((v,), Kind.SINGLETON) for v in range(n)), n)

    @classmethod
    def from_structures(
        cls, structures: Iterable[Partition], n: int
    ) -> "PartitionSet":
        """Complete ``structures`` with singletons and order parts by smallest member."""
        parts = list(structures)
        covered = np.zeros(n, dtype=bool)
        for part in parts:
            covered[list(part.members)] = True
        parts.extend(
            Partition((v,), Kind.SINGLETON) for v in np.flatnonzero(~covered).tolist()
        )
        parts.sort(key=lambda p: min(p.members))
        return cls(tuple(parts), n)

    @classmethod
    def from_groups(cls, groups: Iterable[Iterable[int]], n: int) -> "PartitionSet":
        """Partition set of untyped groups (``Arbitrary`` unless size one)."""
        parts = []
        for group in groups:
            members = tuple(sorted(int(v) for v in group))
            kind = Kind.SINGLETON if len(members) == 1 else Kind.ARBITRARY
            parts.append(Partition(members, kind))
        return cls(tuple(parts), n)


@dataclass(frozen=True, eq=False)
class CoarsenedGraph:
    """Supernode graph produced from a :class:`Graph` and a :class:`PartitionSet`.

    ``super_graph`` is simple (no self-edges): supernodes are adjacent iff some
    source edge crosses between their partitions.  ``diag_weights`` holds the
    diagonal of ``M A M^T`` (twice the internal edge count) and ``block_sizes``
    the partition sizes, so either reading of the supernode weight is at hand.
    ``weighted_adjacency`` is ``M A M^T`` itself and ``normalized_adjacency``
    scales each of its rows by ``1 / diag_weights[i]`` (factor 1 when the
    diagonal is zero).
    """

    super_graph: Graph
    partitions: PartitionSet
    diag_weights: np.ndarray
    block_sizes: np.ndarray
    weighted_adjacency: sparse.csr_matrix
    normalized_adjacency: sparse.csr_matrix
    features: np.ndarray | None = field(default=None)

    @property
    def mapping(self) -> np.ndarray:
        return self.partitions.mapping

    @property
    def num_nodes(self) -> int:
        return self.super_graph.num_nodes

    @property
    def num_edges(self) -> int:
        return self.super_graph.num_edges

    def __eq__(self, other):
        if not isinstance(other, CoarsenedGraph):
            return NotImplemented
        return (
            self.super_graph == other.super_graph
            and self.partitions == other.partitions
            and np.array_equal(self.diag_weights, other.diag_weights)
            and np.array_equal(self.block_sizes, other.block_sizes)
            and _sparse_equal(self.weighted_adjacency, other.weighted_adjacency)
            and _sparse_equal(self.normalized_adjacency, other.normalized_adjacency)
            and _opt_equal(self.features, other.features)
        )

    __hash__ = None


def _sparse_equal(a, b) -> bool:
    return a.shape == b.shape and (a != b).nnz == 0


def _check_partition(g: Graph, p: PartitionSet) -> None:
    if p.source_nodes != g.num_nodes:
        raise InvalidPartition(
            f"partition set covers {p.source_nodes} nodes, graph has {g.num_nodes}"
        )


def _row_scale(diag: np.ndarray) -> np.ndarray:
    scale = diag.astype(np.float64)
    scale[scale == 0] = 1.0
    return scale


def coarsen_by_partition(g: Graph, p: PartitionSet) -> CoarsenedGraph:
    """Collapse every partition of ``p`` into a supernode in a single edge pass."""
    _check_partition(g, p)
    n = len(p)
    mapping = p.mapping
    pu = mapping[g.edges[:, 0]]
    pv = mapping[g.edges[:, 1]]

    internal = pu == pv
    diag = 2 * np.bincount(pu[internal], minlength=n).astype(np.int64)

    a = np.minimum(pu[~internal], pv[~internal])
    b = np.maximum(pu[~internal], pv[~internal])
    keys, counts = np.unique(a * max(n, 1) + b, return_counts=True)
    ia, ib = keys // max(n, 1), keys % max(n, 1)

    rows = np.concatenate([ia, ib, np.arange(n)])
    cols = np.concatenate([ib, ia, np.arange(n)])
    vals = np.concatenate([counts, counts, diag]).astype(np.float64)
    keep = vals != 0
    weighted = sparse.csr_matrix(
        (vals[keep], (rows[keep], cols[keep])), shape=(n, n)
    )
    weighted.sort_indices()
    # divide rather than multiply by the inverse: keeps both routes bit-identical
    entry_rows = np.repeat(np.arange(n), np.diff(weighted.indptr))
    normalized = weighted.copy()
    normalized.data = weighted.data / _row_scale(diag)[entry_rows]

    features = None
    if g.features is not None:
        features = np.zeros((n, g.features.shape[1]), dtype=np.float64)
        np.add.at(features, mapping, g.features)

    super_graph = Graph(n, np.stack([ia, ib], axis=1), features=features)
    return CoarsenedGraph(
        super_graph=super_graph,
        partitions=p,
        diag_weights=diag,
        block_sizes=np.bincount(mapping, minlength=n).astype(np.int64),
        weighted_adjacency=weighted,
        normalized_adjacency=normalized,
        features=super_graph.features,
    )


def indication_matrix(p: PartitionSet) -> np.ndarray:
    """Dense 0/1 matrix with ``M[i, j] = 1`` iff node ``j`` lies in partition ``i``."""
    m = np.zeros((len(p), p.source_nodes), dtype=np.int64)
    for i, part in enumerate(p.partitions):
        m[i, list(part.members)] = 1
    return m


def matrix_route_coarsen(g: Graph, p: PartitionSet) -> CoarsenedGraph:
    """Reference coarsening through explicit dense matrices.

    Permutes the adjacency matrix so every partition occupies a contiguous
    diagonal block, then reduces each block: diagonal blocks give the partition
    size and internal degree sum, off-diagonal blocks give the cross-edge count
    and the 0/1 indicator.  Features use the dense indication matrix.
    Quadratic in the node count; meant for small graphs in tests.
    """
    _check_partition(g, p)
    n, size = len(p), g.num_nodes
    adj = np.zeros((size, size), dtype=np.int64)
    if g.num_edges:
        adj[g.edges[:, 0], g.edges[:, 1]] = 1
        adj[g.edges[:, 1], g.edges[:, 0]] = 1

    order = [m for part in p.partitions for m in part.members]
    perm = np.zeros((size, size), dtype=np.int64)
    perm[np.arange(size), order] = 1
    blocked = perm @ adj @ perm.T

    bounds = np.concatenate([[0], np.cumsum([len(part) for part in p.partitions])])
    weighted = np.zeros((n, n), dtype=np.int64)
    indicator = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            block = blocked[bounds[i] : bounds[i + 1], bounds[j] : bounds[j + 1]]
            weighted[i, j] = block.sum()
            if i == j:
                indicator[i, j] = bounds[i + 1] - bounds[i]
            else:
                indicator[i, j] = 1 if block.any() else 0

    diag = np.diag(weighted).copy()
    normalized = weighted.astype(np.float64) / _row_scale(diag)[:, None]

    iu, ju = np.nonzero(np.triu(indicator, k=1))
    features = None
    if g.features is not None:
        features = indication_matrix(p).astype(np.float64) @ g.features

    super_graph = Graph(n, np.stack([iu, ju], axis=1), features=features)
    weighted_csr = sparse.csr_matrix(weighted.astype(np.float64))
    normalized_csr = sparse.csr_matrix(normalized)
    return CoarsenedGraph(
        super_graph=super_graph,
        partitions=p,
        diag_weights=diag,
        block_sizes=np.diag(indicator).copy(),
        weighted_adjacency=weighted_csr,
        normalized_adjacency=normalized_csr,
        features=super_graph.features,
    )
