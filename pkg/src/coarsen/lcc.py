"""Loop and clique coarsening.

The clique pass visits nodes from high to low degree.  Around each central
node it grows cliques greedily, first from the centre and then from the
centre's unvisited neighbourhood, never leaving the ``sigma``-hop ball of the
centre.  When the clique pass finds too little (by default: nothing at all),
a loop pass picks disjoint simple cycles of at most ``delta`` nodes from the
nodes the clique pass left free.  Every node not absorbed by a structure stays
a singleton, and the resulting partition set is collapsed with
:func:`~coarsen.graph.coarsen_by_partition`.

Tie-breaking is fully deterministic:

* centres are ordered by degree descending, then node id ascending;
* a clique grows from its seed by scanning, in ascending id, the free
  neighbours that share a triangle with the seed: the first one with a free
  common neighbour becomes the second member, after which every candidate
  adjacent to all members so far is kept;
* the cycle chosen through a loop seed is the shortest one, then the
  lexicographically smallest in canonical form (smallest id first, smaller
  neighbour second).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .errors import SizeLimit
from .graph import (
    CoarsenedGraph,
    Graph,
    Kind,
    Partition,
    PartitionSet,
    coarsen_by_partition,
)

MIN_CLIQUE = 3


@dataclass(frozen=True)
class LccConfig:
    """``delta``: longest loop (in nodes) that may be coarsened.
    ``sigma``: hop radius around the central node that cliques must stay in.
    ``loop_fallback_threshold``: the loop pass runs when the fraction of nodes
    covered by cliques is at most this value.
    """

    delta: int = 6
    sigma: int = 1
    loop_fallback_threshold: float = 0.0

    def __post_init__(self):
        if self.delta < 3:
            raise ValueError(f"delta must be >= 3, got {self.delta}")
        if self.sigma < 1:
            raise ValueError(f"sigma must be >= 1, got {self.sigma}")
        if not 0.0 <= self.loop_fallback_threshold <= 1.0:
            raise ValueError("loop_fallback_threshold must lie in [0, 1]")


@dataclass(frozen=True)
class LccTrace:
    visit_order: tuple[int, ...]
    cliques_found: int
    loops_found: int
    fallback_taken: bool


def degree_order(g: Graph) -> list[int]:
    """Nodes by degree descending, ties by ascending id."""
    n = g.num_nodes
    return np.lexsort((np.arange(n), -g.degrees)).tolist()


def _ball(adj: list[list[int]], center: int, radius: int) -> set[int]:
    if radius == 1:
        ball = set(adj[center])
        ball.add(center)
        return ball
    ball = {center}
    frontier = [center]
    for _ in range(radius):
        nxt = []
        for u in frontier:
            for w in adj[u]:
                if w not in ball:
                    ball.add(w)
                    nxt.append(w)
        frontier = nxt
        if not frontier:
            break
    return ball


def triangle_neighbors(g: Graph) -> list[list[int]]:
    """For every node, the sorted neighbours it shares at least one triangle with."""
    n = g.num_nodes
    out: list[list[int]] = [[] for _ in range(n)]
    if g.num_edges == 0:
        return out
    adj = g.adjacency_matrix()
    common = adj.multiply(adj @ adj).tocsr()
    common.eliminate_zeros()
    common.sort_indices()
    indptr = common.indptr.tolist()
    indices = common.indices.tolist()
    for v in np.flatnonzero(np.diff(common.indptr)).tolist():
        out[v] = indices[indptr[v] : indptr[v + 1]]
    return out


def _grow_clique(seed, tri, adj_sets, visited, ball) -> list[int]:
    # Only edges lying on a triangle can belong to a clique of >= 3 nodes, so
    # candidates come from tri[seed].  The second member must share a free
    # candidate with the seed; later members must be adjacent to all members.
    cands = [w for w in tri[seed] if not visited[w] and w in ball]
    members = [seed]
    for w in cands:
        w_adj = adj_sets[w]
        if len(members) == 1:
            for x in cands:
                if x in w_adj:
                    members.append(w)
                    break
            continue
        for m in members[1:]:
            if m not in w_adj:
                break
        else:
            members.append(w)
    return members


def find_cliques_hierarchical(
    g: Graph, cfg: LccConfig = LccConfig()
) -> tuple[list[Partition], set[int], LccTrace]:
    """Clique pass: disjoint cliques of >= 3 nodes, the nodes they cover, and a trace."""
    adj = g.adjacency_lists
    adj_sets = g.adjacency_sets
    tri = triangle_neighbors(g)
    order = degree_order(g)
    rank = [0] * g.num_nodes
    for i, v in enumerate(order):
        rank[v] = i

    visited = [False] * g.num_nodes
    covered: set[int] = set()
    cliques: list[Partition] = []
    visit_order = []

    def take(members):
        for m in members:
            visited[m] = True
        covered.update(members)
        cliques.append(Partition(tuple(sorted(members)), Kind.CLIQUE))

    for cur in order:
        if visited[cur]:
            continue
        visit_order.append(cur)
        # a 1-hop ball holds a clique only if the centre lies on a triangle
        if cfg.sigma == 1 and not tri[cur]:
            visited[cur] = True
            continue
        ball = _ball(adj, cur, cfg.sigma)

        members = _grow_clique(cur, tri, adj_sets, visited, ball)
        if len(members) >= MIN_CLIQUE:
            take(members)

        rest = [r for r in ball if r != cur and tri[r] and not visited[r]]
        rest.sort(key=rank.__getitem__)
        for r in rest:
            if visited[r]:
                continue
            members = _grow_clique(r, tri, adj_sets, visited, ball)
            if len(members) >= MIN_CLIQUE:
                take(members)
        visited[cur] = True

    trace = LccTrace(tuple(visit_order), len(cliques), 0, False)
    return cliques, covered, trace


def _canonical(cycle: list[int]) -> tuple[int, ...]:
    i = cycle.index(min(cycle))
    rot = cycle[i:] + cycle[:i]
    if rot[-1] < rot[1]:
        rot = [rot[0]] + rot[:0:-1]
    return tuple(rot)


def _shortest_cycle_through(s, adj, free, delta) -> tuple[int, ...] | None:
    # bounded BFS distances back to s; a node on a cycle of length L is at most L // 2 away
    radius = delta // 2
    dist = {s: 0}
    frontier = [s]
    for d in range(1, radius + 1):
        nxt = []
        for u in frontier:
            for w in adj[u]:
                if free[w] and w not in dist:
                    dist[w] = d
                    nxt.append(w)
        frontier = nxt
    if len(dist) < 3:
        return None

    best: tuple[int, ...] | None = None
    best_len = delta
    path = [s]
    on_path = {s}

    def extend(u):
        nonlocal best, best_len
        steps = len(path) - 1
        for w in adj[u]:
            if w == s:
                if len(path) >= 3 and len(path) <= best_len:
                    cand = _canonical(path)
                    if best is None or len(path) < len(best) or cand < best:
                        best, best_len = cand, len(path)
                continue
            if not free[w] or w in on_path:
                continue
            back = dist.get(w)
            if back is None or steps + 1 + back > best_len:
                continue
            path.append(w)
            on_path.add(w)
            extend(w)
            path.pop()
            on_path.discard(w)

    extend(s)
    return best


def find_loops_bounded(
    g: Graph, cfg: LccConfig = LccConfig(), blocked=frozenset()
) -> list[Partition]:
    """Loop pass: disjoint simple cycles of 3..delta nodes avoiding ``blocked``.

    Seeds are visited in degree order; each free seed takes its shortest cycle
    among free nodes, and the cycle's nodes stop being free.
    """
    adj = g.adjacency_lists
    free = [True] * g.num_nodes
    for v in blocked:
        free[v] = False

    loops = []
    for s in degree_order(g):
        if not free[s]:
            continue
        cycle = _shortest_cycle_through(s, adj, free, cfg.delta)
        if cycle is None:
            continue
        for v in cycle:
            free[v] = False
        loops.append(Partition(cycle, Kind.LOOP))
    return loops


def lcc_partition(
    g: Graph, cfg: LccConfig = LccConfig()
) -> tuple[PartitionSet, LccTrace]:
    cliques, covered, trace = find_cliques_hierarchical(g, cfg)
    loops = []
    fraction = len(covered) / g.num_nodes if g.num_nodes else 0.0
    fallback = fraction <= cfg.loop_fallback_threshold
    if fallback:
        loops = find_loops_bounded(g, cfg, covered)
    ps = PartitionSet.from_structures(cliques + loops, g.num_nodes)
    trace = LccTrace(trace.visit_order, len(cliques), len(loops), fallback)
    return ps, trace


def coarsen_lcc(
    g: Graph, cfg: LccConfig = LccConfig()
) -> tuple[CoarsenedGraph, PartitionSet, LccTrace]:
    """Run the clique pass, the loop fallback if needed, then collapse the partitions."""
    ps, trace = lcc_partition(g, cfg)
    return coarsen_by_partition(g, ps), ps, trace


@dataclass(frozen=True)
class StructureCounts:
    cliques: int
    loops: int
    loops_by_length: dict[int, int]
    loop_vertex_sets: int

    def __iter__(self):
        # unpacks as (clique count, loop count)
        return iter((self.cliques, self.loops))


def count_structures(
    g: Graph, cfg: LccConfig = LccConfig(), node_cap: int = 64
) -> StructureCounts:
    """Exhaustive, overlapping counts: maximal cliques of >= 3 nodes and simple
    cycles of 3..delta nodes (edge-distinct; vertex sets reported separately).
    """
    import networkx as nx

    if g.num_nodes > node_cap:
        raise SizeLimit(f"count_structures limited to {node_cap} nodes, got {g.num_nodes}")
    nxg = nx.Graph()
    nxg.add_nodes_from(range(g.num_nodes))
    nxg.add_edges_from(g.edge_list())

    cliques = sum(1 for c in nx.find_cliques(nxg) if len(c) >= MIN_CLIQUE)
    cycles = [c for c in nx.simple_cycles(nxg, length_bound=cfg.delta) if len(c) >= 3]
    by_length = Counter(len(c) for c in cycles)
    vertex_sets = {frozenset(c) for c in cycles}
    return StructureCounts(cliques, len(cycles), dict(sorted(by_length.items())), len(vertex_sets))
