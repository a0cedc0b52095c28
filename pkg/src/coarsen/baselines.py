"""Reference coarsening strategies: random groups and greedy 1-hop neighbourhoods."""

from __future__ import annotations

from .graph import CoarsenedGraph, Graph, PartitionSet, coarsen_by_partition
from .lcc import degree_order

MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 generator (Steele, Lea & Flood 2014).

    Pinned so a seed yields the same stream in any implementation::

        state += 0x9E3779B97F4A7C15
        z = state
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
        z = (z ^ (z >> 27)) * 0x94D049BB133111EB
        return z ^ (z >> 31)

    all arithmetic modulo 2**64.
    """

    GAMMA = 0x9E3779B97F4A7C15
    MIX1 = 0xBF58476D1CE4E5B9
    MIX2 = 0x94D049BB133111EB

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + self.GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * self.MIX1) & MASK64
        z = ((z ^ (z >> 27)) * self.MIX2) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)`` by rejection (no modulo bias)."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % bound


def random_groups(n: int, r: int, seed: int) -> list[list[int]]:
    """Supernodes take turns drawing a uniformly random unassigned node until none remain."""
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    rng = SplitMix64(seed)
    pool = list(range(n))
    groups: list[list[int]] = [[] for _ in range(min(r, n))]
    turn = 0
    while pool:
        i = rng.below(len(pool))
        # swap-remove keeps each draw O(1)
        pool[i], pool[-1] = pool[-1], pool[i]
        groups[turn].append(pool.pop())
        turn = (turn + 1) % len(groups)
    return groups


def coarsen_random(
    g: Graph, r: int = 5, seed: int = 0
) -> tuple[CoarsenedGraph, PartitionSet]:
    groups = random_groups(g.num_nodes, r, seed)
    groups.sort(key=min)
    ps = PartitionSet.from_groups(groups, g.num_nodes)
    return coarsen_by_partition(g, ps), ps


def neighbor_groups(g: Graph) -> list[list[int]]:
    """Visit nodes by degree (desc, then id); each unvisited node absorbs its unvisited neighbours."""
    adj = g.adjacency_lists
    visited = [False] * g.num_nodes
    groups = []
    for v in degree_order(g):
        if visited[v]:
            continue
        group = [v] + [w for w in adj[v] if not visited[w]]
        for w in group:
            visited[w] = True
        groups.append(sorted(group))
    return groups


def coarsen_neighbor(g: Graph) -> tuple[CoarsenedGraph, PartitionSet]:
    groups = neighbor_groups(g)
    groups.sort(key=min)
    ps = PartitionSet.from_groups(groups, g.num_nodes)
    return coarsen_by_partition(g, ps), ps
