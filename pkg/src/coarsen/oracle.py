"""Brute-force reference enumerations used to check the coarsening passes.

Everything here is intentionally naive and rebuilds adjacency straight from
``Graph.edges`` so it shares no code with the production search.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from .errors import SizeLimit
from .graph import Graph, Kind, Partition, PartitionSet

NODE_CAP = 64


def _adjacency(g: Graph) -> dict[int, set[int]]:
    if g.num_nodes > NODE_CAP:
        raise SizeLimit(f"oracle limited to {NODE_CAP} nodes, got {g.num_nodes}")
    adj = {v: set() for v in range(g.num_nodes)}
    for u, v in g.edges.tolist():
        adj[u].add(v)
        adj[v].add(u)
    return adj


def all_maximal_cliques(g: Graph) -> list[tuple[int, ...]]:
    """Every maximal clique (any size, isolated nodes included), sorted."""
    adj = _adjacency(g)
    found = []

    def expand(r, p, x):
        if not p and not x:
            found.append(tuple(sorted(r)))
            return
        for v in sorted(p):
            expand(r | {v}, p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    expand(set(), set(adj), set())
    return sorted(found)


def canonical_cycle(cycle) -> tuple[int, ...]:
    """Rotate so the smallest node leads; orient so the second entry is the smaller neighbour."""
    cycle = list(cycle)
    i = cycle.index(min(cycle))
    rot = cycle[i:] + cycle[:i]
    if len(rot) > 2 and rot[-1] < rot[1]:
        rot = [rot[0]] + rot[:0:-1]
    return tuple(rot)


def all_simple_cycles_upto(g: Graph, delta: int) -> list[tuple[int, ...]]:
    """Every simple cycle with 3..delta nodes, once each, in canonical form."""
    adj = _adjacency(g)
    cycles = set()

    def walk(start, path, on_path):
        last = path[-1]
        for nxt in adj[last]:
            if nxt == start and len(path) >= 3:
                cycles.add(canonical_cycle(path))
            elif nxt > start and nxt not in on_path and len(path) < delta:
                on_path.add(nxt)
                path.append(nxt)
                walk(start, path, on_path)
                path.pop()
                on_path.discard(nxt)

    for s in range(g.num_nodes):
        walk(s, [s], {s})
    return sorted(cycles)


@dataclass(frozen=True)
class Certificate:
    valid: bool
    violation: str = ""

    def __bool__(self):
        return self.valid


def _has_spanning_cycle(members, adj) -> bool:
    first, rest = members[0], members[1:]
    for order in permutations(rest):
        if order and order[0] > order[-1]:
            continue  # each cycle checked once per direction
        ring = (first,) + order
        if all(ring[(i + 1) % len(ring)] in adj[ring[i]] for i in range(len(ring))):
            return True
    return False


def certify_partition(g: Graph, p: Partition, delta: int | None = None) -> Certificate:
    """Check that ``p`` really is the structure its kind claims."""
    members = list(p.members)
    if p.kind is Kind.ARBITRARY:
        return Certificate(True)
    if p.kind is Kind.SINGLETON:
        if len(members) == 1:
            return Certificate(True)
        return Certificate(False, f"singleton with {len(members)} members")

    adj = _adjacency(g)
    if p.kind is Kind.CLIQUE:
        for u, v in combinations(members, 2):
            if v not in adj[u]:
                return Certificate(False, f"clique members {u} and {v} not adjacent")
        return Certificate(True)

    if len(members) < 3:
        return Certificate(False, f"loop with only {len(members)} members")
    if delta is not None and len(members) > delta:
        return Certificate(False, f"loop length {len(members)} exceeds {delta}")
    if not _has_spanning_cycle(members, adj):
        return Certificate(False, "no spanning cycle")
    return Certificate(True)


def certify_partition_set(
    g: Graph, ps: PartitionSet, delta: int | None = None
) -> list[tuple[Partition, Certificate]]:
    """All violations in ``ps`` (empty list when every partition certifies)."""
    bad = []
    for part in ps:
        cert = certify_partition(g, part, delta)
        if not cert:
            bad.append((part, cert))
    return bad
