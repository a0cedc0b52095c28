"""Name -> coarsening strategy registry.

Every strategy maps ``(Graph, StrategyOptions)`` to ``(CoarsenedGraph,
PartitionSet)``.  Further coarseners plug in through :func:`register`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .baselines import coarsen_neighbor, coarsen_random
from .graph import CoarsenedGraph, Graph, PartitionSet, coarsen_by_partition
from .lcc import LccConfig, coarsen_lcc


@dataclass(frozen=True)
class StrategyOptions:
    delta: int = 6
    sigma: int = 1
    loop_fallback_threshold: float = 0.0
    seed: int = 0
    random_groups: int = 5

    @property
    def lcc(self) -> LccConfig:
        return LccConfig(self.delta, self.sigma, self.loop_fallback_threshold)


Strategy = Callable[[Graph, StrategyOptions], "tuple[CoarsenedGraph, PartitionSet]"]


def _lcc(g, opts):
    coarse, ps, _ = coarsen_lcc(g, opts.lcc)
    return coarse, ps


def _identity(g, opts):
    ps = PartitionSet.singletons(g.num_nodes)
    return coarsen_by_partition(g, ps), ps


STRATEGIES: dict[str, Strategy] = {
    "lcc": _lcc,
    "random": lambda g, o: coarsen_random(g, o.random_groups, o.seed),
    "neighbor": lambda g, o: coarsen_neighbor(g),
    "identity": _identity,
}


def register(name: str, fn: Strategy) -> None:
    if name in STRATEGIES:
        raise ValueError(f"strategy {name!r} already registered")
    STRATEGIES[name] = fn


def get(name: str) -> Strategy:
    try:
        return STRATEGIES[name]
    except KeyError:
        known = ", ".join(sorted(STRATEGIES))
        raise ValueError(f"unknown strategy {name!r} (known: {known})") from None
