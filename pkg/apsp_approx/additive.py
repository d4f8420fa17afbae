"""
Purely additive APSP for unweighted graphs

Available operations:
1. additive_apsp_2(g) - contract (1, 2)
2. additive_apsp_k(g, k) - contract (1, k) for even k, 2 <= k <= 2 * ceil(log2 n)

Scheme: L = k/2 + 1 levels with degree thresholds s_1 > ... > s_{L-1}, where
s_i = ceil((Δ+1)^((L-i)/L)). D_i hits every vertex of degree >= s_i (D_L = V).
E_1 = E, and E_i for i > 1 keeps edges with an endpoint of degree < s_{i-1}.
E* joins every vertex of degree >= s_j to its smallest neighbor in D_j. Level i
runs, from each u in D_i, a Dijkstra on E_i ∪ E* whose star edges are the
current row of estimates; rows are merged symmetrically by min. Each level adds
at most 2 to the stretch, so the result is within +2(L-1) <= k.
"""

import logging
import math
from typing import Dict, List, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from .errors import ContractError
from .graph import (
    INF,
    Contract,
    EstimateMatrix,
    Graph,
    degree_filtered_subgraph,
    seeded_dijkstra,
    sweep,
)
from .hitting import hit

logger = logging.getLogger(__name__)


def max_additive_k(n: int) -> int:
    return max(2, 2 * math.ceil(math.log2(n))) if n > 1 else 2


class AdditiveConfig(BaseModel):
    """Additive stretch k and the degree thresholds derived from the graph"""

    model_config = ConfigDict(frozen=True)

    k: int
    thresholds: Tuple[int, ...] = ()

    @field_validator("k")
    @classmethod
    def k_even(cls, k: int) -> int:
        if k < 2 or k % 2:
            raise ValueError(f"k must be an even integer >= 2, got {k}")
        return k

    @model_validator(mode="after")
    def thresholds_decreasing(self) -> "AdditiveConfig":
        pairs = zip(self.thresholds, self.thresholds[1:])
        if any(a <= b for a, b in pairs):
            raise ValueError(f"thresholds must be strictly decreasing, got {self.thresholds}")
        return self

    @classmethod
    def for_graph(cls, g: Graph, k: int) -> "AdditiveConfig":
        if k < 2 or k % 2:
            raise ContractError(f"k must be an even integer >= 2, got {k}")
        top = max_additive_k(g.n)
        if k > top:
            raise ContractError(f"k={k} exceeds 2*ceil(log2 n)={top} for n={g.n}")
        levels = k // 2 + 1
        span = max(g.degrees, default=0) + 1
        raw = [math.ceil(span ** ((levels - i) / levels)) for i in range(1, levels)]
        thresholds: List[int] = []
        for s in raw:
            s = min(max(s, 1), max(g.n, 1))
            if not thresholds or s < thresholds[-1]:
                thresholds.append(s)
        return cls(k=k, thresholds=tuple(thresholds))

    @property
    def levels(self) -> int:
        return len(self.thresholds) + 1


def _dominator_edges(g: Graph, thresholds, dominators) -> List[Tuple[int, int, int]]:
    """E*: each vertex of degree >= s_j to its smallest-id neighbor in D_j"""
    star = set()
    degrees = g.degrees
    for s, members in zip(thresholds, dominators):
        member_set = set(members)
        for x in range(g.n):
            if degrees[x] < s:
                continue
            y = next(v for v, _ in g.adjacency[x] if v in member_set)
            star.add((min(x, y), max(x, y)))
    return [(a, b, 1) for a, b in sorted(star)]


def additive_apsp_k(g: Graph, k: int) -> EstimateMatrix:
    g.require_unweighted("additive_apsp_k")
    cfg = AdditiveConfig.for_graph(g, k)
    n = g.n
    dominators = [hit(g, s).members for s in cfg.thresholds]
    star = _dominator_edges(g, cfg.thresholds, dominators)
    sources_per_level = dominators + [tuple(range(n))]

    delta = np.full((n, n), INF, dtype=np.int64)
    np.fill_diagonal(delta, 0)
    for i, sources in enumerate(sources_per_level):
        base = g if i == 0 else degree_filtered_subgraph(g, cfg.thresholds[i - 1] - 1)
        adjacency = Graph.from_edges(n, list(base.edges) + star).adjacency

        def relax(u: int, adjacency=adjacency) -> List[int]:
            row = delta[u]
            finite = np.flatnonzero(row != INF)
            return seeded_dijkstra(adjacency, dict(zip(finite.tolist(), row[finite].tolist())))

        sources = list(sources)
        for u, row in zip(sources, sweep(relax, sources)):
            row = np.asarray(row, dtype=np.int64)
            np.minimum(delta[u], row, out=delta[u])
            np.minimum(delta[:, u], row, out=delta[:, u])
        logger.debug(f"additive level {i + 1}/{cfg.levels}: {len(sources)} sources, {len(star)} dominator edges")

    logger.info(f"additive_apsp_k n={n} k={k}: thresholds {list(cfg.thresholds)}")
    return EstimateMatrix(delta, Contract(1, k))


def additive_apsp_2(g: Graph) -> EstimateMatrix:
    return additive_apsp_k(g, 2)
