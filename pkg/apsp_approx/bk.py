"""
Parameterized Baswana-Kavitha 2-approximation

Available operations:
1. build_r_hierarchy(g, r, seed) - nested pivot sets S_0 = V ⊇ S_1 ⊇ ... ⊇ S_k, k = round((1-r) log2 n)
2. bk_scheme(g, h) - level-wise pivot estimates over the sparsified edge sets E_{S_{i+1}}
3. bk_apsp(g, r, eps, seed) - combine the scheme with MSSP from S_k; contract (2+eps, 0)

Every S_i is a halving subsample of S_{i-1} united with the cluster-bounding pivot
set of compute_bunches(g, n^(r-1)), so clusters w.r.t. any S_i stay small.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np

from .bunches import BunchStructure, build_bunches, compute_bunches, log_factor
from .config import get_config
from .errors import BunchSizeError, ContractError
from .graph import (
    INF,
    Contract,
    EstimateMatrix,
    Graph,
    make_rng,
    nearest_int,
    nearest_pivots,
    saturating_add,
    seeded_dijkstra,
    sweep,
)
from .weighted import mssp

logger = logging.getLogger(__name__)

_SUBSAMPLE_STREAM = 0x5EED


@dataclass(frozen=True)
class RHierarchy:
    r: float
    k: int
    levels: Tuple[Tuple[int, ...], ...]
    pivots: Tuple[Tuple[int, ...], ...]
    pivot_dist: Tuple[Tuple[int, ...], ...]
    base: BunchStructure
    top: BunchStructure

    @property
    def n(self) -> int:
        return self.base.n

    def level_sizes(self) -> List[int]:
        return [len(level) for level in self.levels]


@dataclass
class PivotEstimates:
    """delta[s, v] as left by the scheme plus the per-level pivot tables"""

    delta: np.ndarray
    pivots: np.ndarray
    alpha: np.ndarray

    @property
    def k(self) -> int:
        return self.pivots.shape[0] - 1

    def candidate(self, u: int, v: int) -> int:
        """min over levels of delta(u, p_i(u)) + delta(p_i(u), v) and the mirrored term"""
        best = INF
        for i in range(self.pivots.shape[0]):
            for a, b in ((u, v), (v, u)):
                piv = int(self.pivots[i, a])
                if piv < 0:
                    continue
                head, tail = int(self.alpha[i, a]), int(self.delta[piv, b])
                if head != INF and tail != INF:
                    best = min(best, head + tail)
        return best


def hierarchy_depth(n: int, r: float) -> int:
    if n <= 1:
        return 0
    return max(0, nearest_int((1 - r) * math.log2(n)))


def _level_bound(n: int, i: int) -> float:
    return get_config().pivot_const * (n / 2 ** i) * log_factor(n)


def build_r_hierarchy(g: Graph, r: float, seed: int = 0) -> RHierarchy:
    if not 0 <= r <= 1:
        raise ContractError(f"r must lie in [0, 1], got {r}")
    n = g.n
    k = hierarchy_depth(n, r)
    p = min(1.0, float(n) ** (r - 1)) if n else 1.0
    base = compute_bunches(g, p, seed)
    anchor = set(base.S)
    top_bound = get_config().pivot_const * (float(n) ** r) * log_factor(n) if n else 1.0
    retries = get_config().max_retries

    for attempt in range(retries + 1):
        rng = make_rng(seed, _SUBSAMPLE_STREAM, attempt)
        current = np.arange(n)
        levels = [tuple(range(n))]
        for i in range(1, k + 1):
            current = current[rng.random(current.size) < 0.5]
            levels.append(tuple(sorted(set(current.tolist()) | anchor)))
        sizes_ok = all(len(levels[i]) <= max(1.0, _level_bound(n, i)) for i in range(1, k + 1))
        if sizes_ok and len(levels[k]) <= max(1.0, top_bound):
            break
        logger.warning(f"r-hierarchy level sizes {[len(s) for s in levels]} exceed bounds; resampling")
    else:
        raise BunchSizeError(f"r-hierarchy size bounds still violated after {retries} retries (n={n}, r={r})")

    pivots, pivot_dist = [], []
    for level in levels:
        dist, piv = nearest_pivots(g, level)
        pivots.append(tuple(piv))
        pivot_dist.append(tuple(dist))
    top = build_bunches(g, levels[k], p)
    logger.info(f"r-hierarchy r={r}: k={k}, level sizes {[len(s) for s in levels]}, max top bunch {top.max_bunch}")
    return RHierarchy(r, k, tuple(levels), tuple(pivots), tuple(pivot_dist), base, top)


def _sparsified(g: Graph, dist_next) -> Tuple[Tuple[Tuple[int, int], ...], ...]:
    """E_A = {u, v} with w(u, v) <= d(u, A) or w(u, v) <= d(v, A)"""
    adjacency: List[List[Tuple[int, int]]] = [[] for _ in range(g.n)]
    for u, v, w in g.edges:
        if w <= dist_next[u] or w <= dist_next[v]:
            adjacency[u].append((v, w))
            adjacency[v].append((u, w))
    return tuple(tuple(nbrs) for nbrs in adjacency)


def _bunch_frontier(g: Graph, bunch: Dict[int, int]) -> np.ndarray:
    """min over x in B(u) of d(u, x) + w(x, y), for every y"""
    row = np.full(g.n, INF, dtype=np.int64)
    for x, dx in bunch.items():
        for y, w in g.adjacency[x]:
            if dx + w < row[y]:
                row[y] = dx + w
    return row


def bk_scheme(g: Graph, h: RHierarchy) -> PivotEstimates:
    n, k = g.n, h.k
    delta = np.full((n, n), INF, dtype=np.int64)
    np.fill_diagonal(delta, 0)
    pivots = np.array(h.pivots, dtype=np.int64).reshape(k + 1, n)
    alpha = np.array(h.pivot_dist, dtype=np.int64).reshape(k + 1, n)

    for i in range(k + 1):
        for u in range(n):
            piv = pivots[i, u]
            if piv >= 0:
                delta[piv, u] = min(delta[piv, u], alpha[i, u])
                delta[u, piv] = min(delta[u, piv], alpha[i, u])

    top_members = set(h.levels[k])
    for u in range(n):
        if u in top_members:
            continue
        frontier = _bunch_frontier(g, h.top.bunch(u))
        for i in range(k + 1):
            piv = pivots[i, u]
            if piv < 0:
                continue
            np.minimum(delta[piv], saturating_add(alpha[i, u], frontier), out=delta[piv])

    for i in range(k):
        adjacency = _sparsified(g, h.pivot_dist[i + 1])

        def relax(s: int, adjacency=adjacency) -> List[int]:
            row = delta[s]
            finite = np.flatnonzero(row != INF)
            return seeded_dijkstra(adjacency, dict(zip(finite.tolist(), row[finite].tolist())))

        sources = list(h.levels[i])
        for s, row in zip(sources, sweep(relax, sources)):
            np.minimum(delta[s], np.asarray(row, dtype=np.int64), out=delta[s])
        logger.debug(f"bk_scheme level {i}: {len(sources)} sources, {sum(len(a) for a in adjacency) // 2} sparsified edges")

    return PivotEstimates(delta, pivots, alpha)


def _combine(est: PivotEstimates) -> np.ndarray:
    n = est.delta.shape[0]
    best = np.full((n, n), INF, dtype=np.int64)
    for i in range(est.pivots.shape[0]):
        piv = est.pivots[i]
        has_pivot = piv >= 0
        tails = np.full((n, n), INF, dtype=np.int64)
        tails[has_pivot] = est.delta[piv[has_pivot]]
        level = saturating_add(est.alpha[i][:, None], tails)
        np.minimum(best, level, out=best)
        np.minimum(best, level.T, out=best)
    return best


def bk_apsp(
    g: Graph,
    r: float = 0.5,
    eps: Fraction = Fraction(0),
    seed: int = 0,
    hierarchy: Optional[RHierarchy] = None,
) -> EstimateMatrix:
    """(2+eps)-approximate APSP for weighted graphs"""
    eps = Fraction(eps)
    if eps < 0:
        raise ContractError(f"eps must be >= 0, got {eps}")
    h = hierarchy or build_r_hierarchy(g, r, seed)
    est = bk_scheme(g, h)

    top = list(h.levels[h.k])
    rows = mssp(g, top, eps / 2)
    for s, row in zip(top, rows):
        np.minimum(est.delta[s], row, out=est.delta[s])

    entries = _combine(est)
    for u in range(g.n):
        for v, d in h.top.bunch(u).items():
            entries[u, v] = entries[v, u] = d
    np.fill_diagonal(entries, 0)
    logger.info(f"bk_apsp n={g.n} r={r} eps={eps}: k={h.k}, |S_k|={len(top)}")
    return EstimateMatrix(entries, Contract(2 + eps, 0))
