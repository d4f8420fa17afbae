"""
Deterministic hitting sets

hit(g, s) returns a small vertex set such that every vertex of degree >= s has
at least one neighbor in it. The construction is greedy set cover over the
high-degree vertices with a lazily re-evaluated gain heap.
"""

import heapq
import logging
import math
from dataclasses import dataclass
from typing import Tuple

from .config import get_config
from .errors import ContractError
from .graph import Graph

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HittingSet:
    s: int
    members: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, v: int) -> bool:
        return v in self.members


def size_bound(n: int, s: int) -> float:
    """c * (n / s) * ln(n) + 1"""
    if n <= 1:
        return 1.0
    return get_config().hit_const * (n / s) * math.log(n) + 1


def hit(g: Graph, s: int) -> HittingSet:
    if not 1 <= s <= max(g.n, 1):
        raise ContractError(f"hitting threshold must lie in [1, n], got s={s} for n={g.n}")

    degrees = g.degrees
    uncovered = {x for x in range(g.n) if degrees[x] >= s}
    if not uncovered:
        return HittingSet(s, ())

    # candidate v covers the heavy vertices among its neighbors
    gain = [0] * g.n
    for x in uncovered:
        for v, _ in g.adjacency[x]:
            gain[v] += 1
    heap = [(-gain[v], v) for v in range(g.n) if gain[v] > 0]
    heapq.heapify(heap)

    chosen = []
    while uncovered:
        stale, v = heapq.heappop(heap)
        current = sum(1 for x, _ in g.adjacency[v] if x in uncovered)
        if current == 0:
            continue
        if current < -stale:
            heapq.heappush(heap, (-current, v))
            continue
        chosen.append(v)
        uncovered.difference_update(x for x, _ in g.adjacency[v])

    members = tuple(sorted(chosen))
    bound = size_bound(g.n, s)
    if len(members) > bound:
        logger.warning(f"hit(s={s}) picked {len(members)} vertices, above the bound {bound:.1f}")
    logger.debug(f"hit(s={s}): {len(members)} members")
    return HittingSet(s, members)
