"""
Stretch audits against exact distances

audit_stretch checks d <= δ <= mult * d + add pairwise; audit_stretch_2w checks
d <= δ <= 2d + W_{u,v} with W from bottleneck_apsp. Unreachable pairs pass only
when the estimate is INF as well.
"""

import heapq
import logging
from fractions import Fraction
from typing import List, Optional, Union

import numpy as np
from pydantic import BaseModel

from .errors import DimensionError
from .graph import INF, EstimateMatrix, Graph, sweep

logger = logging.getLogger(__name__)


class StretchAudit(BaseModel):
    mult: str
    add: str
    pairs: int
    max_ratio: float
    max_surplus: int
    below: int
    above: int
    violations: int
    first_violation: Optional[List[int]] = None

    @property
    def passed(self) -> bool:
        return self.violations == 0


def _audit(d: np.ndarray, e: np.ndarray, upper_ok: np.ndarray, mult: str, add: str) -> StretchAudit:
    d_inf, e_inf = d == INF, e == INF
    finite = ~d_inf & ~e_inf
    below = (finite & (e < d)) | (d_inf & ~e_inf)
    above = (finite & ~upper_ok) | (~d_inf & e_inf)
    bad = below | above

    positive = finite & (d > 0)
    max_ratio = float((e[positive] / d[positive]).max()) if positive.any() else 1.0
    max_surplus = int((e[finite] - d[finite]).max()) if finite.any() else 0
    first = None
    if bad.any():
        u, v = (int(x) for x in np.argwhere(bad)[0])
        first = [u, v, int(d[u, v]), int(e[u, v])]
        logger.warning(f"stretch violation at ({u}, {v}): d={d[u, v]}, estimate={e[u, v]}")
    return StretchAudit(
        mult=mult,
        add=add,
        pairs=int(d.size),
        max_ratio=max_ratio,
        max_surplus=max_surplus,
        below=int(below.sum()),
        above=int(above.sum()),
        violations=int(bad.sum()),
        first_violation=first,
    )


def _pair(exact: EstimateMatrix, estimate: EstimateMatrix):
    if exact.n != estimate.n:
        raise DimensionError(f"exact matrix has n={exact.n}, estimate has n={estimate.n}")
    return exact.entries, estimate.entries


def audit_stretch(
    exact: EstimateMatrix,
    estimate: EstimateMatrix,
    mult: Union[int, float, str, Fraction],
    add: int = 0,
) -> StretchAudit:
    d, e = _pair(exact, estimate)
    mult = Fraction(str(mult)) if isinstance(mult, float) else Fraction(mult)
    num, den = mult.numerator, mult.denominator
    safe_d = np.where(d == INF, 0, d)
    safe_e = np.where(e == INF, 0, e)
    upper_ok = safe_e * den <= safe_d * num + int(add) * den
    return _audit(d, e, upper_ok, str(mult), str(add))


def bottleneck_apsp(g: Graph) -> np.ndarray:
    """W[u, v]: smallest possible max edge weight over shortest u-v paths"""

    def from_source(src: int) -> List[int]:
        best = [(INF, INF)] * g.n
        best[src] = (0, 0)
        heap = [(0, 0, src)]
        while heap:
            d, b, u = heapq.heappop(heap)
            if (d, b) > best[u]:
                continue
            for v, w in g.adjacency[u]:
                label = (d + w, max(b, w))
                if label < best[v]:
                    best[v] = label
                    heapq.heappush(heap, (label[0], label[1], v))
        return [b for _, b in best]

    rows = sweep(from_source, list(range(g.n)))
    return np.array(rows, dtype=np.int64).reshape(g.n, g.n)


def audit_stretch_2w(exact: EstimateMatrix, estimate: EstimateMatrix, bottleneck: np.ndarray) -> StretchAudit:
    d, e = _pair(exact, estimate)
    W = np.where(bottleneck == INF, 0, bottleneck)
    safe_d = np.where(d == INF, 0, d)
    safe_e = np.where(e == INF, 0, e)
    upper_ok = safe_e <= 2 * safe_d + W
    return _audit(d, e, upper_ok, "2", "W_uv")
