"""
Pivot set, bunches and clusters

Available operations:
1. compute_bunches(g, p, seed) - sample S at rate p, retry until size bounds hold
2. build_bunches(g, S) - deterministic structure for a given pivot set
3. BunchStructure.to_bytes / BunchStructure.read_from - persistence inside oracle blobs

B(u) holds every v with d(u, v) < d(u, S), plus the pivot p(u) and u itself.
C(v) = {u : v in B(u)}. Clusters are grown by a Dijkstra from each w that only
settles u while d(w, u) < d(u, S); bunches are the inverted clusters.
"""

import heapq
import logging
import math
import struct
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .config import get_config
from .errors import BlobFormatError, BunchSizeError, ContractError
from .graph import INF, Graph, make_rng, nearest_pivots, sweep

logger = logging.getLogger(__name__)

BUNCH_MAGIC = b"APSPBNCH"
BUNCH_VERSION = 1
_HEADER = struct.Struct("<8sHQQd")


def log_factor(n: int) -> float:
    return max(1.0, math.log(n)) if n > 1 else 1.0


def bunch_bound(n: int, p: float) -> float:
    """c_B * log(n) / p, the cap for every bunch and cluster"""
    return get_config().bunch_const * log_factor(n) / p


def pivot_bound(n: int, p: float) -> float:
    """c_S * p * n * log(n), the cap for |S|"""
    return get_config().pivot_const * p * n * log_factor(n)


@dataclass(frozen=True)
class BunchStructure:
    n: int
    p: float
    S: Tuple[int, ...]
    pivot: Tuple[int, ...]
    pivot_dist: Tuple[int, ...]
    bunches: Tuple[Dict[int, int], ...]
    clusters: Tuple[Dict[int, int], ...]

    def bunch(self, u: int) -> Dict[int, int]:
        return self.bunches[u]

    def cluster(self, v: int) -> Dict[int, int]:
        return self.clusters[v]

    def in_bunch(self, u: int, v: int) -> bool:
        return v in self.bunches[u]

    @property
    def max_bunch(self) -> int:
        return max((len(b) for b in self.bunches), default=0)

    @property
    def max_cluster(self) -> int:
        return max((len(c) for c in self.clusters), default=0)

    @property
    def total_size(self) -> int:
        return sum(len(b) for b in self.bunches)

    def within_bounds(self) -> bool:
        if self.n == 0:
            return True
        cap = bunch_bound(self.n, self.p)
        return (
            self.max_bunch <= cap
            and self.max_cluster <= cap
            and len(self.S) <= max(1.0, pivot_bound(self.n, self.p))
        )

    def to_bytes(self) -> bytes:
        parts = [
            _HEADER.pack(BUNCH_MAGIC, BUNCH_VERSION, self.n, len(self.S), self.p),
            np.asarray(self.S, dtype="<i8").tobytes(),
            np.asarray(self.pivot, dtype="<i8").tobytes(),
            np.asarray(self.pivot_dist, dtype="<i8").tobytes(),
        ]
        for table in (self.bunches, self.clusters):
            offsets = np.zeros(self.n + 1, dtype="<i8")
            offsets[1:] = np.cumsum([len(row) for row in table])
            ids = [v for row in table for v in sorted(row)]
            dists = [row[v] for row in table for v in sorted(row)]
            parts.append(offsets.tobytes())
            parts.append(np.asarray(ids, dtype="<i8").tobytes())
            parts.append(np.asarray(dists, dtype="<i8").tobytes())
        return b"".join(parts)

    @classmethod
    def read_from(cls, reader: "BlobReader") -> "BunchStructure":
        magic, version, n, s_count, p = reader.unpack(_HEADER)
        if magic != BUNCH_MAGIC:
            raise BlobFormatError(f"bad bunch magic {magic!r}")
        if version != BUNCH_VERSION:
            raise BlobFormatError(f"bunch format version {version}, expected {BUNCH_VERSION}")
        S = tuple(reader.array(s_count).tolist())
        pivot = tuple(reader.array(n).tolist())
        pivot_dist = tuple(reader.array(n).tolist())
        tables = []
        for _ in range(2):
            offsets = reader.array(n + 1)
            total = int(offsets[-1])
            ids = reader.array(total).tolist()
            dists = reader.array(total).tolist()
            tables.append(tuple(
                dict(zip(ids[offsets[u]:offsets[u + 1]], dists[offsets[u]:offsets[u + 1]]))
                for u in range(n)
            ))
        return cls(n, p, S, pivot, pivot_dist, tables[0], tables[1])


class BlobReader:
    """Sequential reader over a little-endian blob"""

    def __init__(self, data: bytes, source: str = "blob"):
        self._data = data
        self._pos = 0
        self._source = source

    def unpack(self, fmt: struct.Struct) -> tuple:
        end = self._pos + fmt.size
        if end > len(self._data):
            raise BlobFormatError(f"{self._source}: truncated at byte {self._pos}")
        values = fmt.unpack_from(self._data, self._pos)
        self._pos = end
        return values

    def array(self, count: int, dtype: str = "<i8") -> np.ndarray:
        size = int(count) * np.dtype(dtype).itemsize
        end = self._pos + size
        if end > len(self._data):
            raise BlobFormatError(f"{self._source}: truncated at byte {self._pos}")
        out = np.frombuffer(self._data, dtype=dtype, count=int(count), offset=self._pos).astype(np.int64)
        self._pos = end
        return out

    @property
    def exhausted(self) -> bool:
        return self._pos == len(self._data)


def _grow_cluster(g: Graph, w: int, dist_s: Sequence[int]) -> Dict[int, int]:
    """{u : d(w, u) < d(u, S)} with exact distances"""
    if dist_s[w] == 0:
        return {}
    found: Dict[int, int] = {}
    best = {w: 0}
    heap = [(0, w)]
    adjacency = g.adjacency
    while heap:
        d, u = heapq.heappop(heap)
        if u in found or d > best[u]:
            continue
        found[u] = d
        for v, wt in adjacency[u]:
            nd = d + wt
            if nd < dist_s[v] and nd < best.get(v, INF):
                best[v] = nd
                heapq.heappush(heap, (nd, v))
    return found


def build_bunches(g: Graph, S: Iterable[int], p: float = 1.0) -> BunchStructure:
    S = tuple(sorted(set(S)))
    dist_s, pivot = nearest_pivots(g, S)
    grown = sweep(lambda w: _grow_cluster(g, w, dist_s), list(range(g.n)))

    clusters: List[Dict[int, int]] = [dict(c) for c in grown]
    for u in range(g.n):
        clusters[u].setdefault(u, 0)
        if pivot[u] >= 0:
            clusters[pivot[u]].setdefault(u, dist_s[u])

    bunches: List[Dict[int, int]] = [{} for _ in range(g.n)]
    for w, members in enumerate(clusters):
        for u, d in members.items():
            bunches[u][w] = d

    return BunchStructure(
        n=g.n,
        p=p,
        S=S,
        pivot=tuple(pivot),
        pivot_dist=tuple(dist_s),
        bunches=tuple(bunches),
        clusters=tuple(clusters),
    )


def compute_bunches(g: Graph, p: float, seed: int, max_retries: Optional[int] = None) -> BunchStructure:
    """Sample S at rate p and build size-bounded bunches and clusters"""
    n = g.n
    if n == 0:
        return BunchStructure(0, p, (), (), (), (), ())
    if not (1.0 / n) * (1 - 1e-9) <= p <= 1.0:
        raise ContractError(f"sampling rate must lie in [1/n, 1], got p={p} for n={n}")
    retries = max_retries if max_retries is not None else get_config().max_retries
    cap = bunch_bound(n, p)
    promoted: set = set()

    for attempt in range(retries + 1):
        rng = make_rng(seed, attempt)
        sample = set(np.flatnonzero(rng.random(n) < p).tolist()) | promoted
        if not sample:
            sample.add(int(rng.integers(n)))
        bs = build_bunches(g, sample, p)
        if bs.within_bounds():
            logger.debug(
                f"bunches n={n} p={p:.4f}: |S|={len(bs.S)}, max bunch {bs.max_bunch}, "
                f"max cluster {bs.max_cluster} (attempt {attempt})"
            )
            return bs
        oversized = [w for w in range(n) if len(bs.clusters[w]) > cap]
        promoted.update(oversized)
        logger.warning(
            f"bunch size bound {cap:.1f} violated (max bunch {bs.max_bunch}, max cluster {bs.max_cluster}, "
            f"|S|={len(bs.S)}); resampling, {len(oversized)} cluster centres promoted"
        )
    raise BunchSizeError(f"bunch/cluster bounds still violated after {retries} retries (n={n}, p={p})")
