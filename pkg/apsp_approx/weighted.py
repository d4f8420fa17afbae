"""
Weighted (2+eps) APSP and constant-time distance oracles

Available operations:
1. mssp - distances from a source set (exact Dijkstra rows)
2. adjacent_via_edges - δ_adjacent by enumerating C(u') x C(v') per edge
3. adjacent_via_bunch_dijkstra - δ_adjacent for all pairs through per-vertex bunch graphs
4. build_oracle_2 / query_oracle_2 - pivot rows plus adjacent table, contract (2, 0)
5. build_oracle_2W / query_oracle_2W - pivot rows plus overlap table, d <= answer <= 2d + W_{u,v}
6. dense_apsp - full matrix, contract (2+eps, 0)
7. save_oracle / load_oracle - versioned binary blobs
"""

import logging
import math
import struct
from fractions import Fraction
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from .bunches import BlobReader, BunchStructure, compute_bunches
from .errors import BlobFormatError, ContractError
from .graph import INF, Contract, EstimateMatrix, Graph, saturating_add, seeded_dijkstra, sweep

logger = logging.getLogger(__name__)

ORACLE_MAGIC = b"APSPORCL"
ORACLE_VERSION = 1
_ORACLE_HEADER = struct.Struct("<8sHBd")
_COUNT = struct.Struct("<Q")

KIND_TWO = "two"
KIND_TWO_W = "two-w"
_KIND_CODES = {KIND_TWO: 0, KIND_TWO_W: 1}


def mssp(g: Graph, sources: Sequence[int], eps: Fraction = Fraction(0)) -> np.ndarray:
    """|S| x n rows with d(s, v) <= row[v] <= (1+eps) d(s, v); the shipped rows are exact"""
    if Fraction(eps) < 0:
        raise ContractError(f"eps must be >= 0, got {eps}")
    for s in sources:
        if not 0 <= s < g.n:
            raise ContractError(f"source {s} outside 0..{g.n - 1}")
    if not sources:
        return np.empty((0, g.n), dtype=np.int64)
    rows = sweep(lambda s: seeded_dijkstra(g.adjacency, {s: 0}), list(sources))
    return np.array(rows, dtype=np.int64).reshape(len(sources), g.n)


def _clamp_rate(p: float, n: int) -> float:
    return min(1.0, max(p, 1.0 / n)) if n else 1.0


def default_p_oracle_2(n: int) -> float:
    """p = n^(-1/3)"""
    return _clamp_rate(n ** (-1 / 3), n) if n else 1.0


def default_p_oracle_2W(n: int, m: int, space: bool = False) -> float:
    """m^(-1/3) when m <= n^(3/2), otherwise n^(-1/2); n^(-1/3) when optimizing space"""
    if n == 0:
        return 1.0
    if space:
        return _clamp_rate(n ** (-1 / 3), n)
    if m == 0:
        return 1.0
    if m <= n ** 1.5:
        return _clamp_rate(m ** (-1 / 3), n)
    return _clamp_rate(n ** (-1 / 2), n)


def _key(u: int, v: int) -> Tuple[int, int]:
    return (u, v) if u < v else (v, u)


class PairTable:
    """Sparse table keyed by unordered pair; absent keys read as INF"""

    def __init__(self, values: Optional[Dict[Tuple[int, int], int]] = None):
        self._values: Dict[Tuple[int, int], int] = values or {}

    def lower(self, u: int, v: int, value: int) -> None:
        key = _key(u, v)
        if value < self._values.get(key, INF):
            self._values[key] = value

    def get(self, u: int, v: int) -> int:
        return self._values.get(_key(u, v), INF)

    def __contains__(self, pair: Tuple[int, int]) -> bool:
        return _key(*pair) in self._values

    def __len__(self) -> int:
        return len(self._values)

    def items(self) -> Iterator[Tuple[Tuple[int, int], int]]:
        return iter(sorted(self._values.items()))


AdjacentTable = PairTable
OverlapTable = PairTable


def adjacent_via_edges(g: Graph, bs: BunchStructure) -> AdjacentTable:
    """min over edges {u', v'} with u' in B(u), v' in B(v) of d(u, u') + w(u', v') + d(v', v)"""
    table = AdjacentTable()
    for a, b, w in g.edges:
        for u_side, v_side in ((a, b), (b, a)):
            cluster_v = bs.cluster(v_side).items()
            for u, du in bs.cluster(u_side).items():
                head = du + w
                for v, dv in cluster_v:
                    if u != v:
                        table.lower(u, v, head + dv)
    logger.debug(f"adjacent_via_edges: {len(table)} pairs from {g.m} edges")
    return table


def _bunch_frontier(g: Graph, bunch: Dict[int, int]) -> Dict[int, int]:
    """min over u' in B(u) of d(u, u') + w(u', v'), for each v' next to the bunch"""
    frontier: Dict[int, int] = {}
    for x, dx in bunch.items():
        for y, w in g.adjacency[x]:
            if dx + w < frontier.get(y, INF):
                frontier[y] = dx + w
    return frontier


def adjacent_via_bunch_dijkstra(g: Graph, bs: BunchStructure) -> EstimateMatrix:
    """δ_adjacent for every pair; INF where no edge joins the two bunches.

    Per source u the graph has a star of edges u -> v' weighted by the bunch
    frontier, then bunch edges v' -> v with v' in B(v). Both layers are acyclic
    so Dijkstra on it settles in one relaxation per layer.
    """
    clusters = [
        (np.fromiter(c.keys(), dtype=np.int64, count=len(c)), np.fromiter(c.values(), dtype=np.int64, count=len(c)))
        for c in bs.clusters
    ]

    def row_for(u: int) -> np.ndarray:
        row = np.full(g.n, INF, dtype=np.int64)
        for v_prime, head in _bunch_frontier(g, bs.bunch(u)).items():
            ids, dists = clusters[v_prime]
            np.minimum.at(row, ids, head + dists)
        return row

    entries = np.array(sweep(row_for, list(range(g.n))), dtype=np.int64).reshape(g.n, g.n)
    np.fill_diagonal(entries, 0)
    return EstimateMatrix(entries)


class PivotOracle:
    """Pivot rows from S plus one pair table; every query does the same lookups"""

    kind = ""
    table_name = ""
    contract: Optional[Contract] = None

    def __init__(self, bs: BunchStructure, delta_s: np.ndarray, table: PairTable, eps: Fraction = Fraction(0)):
        self.bs = bs
        self.delta_s = delta_s
        self.table = table
        self.eps = Fraction(eps)
        self.s_index = {s: i for i, s in enumerate(bs.S)}
        self.probes = 0

    @property
    def n(self) -> int:
        return self.bs.n

    def _via_pivot(self, a: int, b: int) -> int:
        piv = self.bs.pivot[a]
        head = self.bs.pivot_dist[a]
        row = self.s_index.get(piv)
        self.probes += 3
        if row is None or head == INF:
            return INF
        tail = int(self.delta_s[row, b])
        return INF if tail == INF else head + tail

    def _check(self, u: int, v: int) -> None:
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ContractError(f"query ({u}, {v}) outside 0..{self.n - 1}")

    def explain(self, u: int, v: int) -> Dict[str, int]:
        self._check(u, v)
        if u == v:
            return {"via_pivot_u": 0, "via_pivot_v": 0, self.table_name: 0, "estimate": 0}
        parts = {
            "via_pivot_u": self._via_pivot(u, v),
            "via_pivot_v": self._via_pivot(v, u),
            self.table_name: self.table.get(u, v),
        }
        self.probes += 1
        parts["estimate"] = min(parts.values())
        return parts

    def query(self, u: int, v: int) -> int:
        return self.explain(u, v)["estimate"]

    @property
    def guarantee(self) -> str:
        return str(self.contract)

    @property
    def size_words(self) -> int:
        """|S| * n pivot entries plus stored pairs"""
        return int(self.delta_s.size) + len(self.table)


class DistanceOracle2(PivotOracle):
    kind = KIND_TWO
    table_name = "adjacent"
    contract = Contract(Fraction(2), 0)


class DistanceOracle2W(PivotOracle):
    """d <= answer <= 2d + W_{u,v}"""

    kind = KIND_TWO_W
    table_name = "overlap"

    @property
    def guarantee(self) -> str:
        # additive term is the heaviest edge on a shortest u-v path, no constant contract
        return "(2, W_uv)"


def _pivot_rows(g: Graph, bs: BunchStructure, eps: Fraction = Fraction(0)) -> np.ndarray:
    return mssp(g, list(bs.S), eps)


def build_oracle_2(g: Graph, p: Optional[float] = None, seed: int = 0) -> DistanceOracle2:
    p = default_p_oracle_2(g.n) if p is None else p
    bs = compute_bunches(g, p, seed)
    oracle = DistanceOracle2(bs, _pivot_rows(g, bs), adjacent_via_edges(g, bs))
    logger.info(f"oracle-2 n={g.n} m={g.m} p={p:.4f}: |S|={len(bs.S)}, adjacent pairs {len(oracle.table)}")
    return oracle


def query_oracle_2(o: DistanceOracle2, u: int, v: int) -> int:
    return o.query(u, v)


def overlap_table(bs: BunchStructure) -> OverlapTable:
    """min over w in B(u) with v in C(w) of d(u, w) + d(w, v)"""
    table = OverlapTable()
    for u in range(bs.n):
        for w, du in bs.bunch(u).items():
            for v, dv in bs.cluster(w).items():
                if u != v:
                    table.lower(u, v, du + dv)
    return table


def build_oracle_2W(g: Graph, p: Optional[float] = None, seed: int = 0, space: bool = False) -> DistanceOracle2W:
    p = default_p_oracle_2W(g.n, g.m, space) if p is None else p
    bs = compute_bunches(g, p, seed)
    oracle = DistanceOracle2W(bs, _pivot_rows(g, bs), overlap_table(bs))
    logger.info(f"oracle-2W n={g.n} m={g.m} p={p:.4f}: |S|={len(bs.S)}, overlap pairs {len(oracle.table)}")
    return oracle


def query_oracle_2W(o: DistanceOracle2W, u: int, v: int) -> int:
    return o.query(u, v)


def pivot_estimates(bs: BunchStructure, delta_s: np.ndarray) -> np.ndarray:
    """min(d(u, p(u)) + δ_S(p(u), v), d(v, p(v)) + δ_S(p(v), u)) for all pairs"""
    n = bs.n
    s_index = {s: i for i, s in enumerate(bs.S)}
    rows = np.array([s_index.get(piv, -1) for piv in bs.pivot], dtype=np.int64)
    tails = np.full((n, n), INF, dtype=np.int64)
    has_pivot = rows >= 0
    tails[has_pivot] = delta_s[rows[has_pivot]]
    via_u = saturating_add(np.asarray(bs.pivot_dist, dtype=np.int64)[:, None], tails)
    return np.minimum(via_u, via_u.T)


def dense_apsp(g: Graph, p: Optional[float] = None, eps: Fraction = Fraction(0), seed: int = 0) -> EstimateMatrix:
    """(2+eps)-approximate APSP; p defaults to n^(-1/2)"""
    eps = Fraction(eps)
    if eps < 0:
        raise ContractError(f"eps must be >= 0, got {eps}")
    if p is None:
        p = _clamp_rate(g.n ** -0.5, g.n) if g.n else 1.0
    bs = compute_bunches(g, p, seed)
    entries = pivot_estimates(bs, mssp(g, list(bs.S), eps))
    np.minimum(entries, adjacent_via_bunch_dijkstra(g, bs).entries, out=entries)
    np.fill_diagonal(entries, 0)
    logger.info(f"dense_apsp n={g.n} p={p:.4f} eps={eps}: |S|={len(bs.S)}, max bunch {bs.max_bunch}")
    return EstimateMatrix(entries, Contract(2 + eps, 0))


def save_oracle(o: PivotOracle, path: Union[str, Path]) -> None:
    """magic, version, kind, eps, bunch blob, pivot rows, key-sorted pair table"""
    keys = list(o.table.items())
    parts = [
        _ORACLE_HEADER.pack(ORACLE_MAGIC, ORACLE_VERSION, _KIND_CODES[o.kind], float(o.eps)),
        o.bs.to_bytes(),
        np.ascontiguousarray(o.delta_s, dtype="<i8").tobytes(),
        _COUNT.pack(len(keys)),
        np.asarray([k[0][0] for k in keys], dtype="<i8").tobytes(),
        np.asarray([k[0][1] for k in keys], dtype="<i8").tobytes(),
        np.asarray([k[1] for k in keys], dtype="<i8").tobytes(),
    ]
    Path(path).write_bytes(b"".join(parts))


def load_oracle(path: Union[str, Path]) -> PivotOracle:
    reader = BlobReader(Path(path).read_bytes(), str(path))
    magic, version, kind_code, eps = reader.unpack(_ORACLE_HEADER)
    if magic != ORACLE_MAGIC:
        raise BlobFormatError(f"{path}: not an oracle blob (magic {magic!r})")
    if version != ORACLE_VERSION:
        raise BlobFormatError(f"{path}: oracle format version {version}, this build reads {ORACLE_VERSION}")
    kinds = {code: kind for kind, code in _KIND_CODES.items()}
    if kind_code not in kinds:
        raise BlobFormatError(f"{path}: unknown oracle kind {kind_code}")
    bs = BunchStructure.read_from(reader)
    delta_s = reader.array(len(bs.S) * bs.n).reshape(len(bs.S), bs.n)
    (count,) = reader.unpack(_COUNT)
    us, vs, values = reader.array(count).tolist(), reader.array(count).tolist(), reader.array(count).tolist()
    if not reader.exhausted:
        raise BlobFormatError(f"{path}: trailing bytes after the pair table")
    table = PairTable({(u, v): value for u, v, value in zip(us, vs, values)})
    cls = DistanceOracle2 if kinds[kind_code] == KIND_TWO else DistanceOracle2W
    return cls(bs, delta_s, table, Fraction(eps).limit_denominator())
