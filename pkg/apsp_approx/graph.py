"""
Graph model, file I/O, seeded generators and exact shortest paths

Available operations:
1. load_graph / write_graph - "n m" + "u v [w]" text format
2. gen_gnp - seeded Erdos-Renyi G(n, p) with uniform integer weights
3. dijkstra / bfs / seeded_dijkstra / nearest_pivots - single and multi-source sweeps
4. exact_apsp - n Dijkstra runs, the verification oracle
5. degree_filtered_subgraph - keep edges with a light endpoint
6. write_matrix / read_matrix - EstimateMatrix binary and text codecs

Distances are non-negative integers; INF = 2**63 - 1 marks unreachable pairs and
every addition saturates at INF.
"""

import heapq
import logging
import math
import struct
from bisect import bisect_left
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, TypeVar, Union

import numpy as np

from .config import get_config
from .errors import BlobFormatError, ContractError, DimensionError, GraphFormatError

logger = logging.getLogger(__name__)

INF = 2 ** 63 - 1
W_MAX = 2 ** 40
MATRIX_MAGIC = b"APSPESTM"
TEXT_MATRIX_LIMIT = 4096

Adjacency = Tuple[Tuple[Tuple[int, int], ...], ...]
T = TypeVar("T")


def saturating_add(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Entrywise a + b over int64 arrays where INF absorbs"""
    a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
    finite = (a != INF) & (b != INF)
    out = np.full(a.shape, INF, dtype=np.int64)
    np.add(a, b, out=out, where=finite)
    return out


def nearest_int(x: float) -> int:
    """Round half up; logarithms are rounded to the closest integer"""
    return math.floor(x + 0.5)


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """PCG64 generator for (seed, stream...) - the only PRNG used in the package"""
    words = [int(seed) & (2 ** 64 - 1)] + [int(s) & (2 ** 64 - 1) for s in stream]
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(words)))


def sweep(fn: Callable[[int], T], sources: Sequence[int]) -> List[T]:
    """Run fn over independent sources, capped by APSP_THREADS"""
    workers = min(get_config().worker_count, len(sources))
    if workers <= 1:
        return [fn(s) for s in sources]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, sources))


@dataclass(frozen=True)
class Contract:
    """Declared (mult, add) stretch: d <= estimate <= mult * d + add"""

    mult: Fraction
    add: int = 0

    def __post_init__(self):
        object.__setattr__(self, "mult", Fraction(self.mult))
        object.__setattr__(self, "add", int(self.add))

    @classmethod
    def of(cls, mult: Union[int, float, str, Fraction], add: int = 0) -> "Contract":
        return cls(Fraction(str(mult)) if isinstance(mult, float) else Fraction(mult), int(add))

    def bound(self, d: int) -> Fraction:
        return self.mult * d + self.add

    def __str__(self) -> str:
        return f"({self.mult}, {self.add})"


EXACT = Contract(Fraction(1), 0)


class Graph:
    """Immutable undirected graph with non-negative integer weights.

    Parallel edges are collapsed to their minimum weight and self-loops dropped
    at construction. Adjacency is one immutable row per vertex: a tuple of
    (neighbor, weight) pairs sorted by neighbor id, so `weight` is a bisect.
    Searches iterate the rows directly; nothing keeps offset/target arrays.
    """

    __slots__ = ("_n", "_adjacency", "_degrees", "_edges", "_max_weight")

    def __init__(self, n: int, adjacency: Adjacency):
        self._n = n
        self._adjacency = adjacency
        self._degrees = tuple(len(nbrs) for nbrs in adjacency)
        self._edges = tuple(
            (u, v, w) for u, nbrs in enumerate(adjacency) for v, w in nbrs if u < v
        )
        self._max_weight = max((w for _, _, w in self._edges), default=0)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int, int]]) -> "Graph":
        if n < 0:
            raise ContractError(f"vertex count must be non-negative, got {n}")
        best: Dict[Tuple[int, int], int] = {}
        for u, v, w in edges:
            u, v, w = int(u), int(v), int(w)
            if not (0 <= u < n and 0 <= v < n):
                raise ContractError(f"edge ({u}, {v}) has a vertex id outside 0..{n - 1}")
            if w < 0:
                raise ContractError(f"negative weight {w} on edge ({u}, {v})")
            if w > W_MAX:
                raise ContractError(f"weight {w} on edge ({u}, {v}) exceeds 2^40")
            if u == v:
                continue
            key = (u, v) if u < v else (v, u)
            if key not in best or w < best[key]:
                best[key] = w
        nbrs: List[List[Tuple[int, int]]] = [[] for _ in range(n)]
        for (u, v), w in best.items():
            nbrs[u].append((v, w))
            nbrs[v].append((u, w))
        return cls(n, tuple(tuple(sorted(lst)) for lst in nbrs))

    @property
    def n(self) -> int:
        return self._n

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> Tuple[Tuple[int, int, int], ...]:
        """Each undirected edge once, as (u, v, w) with u < v"""
        return self._edges

    @property
    def adjacency(self) -> Adjacency:
        return self._adjacency

    @property
    def degrees(self) -> Tuple[int, ...]:
        return self._degrees

    @property
    def max_weight(self) -> int:
        return self._max_weight

    @property
    def is_unweighted(self) -> bool:
        return all(w == 1 for _, _, w in self._edges)

    def neighbors(self, u: int) -> Tuple[Tuple[int, int], ...]:
        return self._adjacency[u]

    def weight(self, u: int, v: int) -> Optional[int]:
        """Weight of edge {u, v}, None when absent"""
        nbrs = self._adjacency[u]
        i = bisect_left(nbrs, (v, -1))
        if i < len(nbrs) and nbrs[i][0] == v:
            return nbrs[i][1]
        return None

    def require_unweighted(self, routine: str) -> None:
        if not self.is_unweighted:
            raise ContractError(f"{routine} requires an unweighted graph (all weights 1)")

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={self.m}, max_weight={self._max_weight})"


@dataclass(frozen=True)
class DistanceVector:
    """Distances from one source; INF for unreachable vertices"""

    source: int
    dist: Tuple[int, ...]

    def __getitem__(self, v: int) -> int:
        return self.dist[v]

    def __len__(self) -> int:
        return len(self.dist)


class EstimateMatrix:
    """Dense n x n table of distance estimates with its declared contract"""

    __slots__ = ("n", "entries", "contract")

    def __init__(self, entries: np.ndarray, contract: Optional[Contract] = None):
        entries = np.asarray(entries, dtype=np.int64)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise DimensionError(f"estimate matrix must be square, got shape {entries.shape}")
        self.n = entries.shape[0]
        self.entries = entries
        self.contract = contract

    @classmethod
    def unreachable(cls, n: int, contract: Optional[Contract] = None) -> "EstimateMatrix":
        entries = np.full((n, n), INF, dtype=np.int64)
        np.fill_diagonal(entries, 0)
        return cls(entries, contract)

    def __getitem__(self, key: Tuple[int, int]) -> int:
        return int(self.entries[key])

    def combine(self, other: "EstimateMatrix", contract: Optional[Contract] = None) -> "EstimateMatrix":
        """Entrywise minimum of two estimate tables"""
        if other.n != self.n:
            raise DimensionError(f"cannot combine {self.n}x{self.n} with {other.n}x{other.n}")
        return EstimateMatrix(np.minimum(self.entries, other.entries), contract or self.contract)

    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.entries, self.entries.T))

    def finite_count(self) -> int:
        return int(np.count_nonzero(self.entries != INF))

    def __repr__(self) -> str:
        return f"EstimateMatrix(n={self.n}, contract={self.contract})"


def load_graph(path: Union[str, Path]) -> Graph:
    """Parse the "n m" header plus m edge lines "u v [w]" (w defaults to 1)"""
    lines = Path(path).read_text().splitlines()
    header_seen = False
    n = m = 0
    edges: List[Tuple[int, int, int]] = []
    for line_no, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if not header_seen:
            if len(parts) != 2:
                raise GraphFormatError(line_no, f"expected header 'n m', got {line!r}")
            n, m = _parse_ints(parts, line_no)
            if n < 0 or m < 0:
                raise GraphFormatError(line_no, "n and m must be non-negative")
            header_seen = True
            continue
        if len(parts) not in (2, 3):
            raise GraphFormatError(line_no, f"expected 'u v [w]', got {line!r}")
        values = _parse_ints(parts, line_no)
        u, v = values[0], values[1]
        w = values[2] if len(values) == 3 else 1
        if u < 0 or v < 0 or u >= n or v >= n:
            raise GraphFormatError(line_no, f"vertex id out of range 0..{n - 1}")
        if w < 0:
            raise GraphFormatError(line_no, "negative weight")
        if w > W_MAX:
            raise GraphFormatError(line_no, "weight exceeds 2^40")
        edges.append((u, v, w))
    if not header_seen:
        raise GraphFormatError(1, "missing header 'n m'")
    if len(edges) != m:
        raise GraphFormatError(len(lines), f"header announces {m} edges, found {len(edges)}")
    g = Graph.from_edges(n, edges)
    logger.info(f"Loaded {path}: n={g.n}, m={g.m} ({m - g.m} duplicate or loop lines collapsed)")
    return g


def _parse_ints(parts: Sequence[str], line_no: int) -> List[int]:
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise GraphFormatError(line_no, f"non-integer token in {' '.join(parts)!r}") from None


def format_graph(g: Graph) -> str:
    out = [f"{g.n} {g.m}"]
    out.extend(f"{u} {v} {w}" for u, v, w in g.edges)
    return "\n".join(out) + "\n"


def write_graph(g: Graph, path: Union[str, Path]) -> None:
    Path(path).write_text(format_graph(g))


def gen_gnp(n: int, p_edge: float, w_max: int, seed: int) -> Graph:
    """G(n, p_edge) with weights uniform on [1, w_max]; reproducible given seed"""
    if not 0.0 <= p_edge <= 1.0:
        raise ContractError(f"p_edge must lie in [0, 1], got {p_edge}")
    if w_max < 1:
        raise ContractError(f"w_max must be >= 1, got {w_max}")
    if n < 0:
        raise ContractError(f"n must be non-negative, got {n}")
    rng = make_rng(seed)
    rows, cols = np.triu_indices(n, k=1)
    keep = rng.random(rows.size) < p_edge
    rows, cols = rows[keep], cols[keep]
    weights = rng.integers(1, w_max + 1, size=rows.size, dtype=np.int64)
    return Graph.from_edges(n, zip(rows.tolist(), cols.tolist(), weights.tolist()))


def seeded_dijkstra(adjacency: Adjacency, seeds: Mapping[int, int]) -> List[int]:
    """Dijkstra from a virtual source with star edges (v, seeds[v]).

    This is Dijkstra from s on (V, E ∪ {s} x V) when seeds holds w(s, v).
    """
    dist = [INF] * len(adjacency)
    heap = []
    for v, d in seeds.items():
        if d < dist[v]:
            dist[v] = d
            heap.append((d, v))
    heapq.heapify(heap)
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        for v, w in adjacency[u]:
            nd = d + w
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist


def dijkstra(g: Graph, src: int) -> DistanceVector:
    if not 0 <= src < g.n:
        raise ContractError(f"source {src} outside 0..{g.n - 1}")
    return DistanceVector(src, tuple(seeded_dijkstra(g.adjacency, {src: 0})))


def bfs(g: Graph, src: int) -> DistanceVector:
    g.require_unweighted("bfs")
    if not 0 <= src < g.n:
        raise ContractError(f"source {src} outside 0..{g.n - 1}")
    dist = [INF] * g.n
    dist[src] = 0
    queue = deque([src])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for v, _ in g.adjacency[u]:
            if dist[v] == INF:
                dist[v] = du
                queue.append(v)
    return DistanceVector(src, tuple(dist))


def nearest_pivots(g: Graph, sources: Iterable[int]) -> Tuple[List[int], List[int]]:
    """d(u, S) and p(u) for every u; equidistant pivots resolve to the smallest id.

    Members of S are their own pivot, also across zero-weight edges.
    Vertices that cannot reach S get distance INF and pivot -1.
    """
    dist = [INF] * g.n
    pivot = [-1] * g.n
    members = set(sources)
    heap = []
    for s in sorted(members):
        dist[s], pivot[s] = 0, s
        heap.append((0, s, s))
    heapq.heapify(heap)
    adjacency = g.adjacency
    while heap:
        d, piv, u = heapq.heappop(heap)
        if d > dist[u] or (d == dist[u] and piv > pivot[u]):
            continue
        for v, w in adjacency[u]:
            if v in members:
                continue
            nd = d + w
            if nd < dist[v] or (nd == dist[v] and piv < pivot[v]):
                dist[v], pivot[v] = nd, piv
                heapq.heappush(heap, (nd, piv, v))
    return dist, pivot


def exact_apsp(g: Graph) -> EstimateMatrix:
    """Exact distances by one Dijkstra per source"""
    rows = sweep(lambda s: seeded_dijkstra(g.adjacency, {s: 0}), list(range(g.n)))
    entries = np.array(rows, dtype=np.int64).reshape(g.n, g.n)
    return EstimateMatrix(entries, EXACT)


def degree_filtered_subgraph(g: Graph, threshold: int) -> Graph:
    """Same vertices; keep an edge iff an endpoint has degree <= threshold in g"""
    if threshold < 0:
        raise ContractError(f"threshold must be >= 0, got {threshold}")
    deg = g.degrees
    kept = [(u, v, w) for u, v, w in g.edges if deg[u] <= threshold or deg[v] <= threshold]
    return Graph.from_edges(g.n, kept)


def write_matrix(matrix: EstimateMatrix, path: Union[str, Path], fmt: str = "bin") -> None:
    """Binary: "APSPESTM" + n (u64 LE) + row-major u64 LE values. Text: "u v value" triples."""
    if fmt == "bin":
        header = MATRIX_MAGIC + struct.pack("<Q", matrix.n)
        Path(path).write_bytes(header + matrix.entries.astype("<u8").tobytes())
        return
    if fmt != "text":
        raise ContractError(f"unknown matrix format {fmt!r}")
    if matrix.n > TEXT_MATRIX_LIMIT:
        raise ContractError(f"text output refused for n={matrix.n} > {TEXT_MATRIX_LIMIT}; use --format bin")
    with open(path, "w") as fh:
        for u in range(matrix.n):
            row = matrix.entries[u]
            for v in range(matrix.n):
                value = int(row[v])
                fh.write(f"{u} {v} {'inf' if value == INF else value}\n")


def read_matrix(path: Union[str, Path]) -> EstimateMatrix:
    """Read either codec; the format is sniffed from the magic bytes"""
    data = Path(path).read_bytes()
    if data[:8] == MATRIX_MAGIC:
        if len(data) < 16:
            raise BlobFormatError(f"{path}: truncated header")
        (n,) = struct.unpack("<Q", data[8:16])
        body = data[16:]
        if len(body) != 8 * n * n:
            raise BlobFormatError(f"{path}: expected {8 * n * n} payload bytes, found {len(body)}")
        entries = np.frombuffer(body, dtype="<u8").astype(np.int64).reshape(n, n)
        return EstimateMatrix(entries)
    return _read_text_matrix(data.decode(), path)


def _read_text_matrix(text: str, path) -> EstimateMatrix:
    triples = []
    n = 0
    for line_no, raw in enumerate(text.splitlines(), start=1):
        parts = raw.split()
        if not parts:
            continue
        if len(parts) != 3:
            raise GraphFormatError(line_no, f"expected 'u v value' in {path}")
        try:
            u, v = int(parts[0]), int(parts[1])
            value = INF if parts[2] == "inf" else int(parts[2])
        except ValueError:
            raise GraphFormatError(line_no, f"bad matrix triple {raw!r}") from None
        triples.append((u, v, value))
        n = max(n, u + 1, v + 1)
    entries = np.full((n, n), INF, dtype=np.int64)
    for u, v, value in triples:
        entries[u, v] = value
    return EstimateMatrix(entries)
