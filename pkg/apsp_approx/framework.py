"""
Degree-layered APSP framework for unweighted graphs

Available operations:
1. framework_apsp(g, cfg) - Algorithm A on the light-edge subgraph plus Algorithm B per degree level
2. star_dijkstra_B(dist_s, n) - exact paths through a set, no min-plus products
3. two_approx_unweighted(g, r, eps) - (2+eps) with bk as A and min-plus as B
4. two_approx_combinatorial(g) - 2-approximation, purely combinatorial
5. near_additive_apsp(g, k, eps, r) - (1+eps, k) with the additive scheme as A
6. reduce_2eps_to_2(g, delta_2eps, delta_logn) - min(floor(δ), δ') has contract (2, 0)
7. two_approx_apsp(g, r) - the full reduction pipeline

Levels run over i = round((1-r) log2 n) .. ceil(log2 n). Level i hits every vertex
of degree >= 2^i, keeps edges with an endpoint of degree <= 2^(i+1) and feeds the
hit set's distance rows to Algorithm B. Algorithm A sees the edges with an
endpoint of degree <= 2^(i_min), so every heavier vertex falls into some level.
Every edge also bounds its own pair, which settles d = 1.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from .additive import additive_apsp_k, max_additive_k
from .bk import bk_apsp
from .errors import ContractError
from .graph import (
    INF,
    Contract,
    EstimateMatrix,
    Graph,
    bfs,
    degree_filtered_subgraph,
    nearest_int,
    saturating_add,
    sweep,
)
from .hitting import hit
from .minplus import MinPlusMatrix, paths_through_set

logger = logging.getLogger(__name__)


def _fraction(x) -> Fraction:
    return Fraction(str(x)) if isinstance(x, float) else Fraction(x)


class FrameworkConfig(BaseModel):
    """r, the A/B routine identifiers and the parameters forwarded to them"""

    model_config = ConfigDict(frozen=True)

    r: float = 0.5
    algo_a: str = "bk"
    algo_b: str = "star-dijkstra"
    eps: float = 0.0
    k: int = 2
    seed: int = 0

    @field_validator("r")
    @classmethod
    def r_in_unit_interval(cls, r: float) -> float:
        if not 0 <= r <= 1:
            raise ValueError(f"r must lie in [0, 1], got {r}")
        return r

    @field_validator("eps")
    @classmethod
    def eps_non_negative(cls, eps: float) -> float:
        if eps < 0:
            raise ValueError(f"eps must be >= 0, got {eps}")
        return eps

    @model_validator(mode="after")
    def routines_registered(self) -> "FrameworkConfig":
        if self.algo_a not in ALGORITHMS_A:
            raise ValueError(f"unknown Algorithm A {self.algo_a!r}; registered: {sorted(ALGORITHMS_A)}")
        if self.algo_b not in ALGORITHMS_B:
            raise ValueError(f"unknown Algorithm B {self.algo_b!r}; registered: {sorted(ALGORITHMS_B)}")
        return self

    @property
    def eps_fraction(self) -> Fraction:
        return _fraction(self.eps)

    @property
    def contract_a(self) -> Contract:
        return ALGORITHMS_A[self.algo_a].contract(self)

    @property
    def contract_b(self) -> Contract:
        return ALGORITHMS_B[self.algo_b].contract(self)

    @property
    def contract(self) -> Contract:
        """Covers both cases: (mult_A, add_A) and (mult_B, add_B + 2 mult_B)"""
        a, b = self.contract_a, self.contract_b
        return Contract(max(a.mult, b.mult), max(a.add, b.add + math.ceil(2 * b.mult)))


@dataclass(frozen=True)
class Routine:
    name: str
    contract: Callable[[FrameworkConfig], Contract]
    run: Callable


def star_dijkstra_B(dist_s: np.ndarray, n: int) -> EstimateMatrix:
    """min over a in S of dist_s[a][u] + dist_s[a][v].

    Dijkstra from u on the star multigraph (V, S x V) reaches v through one
    pivot, so each source row is the broadcast min over the pivot rows.
    """
    dist_s = np.asarray(dist_s, dtype=np.int64).reshape(-1, n)
    entries = np.full((n, n), INF, dtype=np.int64)
    for row in dist_s:
        np.minimum(entries, saturating_add(row[:, None], row[None, :]), out=entries)
    np.fill_diagonal(entries, 0)
    return EstimateMatrix(entries, Contract(1, 0))


def _run_bk(g_sparse: Graph, cfg: FrameworkConfig) -> EstimateMatrix:
    return bk_apsp(g_sparse, r=0.5, eps=Fraction(0), seed=cfg.seed)


def _run_additive(g_sparse: Graph, cfg: FrameworkConfig) -> EstimateMatrix:
    # (1, k') with k' <= k already meets (1, k)
    return additive_apsp_k(g_sparse, min(cfg.k, max_additive_k(g_sparse.n)))


def _run_minplus(dist_s: np.ndarray, cfg: FrameworkConfig) -> np.ndarray:
    return paths_through_set(MinPlusMatrix(dist_s.T), cfg.eps_fraction).entries


def _run_star(dist_s: np.ndarray, cfg: FrameworkConfig) -> np.ndarray:
    return star_dijkstra_B(dist_s, dist_s.shape[1]).entries


ALGORITHMS_A: Dict[str, Routine] = {
    "bk": Routine("bk", lambda cfg: Contract(2, 0), _run_bk),
    "additive": Routine("additive", lambda cfg: Contract(1, cfg.k), _run_additive),
}

ALGORITHMS_B: Dict[str, Routine] = {
    "minplus": Routine("minplus", lambda cfg: Contract(1 + cfg.eps_fraction, 0), _run_minplus),
    "star-dijkstra": Routine("star-dijkstra", lambda cfg: Contract(1, 0), _run_star),
}


def level_range(n: int, r: float) -> range:
    if n <= 1:
        return range(0)
    log_n = math.log2(n)
    return range(nearest_int((1 - r) * log_n), math.ceil(log_n) + 1)


def framework_apsp(g: Graph, cfg: FrameworkConfig, contract: Optional[Contract] = None) -> EstimateMatrix:
    g.require_unweighted("framework_apsp")
    n = g.n
    levels = level_range(n, cfg.r)
    if n <= 1:
        return EstimateMatrix.unreachable(n, contract or cfg.contract)

    light = 2 ** levels.start
    sparse = degree_filtered_subgraph(g, light)
    estimate = ALGORITHMS_A[cfg.algo_a].run(sparse, cfg).entries.copy()
    logger.debug(f"framework A={cfg.algo_a}: {sparse.m} of {g.m} edges below degree {light}")

    through_set = ALGORITHMS_B[cfg.algo_b].run
    for i in levels:
        hitting = hit(g, min(2 ** i, n))
        if not hitting.members:
            continue
        level_graph = degree_filtered_subgraph(g, 2 ** (i + 1))
        rows = sweep(lambda s: bfs(level_graph, s).dist, list(hitting.members))
        dist_s = np.array(rows, dtype=np.int64).reshape(len(rows), n)
        np.minimum(estimate, through_set(dist_s, cfg), out=estimate)
        logger.debug(f"framework level {i}: |S_i|={len(hitting.members)}, {level_graph.m} edges")

    for u, v, w in g.edges:
        if w < estimate[u, v]:
            estimate[u, v] = estimate[v, u] = w
    np.fill_diagonal(estimate, 0)
    logger.info(f"framework_apsp n={n} r={cfg.r} A={cfg.algo_a} B={cfg.algo_b}: levels {levels.start}..{levels.stop - 1}")
    return EstimateMatrix(estimate, contract or cfg.contract)


def two_approx_unweighted(
    g: Graph,
    r: float = 0.468,
    eps: Union[Fraction, float] = Fraction(1, 10),
    seed: int = 0,
) -> EstimateMatrix:
    """(2+eps)-approximate APSP; B multiplies with eps/2"""
    eps = _fraction(eps)
    if eps <= 0:
        raise ContractError(f"eps must be > 0, got {eps}")
    cfg = FrameworkConfig(r=r, algo_a="bk", algo_b="minplus", eps=float(eps / 2), seed=seed)
    return framework_apsp(g, cfg, Contract(2 + eps, 0))


def two_approx_combinatorial(g: Graph, seed: int = 0) -> EstimateMatrix:
    """2-approximate APSP without any min-plus product"""
    cfg = FrameworkConfig(r=0.25, algo_a="bk", algo_b="star-dijkstra", eps=0.0, seed=seed)
    return framework_apsp(g, cfg, Contract(2, 0))


def near_additive_apsp(
    g: Graph,
    k: int,
    eps: Union[Fraction, float],
    r: float = 0.5,
    seed: int = 0,
) -> EstimateMatrix:
    """(1+eps, k)-approximate APSP"""
    if k < 2 or k % 2:
        raise ContractError(f"k must be an even integer >= 2, got {k}")
    eps = _fraction(eps)
    if eps <= 0:
        raise ContractError(f"eps must be > 0, got {eps}")
    cfg = FrameworkConfig(r=r, algo_a="additive", algo_b="minplus", eps=float(eps / 2), k=k, seed=seed)
    return framework_apsp(g, cfg, Contract(1 + eps, k))


def _floor_entries(values) -> np.ndarray:
    values = np.asarray(values)
    if values.dtype.kind in "iu":
        return values.astype(np.int64)
    floored = [INF if x == INF or x == float("inf") else math.floor(x) for x in values.ravel().tolist()]
    return np.array(floored, dtype=np.int64).reshape(values.shape)


def reduce_2eps_to_2(
    g: Graph,
    delta_2eps: Union[EstimateMatrix, np.ndarray],
    delta_logn: EstimateMatrix,
    contract_2eps: Optional[Contract] = None,
) -> EstimateMatrix:
    """min(floor(δ), δ') where δ is (2+eps, 0) and δ' is (1, L) with eps * L <= 1.

    Rational estimates are accepted as an array together with their contract.
    """
    g.require_unweighted("reduce_2eps_to_2")
    if isinstance(delta_2eps, EstimateMatrix):
        contract_2eps = contract_2eps or delta_2eps.contract
        raw = delta_2eps.entries
    else:
        raw = delta_2eps
    contract_logn = delta_logn.contract
    if contract_2eps is None or contract_logn is None:
        raise ContractError("both inputs must declare their contracts")
    if contract_2eps.add != 0 or contract_2eps.mult < 2:
        raise ContractError(f"first input must be (2+eps, 0), got {contract_2eps}")
    if contract_logn.mult != 1:
        raise ContractError(f"second input must be purely additive, got {contract_logn}")
    eps = contract_2eps.mult - 2
    if eps * contract_logn.add > 1:
        raise ContractError(f"eps={eps} exceeds 1/{contract_logn.add}; the floor no longer recovers 2d")

    floored = _floor_entries(raw)
    if floored.shape != delta_logn.entries.shape:
        raise ContractError(f"shape mismatch {floored.shape} vs {delta_logn.entries.shape}")
    return EstimateMatrix(np.minimum(floored, delta_logn.entries), Contract(2, 0))


def reduction_parameter(n: int) -> int:
    """Smallest even L >= log2 n, at least 2"""
    if n <= 2:
        return 2
    L = math.ceil(math.log2(n))
    return L + (L % 2)


def two_approx_apsp(g: Graph, r: float = 0.468, seed: int = 0) -> EstimateMatrix:
    """2-approximate APSP from a (2 + 1/L) run and a +L run"""
    g.require_unweighted("two_approx_apsp")
    L = min(reduction_parameter(g.n), max_additive_k(g.n))
    coarse = two_approx_unweighted(g, r=r, eps=Fraction(1, L), seed=seed)
    additive = additive_apsp_k(g, L)
    return reduce_2eps_to_2(g, coarse, additive)
