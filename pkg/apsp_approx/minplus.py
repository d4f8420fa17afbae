"""
Distance (min-plus) products

Available operations:
1. exact_minplus - C[i][j] = min_k A[i][k] + B[k][j], INF-saturating
2. approx_minplus - (1+eps)-approximate product by scaling levels over a backend
3. paths_through_set - min over a of distS[u][a] + distS[v][a]

The approximate product encodes every entry x at level l (quantum q = 2^l) as
ceil(x / q) when that fits the window R = ceil(4 / eps), otherwise INF, asks the
backend for the small-integer level product, rescales by q and keeps the
entrywise minimum over levels 0..ceil(log2 W). Rounding is upward, so results
never drop below the exact product.
"""

import logging
import math
import threading
from collections import Counter
from fractions import Fraction
from typing import Optional, Protocol, Union

import numpy as np

from .errors import ContractError, DimensionError
from .graph import INF, saturating_add, sweep

logger = logging.getLogger(__name__)

Rational = Union[int, float, str, Fraction]

# Invocation counts per product kind; the combinatorial pipeline asserts these stay at zero.
MINPLUS_CALLS: Counter = Counter()
_calls_lock = threading.Lock()


def _count(kind: str) -> None:
    with _calls_lock:
        MINPLUS_CALLS[kind] += 1


def window_width(eps: Rational) -> int:
    """R = ceil(4 / eps)"""
    return math.ceil(4 / Fraction(eps))


class MinPlusMatrix:
    """Rectangular matrix over {0..W} and INF"""

    __slots__ = ("entries", "W")

    def __init__(self, entries, W: Optional[int] = None):
        entries = np.array(entries, dtype=np.int64, copy=True)
        if entries.ndim != 2 or entries.shape[0] < 1 or entries.shape[1] < 1:
            raise DimensionError(f"min-plus matrices need both dimensions >= 1, got shape {entries.shape}")
        if np.any(entries < 0):
            raise ContractError("min-plus entries must be non-negative")
        finite = entries[entries != INF]
        largest = int(finite.max()) if finite.size else 0
        if W is None:
            W = largest
        elif largest > W:
            raise ContractError(f"entry {largest} exceeds the declared bound W={W}")
        self.entries = entries
        self.W = int(W)

    @classmethod
    def identity(cls, n: int) -> "MinPlusMatrix":
        entries = np.full((n, n), INF, dtype=np.int64)
        np.fill_diagonal(entries, 0)
        return cls(entries)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def T(self) -> "MinPlusMatrix":
        return MinPlusMatrix(self.entries.T, self.W)

    def __getitem__(self, key) -> int:
        return int(self.entries[key])

    def __eq__(self, other) -> bool:
        return isinstance(other, MinPlusMatrix) and np.array_equal(self.entries, other.entries)

    def __repr__(self) -> str:
        return f"MinPlusMatrix({self.rows}x{self.cols}, W={self.W})"


class MulBackend(Protocol):
    """Multiplies two level-encoded arrays; must equal the naive min-plus product"""

    name: str

    def multiply(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        ...


class NaiveBackend:
    """Cubic min-plus kernel, one broadcast per inner index"""

    name = "naive"

    def multiply(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        out = np.full((a.shape[0], b.shape[1]), INF, dtype=np.int64)
        for k in range(a.shape[1]):
            np.minimum(out, saturating_add(a[:, k, None], b[None, k, :]), out=out)
        return out


NAIVE = NaiveBackend()


def _conformable(a: MinPlusMatrix, b: MinPlusMatrix) -> None:
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")


def exact_minplus(a: MinPlusMatrix, b: MinPlusMatrix) -> MinPlusMatrix:
    _conformable(a, b)
    _count("exact")
    return MinPlusMatrix(NAIVE.multiply(a.entries, b.entries))


def _encode(entries: np.ndarray, level: int, window: int) -> np.ndarray:
    finite = entries != INF
    quantum = 1 << level
    scaled = np.full(entries.shape, INF, dtype=np.int64)
    scaled[finite] = (entries[finite] + (quantum - 1)) >> level
    scaled[scaled > window] = INF
    return scaled


def approx_minplus(
    a: MinPlusMatrix,
    b: MinPlusMatrix,
    eps: Rational,
    backend: MulBackend = NAIVE,
) -> MinPlusMatrix:
    """exact <= C <= (1+eps) * exact entrywise; INF exactly where exact is INF.

    A sum whose two terms are both at most R = ceil(4/eps) comes back exact
    from level 0. Larger terms are rounded up to a multiple of 2^level, so identity * B
    reproduces B only while every entry of B is at most R.
    """
    _conformable(a, b)
    eps = Fraction(eps)
    if eps <= 0:
        raise ContractError(f"approx_minplus needs eps > 0, got {eps}")
    _count("approx")

    window = window_width(eps)
    top = max(a.W, b.W, 1)
    levels = list(range(math.ceil(math.log2(top)) + 1))

    def level_product(level: int) -> np.ndarray:
        product = backend.multiply(_encode(a.entries, level, window), _encode(b.entries, level, window))
        finite = product != INF
        product[finite] <<= level
        return product

    out = np.full((a.rows, b.cols), INF, dtype=np.int64)
    for product in sweep(level_product, levels):
        np.minimum(out, product, out=out)
    logger.debug(f"approx_minplus {a.rows}x{a.cols}x{b.cols}: eps={eps}, R={window}, {len(levels)} levels via {backend.name}")
    return MinPlusMatrix(out)


def paths_through_set(
    dist_s: MinPlusMatrix,
    eps: Rational = 0,
    backend: MulBackend = NAIVE,
) -> MinPlusMatrix:
    """C[u][v] = min over a of dist_s[u][a] + dist_s[v][a]; eps = 0 is exact"""
    if Fraction(eps) == 0:
        return exact_minplus(dist_s, dist_s.T)
    return approx_minplus(dist_s, dist_s.T, eps, backend)
