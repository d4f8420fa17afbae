"""End-to-end stretch guarantees over seeded corpora; run with `pytest -m slow`."""

from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from apsp_approx.bk import bk_apsp, build_r_hierarchy
from apsp_approx.bunches import bunch_bound, compute_bunches, pivot_bound
from apsp_approx.framework import near_additive_apsp, two_approx_apsp, two_approx_combinatorial
from apsp_approx.graph import INF, EstimateMatrix, exact_apsp, gen_gnp, make_rng
from apsp_approx.hitting import hit, size_bound
from apsp_approx.minplus import MINPLUS_CALLS, MinPlusMatrix, approx_minplus, exact_minplus
from apsp_approx.verify import audit_stretch, audit_stretch_2w, bottleneck_apsp
from apsp_approx.weighted import build_oracle_2, build_oracle_2W, dense_apsp

pytestmark = pytest.mark.slow

UNWEIGHTED_SHAPES = list(product((50, 100, 200), (0.05, 0.2, 0.5)))
UNWEIGHTED = [(UNWEIGHTED_SHAPES[i % 9], 1000 + i) for i in range(30)]
WEIGHTED = [(40 + 5 * i, 100, 2000 + i) for i in range(20)]
SPARSE = [(100 if i % 2 else 300, 3000 + i) for i in range(20)]


def _unweighted(shape_seed):
    (n, p_edge), seed = shape_seed
    return gen_gnp(n, p_edge, 1, seed), seed


def _sparse(n, seed):
    return gen_gnp(n, 6 / (n - 1), 100, seed)


def _audit(g, estimate, mult, add=0):
    audit = audit_stretch(exact_apsp(g), estimate, mult, add)
    assert audit.violations == 0, audit.first_violation


def _all_queries(oracle, n):
    return EstimateMatrix(np.array([[oracle.query(u, v) for v in range(n)] for u in range(n)], dtype=np.int64))


@pytest.mark.parametrize("shape_seed", UNWEIGHTED, ids=lambda s: f"n{s[0][0]}-p{s[0][1]}-s{s[1]}")
def test_unweighted_two_approximation(shape_seed):
    g, seed = _unweighted(shape_seed)
    _audit(g, two_approx_apsp(g, seed=seed), 2)


@pytest.mark.parametrize("shape_seed", UNWEIGHTED, ids=lambda s: f"n{s[0][0]}-p{s[0][1]}-s{s[1]}")
def test_combinatorial_two_approximation(shape_seed):
    g, seed = _unweighted(shape_seed)
    before = dict(MINPLUS_CALLS)
    estimate = two_approx_combinatorial(g, seed=seed)
    assert dict(MINPLUS_CALLS) == before
    _audit(g, estimate, 2)


@pytest.mark.parametrize("k", [2, 4, 6, 8])
@pytest.mark.parametrize("eps", [Fraction(1, 10), Fraction(1, 2)])
@pytest.mark.parametrize("shape_seed", UNWEIGHTED, ids=lambda s: f"n{s[0][0]}-p{s[0][1]}-s{s[1]}")
def test_near_additive(k, eps, shape_seed):
    g, seed = _unweighted(shape_seed)
    _audit(g, near_additive_apsp(g, k=k, eps=eps, seed=seed), 1 + eps, k)


@pytest.mark.parametrize("n,wmax,seed", WEIGHTED)
def test_dense_weighted(n, wmax, seed):
    g = gen_gnp(n, 0.15, wmax, seed)
    exact = exact_apsp(g)
    for p, eps in product((0.2, 0.4), (Fraction(0), Fraction(1, 4))):
        estimate = dense_apsp(g, p=p, eps=eps, seed=seed)
        assert audit_stretch(exact, estimate, 2 + eps).passed

    bs = compute_bunches(g, 0.2, seed)
    estimate = dense_apsp(g, p=0.2, seed=seed)
    for u in range(n):
        bunch_u = bs.bunch(u)
        for v in range(n):
            d = exact[u, v]
            if d == INF:
                continue
            bunch_v = bs.bunch(v)
            inside = v in bunch_u or any(
                b in bunch_v and du + w + bunch_v[b] == d
                for a, du in bunch_u.items()
                for b, w in g.neighbors(a)
            )
            if inside:
                assert estimate[u, v] == d, (u, v)


@pytest.mark.parametrize("n,seed", SPARSE)
def test_sparse_two_oracle(n, seed):
    g = _sparse(n, seed)
    oracle = build_oracle_2(g, seed=seed)
    assert audit_stretch(exact_apsp(g), _all_queries(oracle, n), 2).passed
    assert oracle.bs.within_bounds()


def test_query_cost_independent_of_n():
    counts = []
    for n in (100, 300):
        oracle = build_oracle_2(_sparse(n, 7), seed=7)
        rng = make_rng(7, n)
        before = oracle.probes
        pairs = [(int(a), int(b)) for a, b in rng.integers(0, n, size=(50, 2)) if a != b]
        for u, v in pairs:
            oracle.query(u, v)
        counts.append((oracle.probes - before) / len(pairs))
    assert counts[0] == counts[1]


@pytest.mark.parametrize("n,seed", SPARSE)
def test_two_w_oracle(n, seed):
    g = _sparse(n, seed)
    oracle = build_oracle_2W(g, seed=seed)
    audit = audit_stretch_2w(exact_apsp(g), _all_queries(oracle, n), bottleneck_apsp(g))
    assert audit.violations == 0, audit.first_violation


@pytest.mark.parametrize("r", [0.0, 0.25, 0.5, 0.75, 1.0])
@pytest.mark.parametrize("n,wmax,seed", WEIGHTED)
def test_parameterized_bk(r, n, wmax, seed):
    g = gen_gnp(n, 0.15, wmax, seed)
    exact = exact_apsp(g)
    h = build_r_hierarchy(g, r, seed)
    estimate = bk_apsp(g, r=r, seed=seed, hierarchy=h)
    assert audit_stretch(exact, estimate, 2).passed
    for u in range(n):
        for v in h.top.bunch(u):
            assert estimate[u, v] == exact[u, v]


def test_approximate_minplus_instances():
    rng = make_rng(2024)
    for case in range(200):
        rows, inner, cols = (int(x) for x in rng.integers(1, 17, size=3))
        top = int(rng.integers(1, 10 ** 4 + 1))
        eps = (Fraction(1, 10), Fraction(1, 4), Fraction(1))[case % 3]
        a = rng.integers(0, top + 1, size=(rows, inner), dtype=np.int64)
        b = rng.integers(0, top + 1, size=(inner, cols), dtype=np.int64)
        a[rng.random(a.shape) < 0.1] = INF
        b[rng.random(b.shape) < 0.1] = INF
        exact = exact_minplus(MinPlusMatrix(a), MinPlusMatrix(b)).entries
        approx = approx_minplus(MinPlusMatrix(a), MinPlusMatrix(b), eps).entries
        assert np.array_equal(exact == INF, approx == INF)
        finite = exact != INF
        assert np.all(approx[finite] >= exact[finite])
        assert np.all(approx[finite] * eps.denominator <= exact[finite] * (eps.denominator + eps.numerator))


@pytest.mark.parametrize("n,p", [(100, 0.1), (200, 0.08), (300, 0.06)])
def test_structural_size_bounds(n, p):
    g = gen_gnp(n, 6 / (n - 1), 50, seed=n)
    bs = compute_bunches(g, p, seed=n)
    assert len(bs.S) <= pivot_bound(n, p)
    assert bs.max_bunch <= bunch_bound(n, p)
    assert bs.max_cluster <= bunch_bound(n, p)
    dense = gen_gnp(n, 0.3, 1, seed=n)
    for s in (2, 8, 32):
        assert len(hit(dense, s)) <= size_bound(n, s)
