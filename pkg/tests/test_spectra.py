import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.linalg import expm

from drg_mnhd import graphs, spectra
from drg_mnhd.errors import NegativeTime, NoConvergence, SameVertex, WrongSpectrumSize
from drg_mnhd.spectra import GridSpec

FIXTURES = ["hypercube3", "johnson63", "icosahedron", "cycle6", "complete4"]


def _expm_heat(g, t):
    return expm(-t * spectra.laplacian(g))


def test_laplacian_small_cases():
    assert spectra.laplacian(graphs.complete(2)).tolist() == [[1, -1], [-1, 1]]
    L = spectra.laplacian(graphs.cycle(3))
    assert np.all(np.diag(L) == 2)
    assert np.all(L[~np.eye(3, dtype=bool)] == -1)
    L = spectra.laplacian(graphs.hypercube(3))
    assert np.all(np.diag(L) == 3)
    assert np.allclose(L.sum(axis=1), 0)


@pytest.mark.parametrize(
    "graph,values,mults",
    [
        (lambda: graphs.complete(2), [0, 2], (1, 1)),
        (lambda: graphs.hypercube(3), [0, 2, 4, 6], (1, 3, 3, 1)),
        (graphs.icosahedron, [0, 5 - math.sqrt(5), 6, 5 + math.sqrt(5)], (1, 3, 5, 3)),
        (lambda: graphs.johnson(6, 3), [0, 6, 10, 12], (1, 5, 9, 5)),
    ],
)
def test_eigendecompose_examples(graph, values, mults):
    d = spectra.decompose_graph(graph())
    assert np.allclose(d.eigenvalues, values, atol=1e-9)
    assert d.multiplicities == mults
    assert sum(d.multiplicities) == d.n


def test_eigenvalues_agree_with_lapack(fixture_graphs, decomps):
    for name in FIXTURES:
        w = np.linalg.eigvalsh(spectra.laplacian(fixture_graphs[name]))
        ours = np.repeat(decomps[name].eigenvalues, decomps[name].multiplicities)
        assert np.abs(np.sort(w) - ours).max() <= 1e-9 * max(1.0, np.abs(w).max())


def test_eigendecompose_rejects_bad_input():
    with pytest.raises(ValueError):
        spectra.eigendecompose(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(ValueError):
        spectra.eigendecompose(np.zeros((2, 3)))


def test_no_convergence_with_zero_sweeps():
    with pytest.raises(NoConvergence):
        spectra.eigendecompose(spectra.laplacian(graphs.cycle(5)), max_sweeps=0)


def test_clustering_threshold():
    groups = spectra.cluster_eigenvalues(np.array([3.0, 1.0, 1.0 + 1e-9, 2.0]))
    assert [sorted(g.tolist()) for g in groups] == [[1, 2], [3], [0]]
    groups = spectra.cluster_eigenvalues(np.array([0.0, 1e-3]))
    assert len(groups) == 2


def test_decomposition_is_immutable(decomps):
    d = decomps["cycle6"]
    with pytest.raises(ValueError):
        d.projections[0][0, 0] = 1.0
    with pytest.raises(ValueError):
        d.eigenvalues[0] = 1.0


@pytest.mark.parametrize("name", FIXTURES)
def test_projection_algebra(decomps, name):
    defects = spectra.projection_defects(decomps[name])
    assert max(defects.values()) <= 1e-9, defects


@pytest.mark.parametrize("name", FIXTURES)
@pytest.mark.parametrize("t", [0.0, 0.1, 1.0, 10.0])
def test_heat_kernel_against_expm(fixture_graphs, decomps, name, t):
    H = spectra.heat_kernel(decomps[name], t)
    assert np.abs(H - _expm_heat(fixture_graphs[name], t)).max() <= 1e-9
    assert np.abs(H.sum(axis=1) - 1).max() <= 1e-9
    assert H.min() >= -1e-9


def test_heat_kernel_special_values():
    d = spectra.decompose_graph(graphs.complete(2))
    assert np.allclose(spectra.heat_kernel(d, 0.0), np.eye(2), atol=1e-12)
    for t in (0.1, 0.5, 3.0):
        assert spectra.heat_kernel(d, t)[0, 1] == pytest.approx((1 - math.exp(-2 * t)) / 2, abs=1e-12)
    big = spectra.heat_kernel(spectra.decompose_graph(graphs.cycle(6)), 200.0)
    assert np.allclose(big, 1 / 6, atol=1e-12)
    with pytest.raises(NegativeTime):
        spectra.heat_kernel(d, -1.0)


@pytest.mark.parametrize("name", FIXTURES)
@pytest.mark.parametrize("s,t", [(0.3, 0.7), (1.0, 1.0)])
def test_semigroup(decomps, name, s, t):
    assert spectra.semigroup_defect(decomps[name], s, t) <= 1e-8


@pytest.mark.parametrize("name", FIXTURES)
def test_constant_diagonal_on_walk_regular(fixture_graphs, decomps, name):
    assert graphs.check_walk_regular(fixture_graphs[name], fixture_graphs[name].vertex_count - 1)
    for t in (0.1, 1.0, 10.0):
        assert spectra.diagonal_spread(decomps[name], t) <= 1e-9


def test_derivative_matches_expm_difference(fixture_graphs, decomps):
    g, d = fixture_graphs["icosahedron"], decomps["icosahedron"]
    t, eps = 0.6, 1e-5
    fd = (_expm_heat(g, t + eps) - _expm_heat(g, t - eps)) / (2 * eps)
    assert np.abs(spectra.heat_kernel_derivative(d, t) - fd).max() <= 1e-8


def test_ratio_r():
    d = spectra.decompose_graph(graphs.complete(2))
    assert spectra.ratio_r(d, 0, 1, 0.0) == pytest.approx(0.0, abs=1e-15)
    for t in (0.2, 1.0, 4.0):
        assert spectra.ratio_r(d, 0, 1, t) == pytest.approx(math.tanh(t), abs=1e-12)
    q3 = spectra.decompose_graph(graphs.hypercube(3))
    assert abs(spectra.ratio_r(q3, 0, 1, 10.0) - 1) <= 1e-3
    with pytest.raises(SameVertex):
        spectra.ratio_r(d, 1, 1, 1.0)
    with pytest.raises(NegativeTime):
        spectra.ratio_r(d, 0, 1, -0.1)


def test_h_two_vertex_closed_form():
    d = spectra.decompose_graph(graphs.complete(2))
    for t in (0.0, 0.3, 2.0):
        assert spectra.h_function(d, 0, 1, t) == pytest.approx(math.exp(-2 * t), rel=1e-12)


@pytest.mark.parametrize("name", FIXTURES)
def test_h_routes_agree(decomps, name):
    d = decomps[name]
    for v in range(1, d.n):
        for t in (0.0, 0.05, 0.5, 2.0, 7.0):
            a, b = spectra.h_function(d, 0, v, t), spectra.h_direct(d, 0, v, t)
            assert abs(a - b) <= 1e-9 * max(1e-3, abs(a), abs(b)) + 1e-15


def test_h_matches_finite_difference_of_expm(fixture_graphs, decomps):
    g, d = fixture_graphs["johnson63"], decomps["johnson63"]
    eps = 1e-5
    for v, t in ((1, 0.2), (5, 0.8), (19, 1.5)):
        r = lambda s: _expm_heat(g, s)[0, v] / _expm_heat(g, s)[0, 0]
        huu = _expm_heat(g, t)[0, 0]
        fd = (r(t + eps) - r(t - eps)) / (2 * eps) * huu * huu
        assert spectra.h_function(d, 0, v, t) == pytest.approx(fd, abs=1e-8)


def test_h_rejects_same_vertex(decomps):
    with pytest.raises(SameVertex):
        spectra.h_function(decomps["cycle6"], 2, 2, 0.5)
    with pytest.raises(SameVertex):
        spectra.h_values(decomps["cycle6"], [(0, 1), (3, 3)], [0.0])
    with pytest.raises(NegativeTime):
        spectra.h_values(decomps["cycle6"], [(0, 1)], [-1.0])


def test_delta_from_projections(decomps):
    prof = spectra.delta_from_projections(decomps["hypercube3"], 0, 1)
    assert prof.delta1 == pytest.approx(0.25, abs=1e-12)
    assert prof.delta12 == pytest.approx(3 / 32, abs=1e-12)
    assert prof.delta(2, 1) == -prof.delta12
    with pytest.raises(WrongSpectrumSize):
        spectra.delta_from_projections(decomps["complete4"], 0, 1)


def test_grid_spec():
    g = GridSpec()
    ts = g.times()
    assert len(ts) == 401
    assert ts[0] == 0.0 and ts[1] == pytest.approx(1e-3) and ts[-1] == pytest.approx(1e2)
    assert GridSpec.parse("0.01, 10, 5") == GridSpec(0.01, 10.0, 5)
    for bad in ("1,2", "0,1,5", "2,1,5", "1,2,1", "a,b,c"):
        with pytest.raises(ValueError):
            GridSpec.parse(bad)


@pytest.mark.parametrize("name", FIXTURES)
def test_scans_clean_on_fixtures(decomps, name):
    reports = spectra.scan_pairs(decomps[name], spectra.all_pairs(decomps[name].n))
    assert all(r.ok for r in reports)
    assert all(r.min_h >= -1e-9 for r in reports)
    assert max(abs(r.r_start) for r in reports) <= 1e-12
    assert max(r.r_end_gap for r in reports) <= 1e-6


def test_scan_detects_real_dip():
    d = spectra.decompose_graph(graphs.path(4))
    rep = spectra.monotonicity_scan(d, 2, 3)
    assert not rep.ok
    assert rep.min_h < -1e-3
    assert 1.0 < rep.argmin_t < 10.0
    assert not rep.refined
    assert all(h < -1e-9 for _, h in rep.violations)


def test_marginal_dip_is_refined_and_kept_when_real():
    d = spectra.decompose_graph(graphs.path(4))
    coarse = spectra.monotonicity_scan(d, 2, 3)
    tol = abs(coarse.min_h) / 5
    rep = spectra.monotonicity_scan(d, 2, 3, tol=tol)
    assert rep.refined
    assert rep.violations
    assert rep.min_h <= coarse.min_h + 1e-15


def test_scan_pair_validation(decomps):
    with pytest.raises(SameVertex):
        spectra.monotonicity_scan(decomps["cycle6"], 1, 1)
    assert spectra.scan_pairs(decomps["cycle6"], []) == []


@settings(max_examples=30)
@given(st.integers(3, 10), st.integers(0, 2**31 - 1))
def test_h_at_zero_nonnegative_property(n, seed):
    rng = np.random.default_rng(seed)
    g = _random_connected(n, rng)
    d = spectra.decompose_graph(g)
    h0 = spectra.h_values(d, spectra.all_pairs(n), [0.0])
    assert h0.min() >= -1e-9


def _random_connected(n, rng, p=0.4):
    while True:
        upper = np.triu(rng.random((n, n)) < p, 1)
        A = (upper | upper.T).astype(np.int64)
        g = graphs.Graph(A)
        if graphs.distances(g).connected:
            return g
