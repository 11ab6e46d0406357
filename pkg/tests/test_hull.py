import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from qmet import (
    QSpace,
    demo_space,
    hull_as_qspace,
    in_hull,
    is_isometric,
    metric_diag_check,
    pair_dist,
    sample_hull,
)
from qmet.errors import NotMetric
from helpers import qspaces

S = demo_space("sierpinski")
M2 = demo_space("metric2")


class TestSampleHull:
    def test_sierpinski_parametrization(self):
        H = sample_hull(S, 200, seed=3)
        assert len(H.points) > 20
        for p in H.points:
            t = p.f1[0]
            assert -1e-6 <= t <= 1 + 1e-6
            assert abs(p.f1[1]) <= 1e-6
            assert abs(p.f2[0]) <= 1e-6
            assert abs(p.f2[1] - (1 - t)) <= 1e-6

    def test_k_zero_keeps_embeddings_only(self):
        H = sample_hull(S, 0, seed=1)
        assert len(H.points) == 2
        assert H.points[0].f1.tolist() == [0, 0]
        assert H.points[1].f1.tolist() == [1, 0]

    def test_one_point_space(self):
        H = sample_hull(QSpace([[0.0]]), 25, seed=1)
        assert len(H.points) == 1
        assert H.points[0].f1.tolist() == [0.0]
        assert H.points[0].f2.tolist() == [0.0]

    def test_deterministic(self):
        a = sample_hull(M2, 60, seed=11)
        b = sample_hull(M2, 60, seed=11)
        assert len(a.points) == len(b.points)
        for p, q in zip(a.points, b.points):
            assert np.array_equal(p.f1, q.f1) and np.array_equal(p.f2, q.f2)
        c = sample_hull(M2, 60, seed=12)
        assert any(
            not np.array_equal(p.f1, q.f1) for p, q in zip(a.points, c.points)
        ) or len(a.points) != len(c.points)

    def test_all_points_certified(self):
        H = sample_hull(M2, 40, seed=2)
        for p in H.points:
            assert p.certified_minimal
            assert in_hull(p, 1e-7)

    def test_spread_above_dedup(self):
        H = sample_hull(S, 100, seed=4)
        assert H.spread >= 1e-9

    @given(qspaces(max_n=4), st.integers(0, 10_000))
    @settings(max_examples=10)
    def test_one_lipschitz(self, X, seed):
        H = sample_hull(X, 12, seed=seed)
        for p in H.points:
            for x in range(X.n):
                for y in range(X.n):
                    assert p.f1[x] - p.f1[y] <= X.d[y, x] + 1e-9
                    assert p.f2[x] - p.f2[y] <= X.d[x, y] + 1e-9


class TestHullAsQSpace:
    def test_sierpinski_net_is_one_way_interval(self):
        H = sample_hull(S, 120, seed=5)
        Q = hull_as_qspace(H)
        ts = np.array([p.f1[0] for p in H.points])
        expect = np.maximum(ts[:, None] - ts[None, :], 0.0)
        assert np.abs(Q.d - expect).max() <= 1e-6

    def test_embeddings_reproduce_base(self):
        for name in ("sierpinski", "line3", "metric2", "runit5"):
            X = demo_space(name)
            Q = hull_as_qspace(sample_hull(X, 30, seed=8))
            assert np.abs(Q.d[: X.n, : X.n] - X.d).max() <= 1e-9

    def test_embedding_only_net_isometric_to_base(self):
        for name in ("sierpinski", "line3", "metric2"):
            X = demo_space(name)
            Q = hull_as_qspace(sample_hull(X, 0, seed=0))
            assert is_isometric(Q, X) is not None

    def test_diameter_bound(self):
        for name in ("sierpinski", "line3", "metric2", "runit5"):
            X = demo_space(name)
            Q = hull_as_qspace(sample_hull(X, 150, seed=6))
            assert Q.d.max() <= 3 * X.diam + 1e-6

    def test_net_validates(self):
        Q = hull_as_qspace(sample_hull(demo_space("line3"), 80, seed=9))
        assert Q.classification.is_quasi_metric

    def test_pseudo_space_flows_through(self):
        Z = QSpace([[0, 0], [0, 0]])
        H = sample_hull(Z, 10, seed=0)
        assert len(H.points) == 2  # embeddings kept even when they collapse
        Q = hull_as_qspace(H)
        assert Q.classification.is_pseudo_quasi_metric
        assert not Q.classification.satisfies_M1


class TestDiagonal:
    def test_requires_metric(self):
        with pytest.raises(NotMetric):
            metric_diag_check(S, sample_hull(S, 10, seed=0))

    def test_diagonal_family_is_minimal(self):
        # hand-built equal-component pairs on the two-point metric space
        from qmet.pairs import AmplePair, double_conjugate

        for t in np.linspace(0, 1, 9):
            f = AmplePair(M2, [t, 1 - t], [t, 1 - t])
            s = double_conjugate(f)
            assert np.allclose(s.f1, f.f1, atol=1e-12)
            assert in_hull(f, 1e-9)

    def test_sym_distance_matches_sup_norm(self):
        from qmet.pairs import AmplePair

        f = AmplePair(M2, [0.2, 0.8], [0.2, 0.8])
        g = AmplePair(M2, [0.9, 0.1], [0.9, 0.1])
        assert pair_dist(f, g, "Dsym") == pytest.approx(0.7)

    def test_report_counts(self):
        H = sample_hull(M2, 200, seed=13)
        rep = metric_diag_check(M2, H)
        # the two point embeddings are always diagonal; generic samples are not
        assert rep.n_diagonal >= 2
        assert rep.n_off_diagonal >= 1
        assert rep.max_minimality_residual <= 1e-7
        assert rep.max_metric_discrepancy <= 1e-7
