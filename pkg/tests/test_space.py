import numpy as np
import pytest
from hypothesis import given
import hypothesis.strategies as st

from qmet import (
    QSpace,
    SubsetRef,
    asym_defect,
    conjugate,
    demo_space,
    dualize,
    hausdorff,
    is_isometric,
    largeness_constant,
    metric_convexity_defect,
    product_sup,
    restrict,
    symmetrize,
    validate,
)
from qmet.errors import (
    EmptySubset,
    NegativeEntry,
    NonFiniteEntry,
    NonSquareMatrix,
    SizeOverflow,
    ValidationError,
)
from helpers import qspaces


S = demo_space("sierpinski")
L3 = demo_space("line3")
M2 = demo_space("metric2")


class TestValidate:
    def test_sierpinski_is_quasi_metric(self):
        r = validate([[0, 0], [1, 0]])
        assert r.satisfies_M1 and r.satisfies_M2 and not r.satisfies_M3
        assert not r.is_metric
        assert [v.axiom for v in r.violations] == ["M3"]

    def test_zero_matrix_is_pseudo_only(self):
        r = validate([[0, 0], [0, 0]])
        assert not r.satisfies_M1
        assert r.satisfies_M2 and r.satisfies_M3
        assert not r.is_metric
        assert any(v.axiom == "M1" for v in r.violations)

    def test_triangle_violation_witness(self):
        r = validate([[0, 5, 1], [1, 0, 1], [1, 1, 0]])
        assert not r.satisfies_M2
        hits = [v for v in r.violations if v.axiom == "M2"]
        assert hits[0].witness == (0, 1, 2)
        assert hits[0].magnitude == pytest.approx(3.0)
        with pytest.raises(ValidationError):
            QSpace([[0, 5, 1], [1, 0, 1], [1, 1, 0]])

    def test_metric_flag(self):
        assert validate(M2.d).is_metric

    def test_bad_candidates(self):
        with pytest.raises(NonSquareMatrix):
            validate([[0, 1]])
        with pytest.raises(NonSquareMatrix):
            validate(np.zeros((0, 0)))
        with pytest.raises(NegativeEntry):
            validate([[0, -1], [1, 0]])
        with pytest.raises(NonFiniteEntry):
            validate([[0, np.inf], [1, 0]])

    def test_violations_capped(self):
        # cheap hub shortcuts break every triangle through point 0
        n = 25
        m = np.full((n, n), 10.0)
        m[0, :] = 0.1
        m[:, 0] = 0.1
        np.fill_diagonal(m, 0.0)
        r = validate(m)
        assert len(r.violations) == 100


class TestDualize:
    def test_conjugate_transposes(self):
        assert conjugate(S).d.tolist() == [[0, 1], [0, 0]]

    def test_symmetrize_max(self):
        assert symmetrize(S).d.tolist() == [[0, 1], [1, 0]]
        assert symmetrize(S).classification.satisfies_M3

    def test_symmetrize_fixes_metric(self):
        assert np.array_equal(symmetrize(M2).d, M2.d)

    def test_dualize_dispatch(self):
        assert dualize(S, "conjugate") == conjugate(S)
        with pytest.raises(ValueError):
            dualize(S, "flip")

    @given(qspaces())
    def test_conjugate_involution(self, X):
        assert conjugate(conjugate(X)) == X

    @given(qspaces())
    def test_symmetrize_conjugation_invariant(self, X):
        assert symmetrize(X) == symmetrize(conjugate(X))


class TestRestrict:
    def test_line3_subset(self):
        assert restrict(L3, [0, 2]).d.tolist() == [[0, 0], [2, 0]]

    def test_full_subset_is_identity(self):
        assert restrict(L3, [0, 1, 2]) == L3

    def test_single_point(self):
        assert restrict(L3, [1]).d.tolist() == [[0.0]]

    def test_empty_subset(self):
        with pytest.raises(EmptySubset):
            restrict(L3, [])
        with pytest.raises(EmptySubset):
            SubsetRef(L3, ())

    def test_subset_ref_checks(self):
        with pytest.raises(ValueError):
            SubsetRef(L3, (1, 1))
        with pytest.raises(IndexError):
            SubsetRef(L3, (0, 7))


class TestProduct:
    def test_sierpinski_square(self):
        P = product_sup(S, S)
        assert P.n == 4
        # index (i, j) -> i * 2 + j
        assert P.d[3, 0] == 1.0

    def test_unit_law(self):
        point = QSpace([[0.0]])
        P = product_sup(L3, point)
        assert is_isometric(P, L3) is not None

    def test_line3_times_sierpinski(self):
        P = product_sup(L3, S)
        assert P.d[2 * 2 + 1, 0] == 2.0

    def test_size_cap(self):
        with pytest.raises(SizeOverflow):
            product_sup(L3, L3, cap=8)


class TestHausdorff:
    def test_directed_values(self):
        assert hausdorff(L3, [0], [2], "q") == 2.0
        assert hausdorff(L3, [2], [0], "q") == 0.0

    def test_same_subset_zero(self):
        assert hausdorff(L3, [0, 2], [0, 2], "q") == 0.0
        assert hausdorff(L3, [0, 2], [0, 2], "sym") == 0.0

    @given(qspaces(), st.data())
    def test_sym_is_max_of_one_sided(self, X, data):
        a = data.draw(st.sets(st.integers(0, X.n - 1), min_size=1))
        b = data.draw(st.sets(st.integers(0, X.n - 1), min_size=1))
        Xs = symmetrize(X)
        one = hausdorff(Xs, sorted(a), sorted(b), "q")
        other = hausdorff(Xs, sorted(b), sorted(a), "q")
        assert hausdorff(X, sorted(a), sorted(b), "sym") == pytest.approx(
            max(one, other), abs=1e-12
        )

    @given(qspaces(), st.data())
    def test_sym_zero_means_mutual_cover(self, X, data):
        a = sorted(data.draw(st.sets(st.integers(0, X.n - 1), min_size=1)))
        b = sorted(data.draw(st.sets(st.integers(0, X.n - 1), min_size=1)))
        if hausdorff(X, a, b, "sym") == 0.0:
            for i in a:
                assert min(X.dsym[i, j] for j in b) == 0.0
            for j in b:
                assert min(X.dsym[j, i] for i in a) == 0.0


class TestLargeness:
    def test_examples(self):
        assert largeness_constant(L3, [1]) == 1.0
        assert largeness_constant(L3, [0, 1, 2]) == 0.0
        assert largeness_constant(S, [0]) == 1.0

    @given(qspaces(), st.data())
    def test_equals_one_sided_sym_hausdorff(self, X, data):
        y = sorted(data.draw(st.sets(st.integers(0, X.n - 1), min_size=1)))
        allpts = list(range(X.n))
        assert largeness_constant(X, y) == pytest.approx(
            hausdorff(symmetrize(X), allpts, y, "q"), abs=1e-12
        )


class TestDefects:
    def test_convexity_examples(self):
        assert metric_convexity_defect(QSpace([[0.0]])) == 0.0
        assert metric_convexity_defect(S) == pytest.approx(0.5)
        assert metric_convexity_defect(L3) == pytest.approx(0.5)

    def test_asym_examples(self):
        assert asym_defect(M2) == 0.0
        assert asym_defect(S) == pytest.approx(0.5)
        assert asym_defect(L3) == pytest.approx(1.0)

    @given(qspaces(max_n=4), st.randoms(use_true_random=False))
    def test_relabel_invariance(self, X, pyrng):
        perm = list(range(X.n))
        pyrng.shuffle(perm)
        Y = QSpace(X.d[np.ix_(perm, perm)])
        assert metric_convexity_defect(Y) == pytest.approx(
            metric_convexity_defect(X), abs=1e-12
        )
        assert asym_defect(Y) == pytest.approx(asym_defect(X), abs=1e-12)


class TestIsometric:
    def test_self(self):
        assert is_isometric(L3, L3) == [0, 1, 2]

    def test_sierpinski_vs_conjugate(self):
        assert is_isometric(S, conjugate(S)) == [1, 0]

    def test_sierpinski_vs_metric(self):
        assert is_isometric(S, M2) is None

    def test_size_mismatch(self):
        assert is_isometric(S, L3) is None

    @given(qspaces(), st.randoms(use_true_random=False))
    def test_inverse_present(self, X, pyrng):
        perm = list(range(X.n))
        pyrng.shuffle(perm)
        Y = QSpace(X.d[np.ix_(perm, perm)])
        fwd = is_isometric(X, Y)
        back = is_isometric(Y, X)
        assert fwd is not None and back is not None
        for i in range(X.n):
            assert X.d[i, i] == Y.d[fwd[i], fwd[i]]
