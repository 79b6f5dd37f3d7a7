import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from flagjohnson import matstruct as ms
from flagjohnson.graphs import path_graph
from flagjohnson.spectra import closed_form_Q, closed_form_Qprime, eig_dense, laplacian


class TestRobinson:
    def test_q5(self):
        assert ms.is_robinson(closed_form_Q(5))

    def test_qprime5_witness(self):
        rep = ms.is_robinson(closed_form_Qprime(5))
        assert not rep.holds
        (i, j), (i2, k) = rep.witness
        assert i == i2 == 3 and (j, k) == (1, 2)
        q = closed_form_Qprime(5)
        assert q[i - 1, j - 1] == 2 and q[i - 1, k - 1] == 1

    def test_diagonal(self):
        assert ms.is_robinson(np.diag([3, 1, 4, 1]))

    @pytest.mark.parametrize("n", range(4, 60))
    def test_plain_is_robinson(self, n):
        assert ms.is_robinson(closed_form_Q(n))

    def test_literal_definition_agrees(self):
        def literal(a):
            n = len(a)
            for i in range(n):
                for j in range(n):
                    for k in range(n):
                        if j < k < i and not a[i][j] <= a[i][k]:
                            return False
                        if i < j < k and not a[i][j] >= a[i][k]:
                            return False
            return True

        rng = np.random.default_rng(1)
        for _ in range(200):
            a = rng.integers(0, 3, (5, 5))
            a = a + a.T
            assert literal(a) == ms.is_robinson(a).holds


class TestCentrosymmetric:
    def test_exchange(self):
        assert ms.exchange(2).tolist() == [[0, 1], [1, 0]]
        j = ms.exchange(5)
        assert np.array_equal(j @ j, np.eye(5, dtype=int))

    @pytest.mark.parametrize("n", range(4, 101))
    def test_plain_laplacian(self, n):
        assert ms.is_centrosymmetric(laplacian(closed_form_Q(n)))

    def test_prime_laplacian_is_not(self):
        rep = ms.is_centrosymmetric(laplacian(closed_form_Qprime(5)))
        assert not rep.holds and rep.witness is not None

    def test_matches_matrix_products(self):
        a = laplacian(closed_form_Qprime(6))
        j = ms.exchange(6)
        assert ms.is_centrosymmetric(a).holds == np.array_equal(a @ j, j @ a)

    def test_real_tolerance(self):
        a = laplacian(closed_form_Q(6)).astype(float)
        a[0, 0] += 1e-14
        assert ms.is_centrosymmetric(a)
        a[0, 0] += 1e-6
        assert not ms.is_centrosymmetric(a)


class TestSymmetryClassify:
    @pytest.mark.parametrize("n", [4, 5, 10, 31])
    def test_plain(self, n):
        lap = laplacian(closed_form_Q(n))
        splits = ms.eigenbasis_symmetry_classify(lap)
        assert sum(sum(s.counts) for s in splits) == n
        # null vector is J-symmetric, Fiedler vector is J-skew
        assert splits[0].counts == (1, 0)
        assert splits[1].counts == (0, 1)
        j = ms.exchange(n)
        for s in splits:
            for vec in s.symmetric.T:
                assert np.allclose(j @ vec, vec, atol=1e-8)
                assert np.allclose(lap @ vec, s.value * vec, atol=1e-8)
            for vec in s.skew.T:
                assert np.allclose(j @ vec, -vec, atol=1e-8)
                assert np.allclose(lap @ vec, s.value * vec, atol=1e-8)
            basis = np.hstack([s.symmetric, s.skew])
            assert np.allclose(basis.T @ basis, np.eye(basis.shape[1]), atol=1e-8)

    def test_degenerate_eigenspace(self):
        # identity: one eigenspace of dimension 4 split 2 + 2
        splits = ms.eigenbasis_symmetry_classify(np.eye(4))
        assert len(splits) == 1 and splits[0].counts == (2, 2)

    def test_requires_centrosymmetry(self):
        with pytest.raises(ValueError):
            ms.eigenbasis_symmetry_classify(laplacian(closed_form_Qprime(5)))


class TestInterlacing:
    @pytest.mark.parametrize("n", [5, 6, 9, 40])
    def test_deleted_submatrix_is_path(self, n):
        rep, b = ms.interlacing_check(laplacian(closed_form_Qprime(n)), [1, 2, 3, n])
        assert rep
        expected = 2 * np.eye(n - 4, dtype=int) - path_graph(n - 4).to_dense()
        assert np.array_equal(b, expected)

    def test_nothing_deleted(self):
        m = laplacian(closed_form_Q(6))
        rep, b = ms.interlacing_check(m, [])
        assert rep and np.array_equal(b, m)

    @pytest.mark.parametrize("n", list(range(6, 60)) + [100, 200, 300])
    def test_path_bound_consequence(self, n):
        mu2 = eig_dense(laplacian(closed_form_Qprime(n))).mu(2)
        assert mu2 <= 2 - 2 * math.cos(2 * math.pi / (n - 3)) + 1e-12

    def test_random_principal_submatrices(self):
        rng = np.random.default_rng(42)
        for _ in range(200):
            n = int(rng.integers(4, 51))
            r = int(rng.integers(1, n))
            deleted = rng.choice(np.arange(1, n + 1), size=r, replace=False)
            assert ms.interlacing_check(laplacian(closed_form_Qprime(n)), deleted)[0]



class TestPsdRank:
    @pytest.mark.parametrize("n", [4, 5, 17, 100, 300])
    def test_shifted_quotients(self, n):
        r = (n * n + n - 6) // 2
        assert ms.psd_rank_check(r * np.eye(n, dtype=int) - closed_form_Q(n), n - 1)
        assert ms.psd_rank_check(n * np.eye(n, dtype=int) - closed_form_Qprime(n), n - 1)

    def test_zero(self):
        assert ms.psd_rank_check(np.zeros((3, 3)), 0)

    def test_failures(self):
        assert not ms.psd_rank_check(np.diag([1.0, -1.0]), 1)
        assert not ms.psd_rank_check(np.diag([1.0, 1.0]), 1)


class TestDecomposition:
    @pytest.mark.parametrize("n", range(4, 101))
    def test_both_variants(self, n):
        assert ms.decomposition_check(n, "prime")
        assert ms.decomposition_check(n, "plain")

    def test_perturbed_coefficient(self):
        terms = ms.rank_one_terms(7, "plain")
        c, i, j = terms[-1]
        terms[-1] = (c + 1, i, j)
        rep = ms.decomposition_check(7, "plain", terms)
        assert not rep.holds
        assert set(rep.witness) <= {i, j}

    def test_rank_one_terms_psd(self):
        for c, i, j in ms.rank_one_terms(9, "plain"):
            vals = np.linalg.eigvalsh(c * ms.rank_one(10, i, j).astype(float))
            assert np.allclose(sorted(vals)[-1], 2 * c) and vals.min() > -1e-12


class TestQuadraticForm:
    @pytest.mark.parametrize("n", [4, 5, 12, 50])
    def test_ones(self, n):
        assert ms.quadratic_form_check(n, np.ones(n))
        assert ms.pentadiagonal_form(n, np.ones(n)) == 0

    @pytest.mark.parametrize("n,value", [(4, 22), (5, 36), (10, 136)])
    def test_linear_vector(self, n, value):
        x = np.arange(1, n + 1) - (n + 1) / 2
        assert ms.pentadiagonal_form(n, x) == pytest.approx(value)
        assert float(x @ laplacian(closed_form_Q(n)) @ x) == pytest.approx(value)
        assert value == (n - 2) * (n + 7)
        assert ms.quadratic_form_check(n, x)

    @pytest.mark.parametrize("n", [4, 5, 17, 50])
    def test_seeded_random(self, n):
        y = np.random.default_rng(n).standard_normal((n, 1000))
        assert ms.quadratic_form_check(n, y)

    @settings(max_examples=50, deadline=None)
    @given(st.integers(4, 30), st.data())
    def test_property(self, n, data):
        y = np.array(data.draw(st.lists(st.floats(-1e3, 1e3), min_size=n, max_size=n)))
        lhs = float(y @ laplacian(closed_form_Q(n)) @ y)
        rhs = float(ms.pentadiagonal_form(n, y))
        assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(rhs))

    def test_wrong_length(self):
        with pytest.raises(ValueError):
            ms.quadratic_form_check(5, np.ones(4))


def test_report_json():
    rep = ms.is_robinson(closed_form_Qprime(5))
    d = rep.to_json()
    assert d == {"predicate": "robinson", "n": 5, "holds": False, "witness": ((3, 1), (3, 2))}
    with pytest.raises(ValueError):
        ms.StructureReport("x", False)
