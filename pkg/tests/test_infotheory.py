import math

import numpy as np
import pytest

from atmc.channel import ChannelPmf, as_matrix
from atmc.infotheory import (ConvergenceError, blahut_arimoto,
                             mutual_information, posterior_means)

from oracles import grid_capacity, refined_grid_capacity

BSC_01 = np.array([[0.9, 0.1], [0.1, 0.9]])
BEC_025 = np.array([[0.75, 0.25, 0.0], [0.0, 0.25, 0.75]])

# analytic: C(BSC(p)) = 1 + p log2 p + (1-p) log2 (1-p)
BSC_01_CAPACITY = 1.0 + 0.1 * math.log2(0.1) + 0.9 * math.log2(0.9)


def random_channel(rng, n, m=None):
    P = rng.random((n, m or n))
    return P / P.sum(axis=1)[:, None]


class TestMutualInformation:
    def test_identical_rows_share_no_information(self):
        P = np.array([[0.3, 0.7], [0.3, 0.7], [0.3, 0.7]])
        assert mutual_information([0.2, 0.5, 0.3], P) == 0.0

    def test_noiseless_binary_channel(self):
        assert mutual_information([0.5, 0.5], np.eye(2)) == pytest.approx(1.0)

    def test_bsc_uniform_input(self):
        assert mutual_information([0.5, 0.5], BSC_01) == pytest.approx(
            BSC_01_CAPACITY, abs=1e-12)

    def test_zero_mass_symbols_ignored(self):
        P = np.array([[1.0, 0.0], [0.0, 1.0], [0.5, 0.5]])
        assert mutual_information([0.5, 0.5, 0.0], P) == pytest.approx(1.0)

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(ValueError, match="shape"):
            mutual_information([0.5, 0.5], np.eye(3))

    def test_invalid_distribution_rejected(self):
        with pytest.raises(ValueError, match="sums"):
            mutual_information([0.5, 0.4], np.eye(2))
        with pytest.raises(ValueError, match=">= 0"):
            mutual_information([1.5, -0.5], np.eye(2))

    def test_matches_oracle_on_random_inputs(self):
        from oracles import mi_of_inputs
        rng = np.random.default_rng(11)
        P = random_channel(rng, 5, 7)
        for _ in range(10):
            p = rng.dirichlet(np.ones(5))
            assert mutual_information(p, P) == pytest.approx(
                float(mi_of_inputs(P, p[None, :])[0]), abs=1e-12)


class TestBlahutArimoto:
    def test_identity_channel(self):
        capacity, p_x, iters = blahut_arimoto(np.eye(8))
        assert capacity == pytest.approx(3.0, abs=1e-9)
        assert np.allclose(p_x, 1 / 8, atol=1e-9)

    def test_bsc(self):
        capacity, p_x, _ = blahut_arimoto(BSC_01)
        assert capacity == pytest.approx(BSC_01_CAPACITY, abs=1e-6)
        assert np.allclose(p_x, 0.5, atol=1e-4)

    def test_bec(self):
        capacity, p_x, _ = blahut_arimoto(BEC_025)
        assert capacity == pytest.approx(0.75, abs=1e-6)

    def test_accepts_channel_pmf(self):
        pmf = ChannelPmf(matrix=BSC_01, x_max=2, seed=0, trials=1,
                         config_hash="test")
        capacity, _, _ = blahut_arimoto(pmf)
        assert capacity == pytest.approx(BSC_01_CAPACITY, abs=1e-6)

    def test_matches_grid_search_3x3(self):
        rng = np.random.default_rng(1234)
        for _ in range(3):
            P = random_channel(rng, 3)
            capacity, _, _ = blahut_arimoto(P, tol=1e-10)
            assert capacity == pytest.approx(grid_capacity(P, 1e-2),
                                             abs=1e-3)

    def test_matches_refined_grid_search_up_to_4x4(self):
        rng = np.random.default_rng(77)
        for n in (2, 3, 4):
            P = random_channel(rng, n)
            capacity, _, _ = blahut_arimoto(P, tol=1e-10)
            assert capacity == pytest.approx(refined_grid_capacity(P),
                                             abs=1e-4)

    def test_beats_uniform_input(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            P = random_channel(rng, 6, 4)
            capacity, _, _ = blahut_arimoto(P, tol=1e-9)
            uniform = np.full(6, 1 / 6)
            assert capacity >= mutual_information(uniform, P) - 1e-9

    def test_achieved_rate_matches_reported_capacity(self):
        rng = np.random.default_rng(6)
        P = random_channel(rng, 5)
        capacity, p_x, _ = blahut_arimoto(P, tol=1e-9)
        assert mutual_information(p_x, P) == pytest.approx(capacity, abs=1e-7)

    def test_row_permutation_invariance(self):
        rng = np.random.default_rng(8)
        P = random_channel(rng, 5, 6)
        perm = rng.permutation(5)
        c1, p1, _ = blahut_arimoto(P)
        c2, p2, _ = blahut_arimoto(P[perm])
        assert c2 == pytest.approx(c1, abs=1e-9)
        assert np.allclose(p2, p1[perm], atol=1e-6)

    def test_zero_output_column_is_inert(self):
        rng = np.random.default_rng(9)
        P = random_channel(rng, 4, 5)
        padded = np.hstack([P[:, :2], np.zeros((4, 1)), P[:, 2:]])
        c1, p1, _ = blahut_arimoto(P)
        c2, p2, _ = blahut_arimoto(padded)
        assert c1 == c2
        assert np.array_equal(p1, p2)

    def test_dominated_symbol_mass_is_clamped_to_zero(self):
        P = np.array([[1.0, 0.0], [0.0, 1.0], [0.5, 0.5]])
        capacity, p_x, _ = blahut_arimoto(P, tol=1e-16)
        assert capacity == pytest.approx(1.0, abs=1e-9)
        assert p_x[2] == 0.0
        assert p_x.sum() == pytest.approx(1.0, abs=1e-15)

    def test_non_convergence_reports_gap(self):
        rng = np.random.default_rng(10)
        P = random_channel(rng, 6)
        with pytest.raises(ConvergenceError) as err:
            blahut_arimoto(P, tol=1e-12, max_iter=2)
        assert err.value.gap > 1e-12
        assert err.value.iterations == 2
        assert 0.0 <= err.value.capacity <= math.log2(6)

    def test_input_validation(self):
        with pytest.raises(ValueError, match="sum"):
            blahut_arimoto(np.array([[0.5, 0.4], [0.5, 0.5]]))
        with pytest.raises(ValueError, match="tol"):
            blahut_arimoto(BSC_01, tol=0.0)
        with pytest.raises(ValueError, match=">= 0"):
            blahut_arimoto(np.array([[1.5, -0.5], [0.5, 0.5]]))


class TestPosteriorMeans:
    def test_point_mass_at_zero(self):
        assert posterior_means([1.0, 0.0], BSC_01) == (0.0, 0.1)

    def test_identity_channel_copies_mean(self):
        p = [0.1, 0.2, 0.3, 0.4]
        mean_x, mean_y = posterior_means(p, np.eye(4))
        assert mean_y == mean_x == pytest.approx(2.0)

    def test_lower_triangular_never_gains(self):
        rng = np.random.default_rng(12)
        for _ in range(10):
            n = 6
            P = np.tril(rng.random((n, n)))
            P /= P.sum(axis=1)[:, None]
            p = rng.dirichlet(np.ones(n))
            mean_x, mean_y = posterior_means(p, P)
            assert mean_y <= mean_x + 1e-12

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(ValueError):
            posterior_means([0.5, 0.5], np.eye(3))


def test_as_matrix_accepts_arrays_and_pmfs():
    assert np.array_equal(as_matrix(BSC_01), BSC_01)
    pmf = ChannelPmf(matrix=BSC_01, x_max=2, seed=0, trials=1, config_hash="t")
    assert np.array_equal(as_matrix(pmf), BSC_01)
    with pytest.raises(ValueError, match="2-D"):
        as_matrix(np.ones(3))
