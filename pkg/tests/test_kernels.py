import math

import numpy as np
import pytest
import scipy.integrate
from hypothesis import given, settings, strategies as st

from privgp.errors import InvalidInput
from privgp.kernels import (KernelSpec, evaluate, fourier, gram, scaled, sqexp, validate_pair,
                            validate_pair_numeric, validity_region)


class TestEvaluate:
    def test_zero_lag(self):
        assert evaluate(sqexp(10.0), 0.3, 0.3) == 1.0

    def test_toy_pair(self):
        assert evaluate(sqexp(10.0), 0.4, 0.6) == pytest.approx(math.exp(-0.4), rel=1e-14)
        assert evaluate(sqexp(10.0), 0.4, 0.6) == pytest.approx(0.670320, abs=1e-6)

    def test_satellite_kernel(self):
        assert evaluate(sqexp(200.0), 0.0, 0.1) == pytest.approx(math.exp(-2.0), rel=1e-14)

    def test_symmetric_and_amplitude(self):
        k = sqexp(3.0, c=2.5, d=2)
        assert evaluate(k, [0.1, 0.2], [0.7, -0.3]) == evaluate(k, [0.7, -0.3], [0.1, 0.2])
        assert evaluate(k, [1.0, 1.0], [1.0, 1.0]) == 2.5
        assert evaluate(scaled(k, 0.4), [0, 0], [0, 0]) == pytest.approx(1.0)

    def test_dimension_mismatch(self):
        with pytest.raises(InvalidInput):
            evaluate(sqexp(1.0, d=2), [0.0, 0.0, 0.0], [0.0, 0.0])


class TestGram:
    def test_single_point(self):
        assert gram(sqexp(1.0, c=3.0), [0.2]).tolist() == [[3.0]]

    def test_toy_grid(self):
        K = gram(sqexp(10.0), np.arange(1, 10) / 10)
        assert K.shape == (9, 9)
        np.testing.assert_array_equal(K, K.T)
        np.testing.assert_array_equal(np.diag(K), np.ones(9))

    def test_two_sensitive_points(self):
        e = math.exp(-0.4)
        np.testing.assert_allclose(gram(sqexp(10.0), [0.4, 0.6]), [[1, e], [e, 1]], rtol=1e-14)

    @settings(max_examples=40, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), d=st.integers(1, 3), m=st.integers(1, 8))
    def test_positive_definite_for_distinct_points(self, seed, d, m):
        P = np.random.default_rng(seed).uniform(-1, 1, size=(m, d))
        assert np.linalg.eigvalsh(gram(sqexp(2.0, d=d), P))[0] > -1e-10

    def test_entries_match_evaluate(self, rng):
        k = sqexp(0.7, c=1.3, d=3)
        P, Q = rng.normal(size=(4, 3)), rng.normal(size=(5, 3))
        G = gram(k, P, Q)
        for i in range(4):
            for j in range(5):
                assert G[i, j] == pytest.approx(evaluate(k, P[i], Q[j]), rel=1e-14)


class TestFourier:
    def test_unit_case(self):
        assert fourier(sqexp(0.5), 0.0) == pytest.approx(1.0)

    def test_origin_value(self):
        assert fourier(sqexp(10.0), 0.0) == pytest.approx(20 ** -0.5, rel=1e-14)

    @pytest.mark.parametrize("theta,c", [(10.0, 1.0), (0.5, 2.0), (200.0, 0.3)])
    @pytest.mark.parametrize("omega", [0.0, 1.0, 3.7, 12.0])
    def test_matches_quadrature(self, theta, c, omega):
        # (2 pi)^-1/2 int R(x) cos(w x) dx over the real line
        val, _ = scipy.integrate.quad(lambda x: c * math.exp(-theta * x * x) * math.cos(omega * x),
                                      -np.inf, np.inf, epsabs=1e-13)
        assert fourier(sqexp(theta, c=c), omega) == pytest.approx(val / math.sqrt(2 * math.pi), abs=1e-6)

    def test_vector_frequencies(self):
        k = sqexp(2.0, d=2)
        w = np.array([[0.0, 0.0], [1.0, 1.0]])
        np.testing.assert_allclose(fourier(k, w), [0.25, 0.25 * math.exp(-2 / 8)])

    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_ratio_at_least_one_inside_region(self, d):
        K = sqexp(10.0, d=d)
        w = np.linspace(0, 60, 601)
        for c in (0.0, 0.3, 0.9):
            for theta in np.linspace(c ** (2 / d) * 10.0, 10.0, 5):
                if theta <= 0:
                    continue
                H = sqexp(theta, c=c, d=d)
                assert np.all(fourier(K, w) >= fourier(H, w) * (1 - 1e-12))


class TestValidatePair:
    def test_boundary_theta_equals_theta0(self):
        assert validate_pair(sqexp(10.0), sqexp(10.0, c=0.5))

    @pytest.mark.parametrize("theta", [0.5, 5.0, 10.0, 50.0])
    def test_c_equal_one_rejected(self, theta):
        v = validate_pair(sqexp(10.0), sqexp(theta, c=1.0))
        assert not v and "c=1" in v.reason

    def test_below_lower_boundary(self):
        # c^2 theta0 = 2.5 > 2
        v = validate_pair(sqexp(10.0), sqexp(2.0, c=0.5))
        assert not v and "below" in v.reason

    def test_scaled_copy(self):
        K = sqexp(10.0)
        assert validate_pair(K, scaled(K, 0.1))
        assert validate_pair(K, scaled(K, 0.0))

    def test_dimension_mismatch(self):
        assert not validate_pair(sqexp(1.0, d=1), sqexp(1.0, c=0.1, d=2))

    @settings(max_examples=50, deadline=None)
    @given(c=st.floats(0.0, 0.99), u=st.floats(0.0, 1.0), d=st.integers(1, 3),
           seed=st.integers(0, 2**32 - 1))
    def test_valid_pairs_give_pd_difference(self, c, u, d, seed):
        theta0 = 10.0
        lo = c ** (2 / d) * theta0
        theta = max(lo + u * (theta0 - lo), 1e-3)
        K, H = sqexp(theta0, d=d), sqexp(theta, c=c, d=d)
        if not validate_pair(K, H):
            return
        S = np.random.default_rng(seed).uniform(-0.5, 0.5, size=(5, d))
        assert np.linalg.eigvalsh(gram(K, S) - gram(H, S))[0] > 0

    def test_numeric_fallback_agrees_inside_and_outside(self):
        K = sqexp(10.0)
        assert validate_pair_numeric(K, sqexp(8.0, c=0.5))
        assert not validate_pair_numeric(K, sqexp(2.0, c=0.5))
        assert not validate_pair_numeric(K, sqexp(12.0, c=0.5))

    def test_region_helper(self):
        assert validity_region(0.5, 10.0, 10.0, 1)
        assert not validity_region(1.0, 10.0, 10.0, 1)
        assert validity_region(0.25, 5.0, 10.0, 2)


def test_json_round_trip():
    k = scaled(sqexp(0.123456789, c=1.7, d=2), 0.3)
    assert KernelSpec.from_dict(k.to_dict()) == k


@pytest.mark.parametrize("kwargs", [dict(theta=0.0), dict(theta=1.0, c=-1.0), dict(theta=1.0, d=0)])
def test_invalid_parameters(kwargs):
    with pytest.raises(InvalidInput):
        sqexp(**kwargs)
