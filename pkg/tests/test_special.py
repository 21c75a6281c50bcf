"""In-repo special functions against independent references (math/scipy)."""

from __future__ import annotations

import math

import pytest
from hypothesis import given, settings, strategies as st
from scipy import special as sp
from scipy import stats

from adux.special import (
    incomplete_beta_inverse,
    log_gamma,
    normal_quantile,
    regularized_incomplete_beta,
    student_t_cdf,
    student_t_quantile,
)


class TestLogGamma:
    @pytest.mark.parametrize("x", [0.001, 0.1, 0.4999, 0.5, 1.0, 2.0, 7.5, 50.0, 1234.5])
    def test_matches_stdlib(self, x):
        assert log_gamma(x) == pytest.approx(math.lgamma(x), rel=1e-12, abs=1e-12)

    @given(st.floats(min_value=1e-4, max_value=5000.0))
    @settings(max_examples=200)
    def test_matches_stdlib_everywhere(self, x):
        assert log_gamma(x) == pytest.approx(math.lgamma(x), rel=1e-11, abs=1e-11)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            log_gamma(0.0)
        with pytest.raises(ValueError):
            log_gamma(-1.5)


class TestIncompleteBeta:
    def test_uniform_is_identity(self):
        assert regularized_incomplete_beta(1.0, 1.0, 0.3) == pytest.approx(0.3, abs=1e-12)

    def test_square_law(self):
        # Beta(2,1) has CDF x^2
        assert regularized_incomplete_beta(2.0, 1.0, 0.5) == pytest.approx(0.25, abs=1e-12)

    def test_symmetric_midpoint(self):
        assert regularized_incomplete_beta(2.0, 2.0, 0.5) == pytest.approx(0.5, abs=1e-12)

    def test_boundaries(self):
        assert regularized_incomplete_beta(3.0, 4.0, 0.0) == 0.0
        assert regularized_incomplete_beta(3.0, 4.0, 1.0) == 1.0

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            regularized_incomplete_beta(0.0, 1.0, 0.5)
        with pytest.raises(ValueError):
            regularized_incomplete_beta(1.0, 1.0, 1.5)

    @given(
        st.floats(min_value=0.05, max_value=60.0),
        st.floats(min_value=0.05, max_value=60.0),
        st.floats(min_value=0.0, max_value=1.0),
    )
    @settings(max_examples=300)
    def test_against_scipy_within_contract(self, a, b, x):
        ours = regularized_incomplete_beta(a, b, x)
        assert ours == pytest.approx(float(sp.betainc(a, b, x)), abs=1e-10)


class TestIncompleteBetaInverse:
    def test_edges(self):
        assert incomplete_beta_inverse(2.0, 3.0, 0.0) == 0.0
        assert incomplete_beta_inverse(2.0, 3.0, 1.0) == 1.0

    @given(
        st.floats(min_value=0.5, max_value=50.0),
        st.floats(min_value=0.5, max_value=50.0),
        st.floats(min_value=0.01, max_value=0.99),
    )
    @settings(max_examples=100, deadline=None)
    def test_inverse_hits_target_mass(self, a, b, p):
        x = incomplete_beta_inverse(a, b, p)
        assert regularized_incomplete_beta(a, b, x) == pytest.approx(p, abs=1e-10)


class TestStudentT:
    @pytest.mark.parametrize("df", [3, 5, 6, 10, 28])
    @pytest.mark.parametrize("x", [-3.0, -0.7, 0.0, 1.2, 2.5])
    def test_cdf_matches_scipy(self, df, x):
        assert student_t_cdf(x, df) == pytest.approx(stats.t.cdf(x, df), abs=1e-12)

    @pytest.mark.parametrize("df", [3, 4, 6, 10, 28, 100])
    @pytest.mark.parametrize("p", [0.005, 0.025, 0.1, 0.5, 0.9, 0.975, 0.995])
    def test_quantile_matches_scipy(self, df, p):
        assert student_t_quantile(p, df) == pytest.approx(stats.t.ppf(p, df), abs=1e-9)

    def test_symmetry(self):
        assert student_t_quantile(0.25, 7) == -student_t_quantile(0.75, 7)

    def test_domain(self):
        with pytest.raises(ValueError):
            student_t_quantile(0.0, 5)
        with pytest.raises(ValueError):
            student_t_cdf(1.0, 0)


class TestNormalQuantile:
    @pytest.mark.parametrize("p", [0.001, 0.025, 0.25, 0.5, 0.8, 0.975, 0.999])
    def test_matches_scipy(self, p):
        assert normal_quantile(p) == pytest.approx(stats.norm.ppf(p), abs=1e-10)

    def test_domain(self):
        with pytest.raises(ValueError):
            normal_quantile(1.0)
