"""Sample container and the closed-form moment oracles."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

import subgnorm as sg


class TestSample:
    def test_accepts_lists(self):
        s = sg.Sample([1.0, 2.0, 3.0])
        assert len(s) == 3
        assert isinstance(s.values, np.ndarray)

    def test_centered_uses_sample_mean(self):
        s = sg.Sample([1.0, 3.0])
        assert np.array_equal(s.centered(), [-1.0, 1.0])

    def test_centered_uses_known_mean(self):
        s = sg.Sample([1.0, 3.0], known_mean=0.0)
        assert np.array_equal(s.centered(), [1.0, 3.0])

    def test_validation(self):
        with pytest.raises(ValueError):
            sg.Sample([])
        with pytest.raises(ValueError):
            sg.Sample([[1.0, 2.0]])
        with pytest.raises(ValueError):
            sg.Sample([1.0, math.nan])
        with pytest.raises(ValueError):
            sg.Sample([1.0], known_mean=math.inf)


class TestGaussian:
    def test_even_moments(self):
        g = sg.Gaussian(sigma=1.5)
        for k in range(1, 5):
            want = sg.double_factorial_odd(k) * 1.5 ** (2 * k)
            assert g.central_even_moment(k) == pytest.approx(want, rel=1e-12)

    def test_abs_first_moment(self):
        assert sg.Gaussian().abs_moment_root(1) == pytest.approx(
            math.sqrt(2.0 / math.pi), rel=1e-12
        )

    def test_exp_square_mean(self):
        g = sg.Gaussian()
        assert g.exp_square_mean(2.0) == pytest.approx(math.sqrt(2.0), rel=1e-12)
        assert g.exp_square_mean(1.0) == math.inf  # c^2 < 2 sigma^2 diverges

    def test_sampling_moments(self):
        g = sg.Gaussian(mu=3.0, sigma=2.0)
        x = g.sample(np.random.default_rng(0), 50_000)
        assert x.mean() == pytest.approx(3.0, abs=0.05)
        assert x.std() == pytest.approx(2.0, abs=0.05)

    def test_validation(self):
        with pytest.raises(ValueError):
            sg.Gaussian(sigma=0.0)


class TestUniformSym:
    def test_even_moments(self):
        u = sg.UniformSym(a=2.0)
        for k in range(1, 4):
            assert u.central_even_moment(k) == pytest.approx(
                2.0 ** (2 * k) / (2 * k + 1), rel=1e-12
            )

    def test_exp_square_mean_matches_erfi(self):
        u = sg.UniformSym(a=1.0)
        want = math.sqrt(math.pi) * special.erfi(0.5) / (2 * 0.5)
        assert u.exp_square_mean(2.0) == pytest.approx(want, rel=1e-12)

    def test_exp_square_small_argument(self):
        # series limit: E exp(X^2/c^2) -> 1 as c -> inf
        assert sg.UniformSym(a=1.0).exp_square_mean(1e12) == pytest.approx(1.0, abs=1e-12)

    def test_sample_range(self):
        x = sg.UniformSym(a=0.5).sample(np.random.default_rng(1), 1000)
        assert np.all(np.abs(x) <= 0.5)


class TestRademacher:
    def test_moments_and_roots(self):
        r = sg.RademacherScaled(c=2.5)
        assert r.central_even_moment(3) == 2.5**6
        assert r.abs_moment_root(7) == 2.5
        assert r.exp_square_mean(2.5) == pytest.approx(math.e, rel=1e-12)

    def test_sample_support(self):
        x = sg.RademacherScaled(c=3.0).sample(np.random.default_rng(2), 500)
        assert set(np.unique(x)) == {-3.0, 3.0}


class TestBernoulliCentered:
    def test_even_moment_formula(self):
        b = sg.BernoulliCentered(p=0.3)
        for k in (1, 2, 5):
            want = 0.7 * 0.3 ** (2 * k) + 0.3 * 0.7 ** (2 * k)
            assert b.central_even_moment(k) == pytest.approx(want, rel=1e-12)

    def test_variance(self):
        assert sg.BernoulliCentered(p=0.25).variance() == pytest.approx(0.1875)

    def test_abs_moment_root_log_safe(self):
        b = sg.BernoulliCentered(p=0.5)
        # E|X|^p = 0.5^p, so the root is exactly 0.5
        for p in (1, 3, 200):
            assert b.abs_moment_root(p) == pytest.approx(0.5, rel=1e-12)

    def test_exp_square_mean(self):
        b = sg.BernoulliCentered(p=0.5)
        assert b.exp_square_mean(1.0) == pytest.approx(math.exp(0.25), rel=1e-12)
        assert b.exp_square_mean(1e-3) == math.inf

    def test_sample_support_and_mean(self):
        b = sg.BernoulliCentered(p=0.2)
        x = b.sample(np.random.default_rng(3), 20_000)
        assert set(np.round(np.unique(x), 12)) == {-0.2, 0.8}
        assert x.mean() == pytest.approx(0.0, abs=0.02)

    def test_validation(self):
        with pytest.raises(ValueError):
            sg.BernoulliCentered(p=0.0)
        with pytest.raises(ValueError):
            sg.BernoulliCentered(p=1.0)


class TestTruncExp:
    def test_centered_mean_is_zero(self):
        t = sg.TruncExpCentered(cutoff=3.0)
        assert t.mean() == 0.0
        x = t.sample(np.random.default_rng(4), 100_000)
        assert x.mean() == pytest.approx(0.0, abs=0.01)

    def test_sample_support(self):
        t = sg.TruncExpCentered(cutoff=2.0)
        x = t.sample(np.random.default_rng(5), 5000)
        assert np.all(x >= -t.trunc_mean - 1e-12)
        assert np.all(x <= 2.0 - t.trunc_mean + 1e-12)

    def test_variance_matches_even_moment(self):
        t = sg.TruncExpCentered(cutoff=2.75)
        assert t.variance() == t.central_even_moment(1)

    def test_validation(self):
        with pytest.raises(ValueError):
            sg.TruncExpCentered(cutoff=0.0)


class TestGaussianMixture:
    def test_even_moment_formula(self):
        m = sg.GaussianMixture(p=0.5, sigma1=2.0, sigma2=1.0)
        for k in (1, 2, 3):
            want = sg.double_factorial_odd(k) * (0.5 * 4.0**k + 0.5 * 1.0)
            assert m.central_even_moment(k) == pytest.approx(want, rel=1e-12)

    def test_exp_square_mean(self):
        m = sg.GaussianMixture(p=0.5, sigma1=2.0, sigma2=1.0)
        c = 4.0
        want = 0.5 / math.sqrt(1 - 8 / 16) + 0.5 / math.sqrt(1 - 2 / 16)
        assert m.exp_square_mean(c) == pytest.approx(want, rel=1e-12)
        assert m.exp_square_mean(2.0) == math.inf  # 2 sigma1^2 / c^2 = 2

    def test_sample_mean_zero(self):
        m = sg.GaussianMixture()
        x = m.sample(np.random.default_rng(6), 50_000)
        assert x.mean() == pytest.approx(0.0, abs=0.05)

    def test_validation(self):
        with pytest.raises(ValueError):
            sg.GaussianMixture(p=0.5, sigma1=1.0, sigma2=1.0)
        with pytest.raises(ValueError):
            sg.GaussianMixture(p=1.5)


class TestCrossChecks:
    @given(
        st.integers(min_value=1, max_value=6),
        st.floats(min_value=0.2, max_value=3.0),
    )
    @settings(max_examples=40, deadline=None)
    def test_abs_even_power_consistency(self, k, sigma):
        # (E|X|^{2k})^{1/2k} must equal the 2k-th central moment root
        g = sg.Gaussian(sigma=sigma)
        via_abs = g.abs_moment_root(2 * k)
        via_even = g.central_even_moment(k) ** (1.0 / (2 * k))
        assert via_abs == pytest.approx(via_even, rel=1e-10)

    def test_monte_carlo_even_moments(self):
        rng = np.random.default_rng(7)
        dists = [
            sg.Gaussian(sigma=1.0),
            sg.UniformSym(a=1.0),
            sg.BernoulliCentered(p=0.3),
            sg.TruncExpCentered(cutoff=3.0),
            sg.GaussianMixture(),
        ]
        for dist in dists:
            x = dist.sample(rng, 200_000)
            x = x - (x.mean() - 0.0)  # center empirically to kill MC mean drift
            m2 = float(np.mean(x**2))
            assert m2 == pytest.approx(dist.central_even_moment(1), rel=0.05)
