"""Tail bounds, confidence intervals, and the normal quantile."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import ndtr, ndtri

import subgnorm as sg


class TestMgfBound:
    def test_symmetric_unit(self):
        assert sg.mgf_bound(2.0, 1.0, symmetric=True) == pytest.approx(math.exp(2.0))

    def test_asymmetric_factor(self):
        sym = sg.mgf_bound(1.5, 1.0, symmetric=True)
        asym = sg.mgf_bound(1.5, 1.0, symmetric=False)
        assert math.log(asym) / math.log(sym) == pytest.approx(17.0 / 12.0, rel=1e-12)

    def test_saturates_with_warning(self):
        with pytest.warns(RuntimeWarning):
            v = sg.mgf_bound(1e9, 1.0, symmetric=True)
        assert v > 1e300


class TestSumTail:
    def test_symmetric_example(self):
        p = sg.TailBoundParams(norms=[1.0], symmetric=True)
        assert sg.sum_tail_bound(2.0, p) == pytest.approx(2.0 * math.exp(-2.0), rel=1e-12)

    def test_asymmetric_example(self):
        p = sg.TailBoundParams(norms=[1.0], symmetric=False)
        assert sg.sum_tail_bound(2.0, p) == pytest.approx(
            2.0 * math.exp(-(12.0 / 17.0) * 2.0), rel=1e-12
        )

    def test_at_zero_and_clamp(self):
        p = sg.TailBoundParams(norms=[1.0, 2.0], symmetric=True)
        assert sg.sum_tail_bound(0.0, p) == 1.0
        assert sg.sum_tail_bound(0.1, p) == 1.0  # 2 e^{-tiny} clamps at 1

    def test_all_zero_norms(self):
        p = sg.TailBoundParams(norms=[0.0, 0.0], symmetric=True)
        assert sg.sum_tail_bound(1.0, p) == 0.0
        assert sg.sum_tail_bound(0.0, p) == 1.0

    @given(st.floats(min_value=0.0, max_value=30.0), st.floats(min_value=0.0, max_value=30.0))
    @settings(max_examples=40, deadline=None)
    def test_monotone_nonincreasing(self, s1, s2):
        p = sg.TailBoundParams(norms=[1.0, 0.5], symmetric=True)
        lo, hi = sorted((s1, s2))
        assert sg.sum_tail_bound(hi, p) <= sg.sum_tail_bound(lo, p) + 1e-15


class TestIntrinsicCI:
    def test_example(self):
        ci = sg.intrinsic_ci(0.0, 1.0, 100, 0.05, symmetric=True)
        assert ci.half_width == pytest.approx(math.sqrt(2.0 * math.log(40.0) / 100.0), rel=1e-12)
        assert ci.level == pytest.approx(0.95)
        assert ci.lower == -ci.upper

    def test_zero_norm(self):
        assert sg.intrinsic_ci(3.0, 0.0, 10, 0.1, symmetric=True).half_width == 0.0

    def test_asymmetric_ratio(self):
        s = sg.intrinsic_ci(0.0, 1.0, 50, 0.05, symmetric=True).half_width
        a = sg.intrinsic_ci(0.0, 1.0, 50, 0.05, symmetric=False).half_width
        assert a / s == pytest.approx(math.sqrt(17.0 / 12.0), rel=1e-12)

    @given(st.integers(min_value=1, max_value=10_000), st.integers(min_value=1, max_value=10_000))
    @settings(max_examples=30, deadline=None)
    def test_shrinks_with_n(self, n1, n2):
        lo, hi = sorted((n1, n2))
        w_lo = sg.intrinsic_ci(0.0, 1.0, lo, 0.05, symmetric=True).half_width
        w_hi = sg.intrinsic_ci(0.0, 1.0, hi, 0.05, symmetric=True).half_width
        assert w_hi <= w_lo + 1e-15


class TestHoeffdingCI:
    def test_unit_interval_example(self):
        ci = sg.hoeffding_ci(0.5, 0.0, 1.0, 100, 0.05)
        assert ci.half_width == pytest.approx(
            math.sqrt(math.log(40.0) / 100.0) / math.sqrt(2.0), rel=1e-12
        )

    def test_delta_near_one(self):
        ci = sg.hoeffding_ci(0.0, 0.0, 1.0, 50, 1.0 - 1e-12)
        assert ci.half_width == pytest.approx(
            math.sqrt(math.log(2.0) / 50.0) / math.sqrt(2.0), rel=1e-6
        )

    @given(st.floats(min_value=0.05, max_value=20.0))
    @settings(max_examples=25, deadline=None)
    def test_scales_with_range(self, c):
        base = sg.hoeffding_ci(0.0, -1.0, 1.0, 30, 0.1).half_width
        scaled = sg.hoeffding_ci(0.0, -c, c, 30, 0.1).half_width
        assert scaled == pytest.approx(c * base, rel=1e-12)

    def test_rejects_empty_interval(self):
        with pytest.raises(ValueError):
            sg.hoeffding_ci(0.0, 1.0, 1.0, 10, 0.05)


class TestBerryEsseenCI:
    def test_minimum_feasible_sizes(self):
        assert sg.be_clt_min_n(0.05) == 269
        assert sg.be_clt_min_n(0.075) == 120
        assert sg.be_clt_min_n(0.1) == 68

    def test_boundary(self):
        assert sg.be_clt_ci(269, 0.05).feasible
        assert not sg.be_clt_ci(268, 0.05).feasible
        assert not sg.be_clt_ci(67, 0.1).feasible
        assert sg.be_clt_ci(68, 0.1).feasible

    def test_infeasible_shape(self):
        ci = sg.be_clt_ci(10, 0.05)
        assert not ci.feasible
        assert math.isinf(ci.half_width)

    def test_feasible_value(self):
        ci = sg.be_clt_ci(269, 0.05)
        arg = 0.025 - sg.BE_CORRECTION / math.sqrt(269.0)
        expect = -sg.inverse_normal_cdf(arg) / (2.0 * math.sqrt(269.0))
        assert ci.half_width == pytest.approx(expect, rel=1e-12)
        assert ci.half_width > 0


class TestWrongHoeffding:
    def test_formula_example(self):
        ci = sg.wrong_hoeffding_gaussian_ci(100, 1.0, 0.05)
        lg = math.log(80.0)
        expect = 2.0 * math.sqrt(lg / 100.0) * (math.sqrt(lg) + math.sqrt(math.log(100.0)))
        assert ci.half_width == pytest.approx(expect, rel=1e-12)
        assert ci.half_width == pytest.approx(1.77485, abs=5e-5)

    def test_dominates_intrinsic(self):
        for n in (2, 10, 100, 10_000):
            for alpha in (0.01, 0.05, 0.2):
                wrong = sg.wrong_hoeffding_gaussian_ci(n, 1.0, alpha).half_width
                right = sg.intrinsic_ci(0.0, 1.0, n, alpha, symmetric=True).half_width
                assert wrong >= right

    def test_ratio_grows_with_n(self):
        ratios = []
        for n in (100, 1000, 10_000):
            wrong = sg.wrong_hoeffding_gaussian_ci(n, 1.0, 0.05).half_width
            right = sg.intrinsic_ci(0.0, 1.0, n, 0.05, symmetric=True).half_width
            ratios.append(wrong / right)
        assert ratios[0] < ratios[1] < ratios[2]


class TestReverseChernoff:
    def test_gaussian_constant_at_zero(self):
        assert sg.reverse_chernoff_lower(0.0, 1.0, 1.0) == pytest.approx(16.0 / 729.0, rel=1e-12)

    def test_below_true_gaussian_tail(self):
        t = np.linspace(0.0, 2.0, 200)
        true_tail = 1.0 - ndtr(t)
        for ti, tt in zip(t, true_tail):
            assert sg.reverse_chernoff_lower(float(ti), 1.0, 1.0) <= tt + 1e-15

    def test_clamped_to_unit_interval(self):
        for ti in (0.0, 1.0, 5.0, 40.0):
            v = sg.reverse_chernoff_lower(ti, 1.0, 1.0)
            assert 0.0 <= v <= 1.0

    def test_rejects_bad_norm_pair(self):
        with pytest.raises(ValueError):
            sg.reverse_chernoff_lower(1.0, 1.0, 1.5)
        with pytest.raises(ValueError):
            sg.reverse_chernoff_lower(1.0, 1.0, 0.0)


class TestMaxBounds:
    def test_upper_formula(self):
        mb = sg.max_bounds(1_000_000, 0.05, 1.0, 1.0)
        assert mb.upper == pytest.approx(
            math.sqrt(2.0 * math.log(1e6) + 2.0 * math.log(40.0)), rel=1e-12
        )

    def test_gaussian_lower_value(self):
        mb = sg.max_bounds(1_000_000, 0.05, 1.0, 1.0)
        c_sq = 16.0 / 729.0
        expect = 0.5 * math.sqrt(math.log(1e6 * c_sq) - math.log(math.log(40.0)))
        assert mb.lower == pytest.approx(expect, rel=1e-12)
        assert mb.lower_defined

    def test_small_n_lower_undefined(self):
        mb = sg.max_bounds(2, 0.05, 1.0, 1.0)
        assert not mb.lower_defined
        assert mb.lower == 0.0

    @given(st.integers(min_value=2, max_value=10**9), st.floats(min_value=0.001, max_value=0.5))
    @settings(max_examples=50, deadline=None)
    def test_sandwich(self, n, delta):
        mb = sg.max_bounds(n, delta, 1.0, 1.0)
        assert mb.lower <= mb.upper


class TestInverseNormalCdf:
    def test_key_quantile(self):
        assert sg.inverse_normal_cdf(0.975) == pytest.approx(1.959963985, abs=1e-9)

    def test_against_scipy_grid(self):
        grid = np.concatenate([
            np.geomspace(1e-12, 0.4, 300),
            np.linspace(0.4, 0.6, 100),
            1.0 - np.geomspace(1e-12, 0.4, 300),
        ])
        for p in grid:
            assert sg.inverse_normal_cdf(float(p)) == pytest.approx(
                float(ndtri(p)), abs=1e-9
            )

    @given(st.floats(min_value=1e-6, max_value=1.0 - 1e-6))
    @settings(max_examples=60, deadline=None)
    def test_symmetry(self, p):
        # tighter tails would test the rounding of 1 - p, not the quantile
        assert sg.inverse_normal_cdf(p) == pytest.approx(
            -sg.inverse_normal_cdf(1.0 - p), abs=1e-9
        )

    def test_domain_errors(self):
        for bad in (0.0, 1.0, -0.2, 1.4):
            with pytest.raises(ValueError):
                sg.inverse_normal_cdf(bad)
