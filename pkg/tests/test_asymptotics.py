import math

import numpy as np
import pytest

from dirichlet_lab import arith
from dirichlet_lab import asymptotics as asy


def log_weight_riemann_oracle(l_value, alpha, n_points=10**6):
    """Independent j = 2 oracle: midpoint rule in u = log(1/t) on [0, U] plus
    the closed-form tail of (1+u)^{-(alpha+1)} where e^{-t L} is already 1."""
    u_max = math.log(l_value * 1e10)
    u = (np.arange(n_points) + 0.5) * u_max / n_points
    body = np.sum(np.exp(-l_value * np.exp(-u)) * (1.0 + u) ** (-(alpha + 1.0)))
    body *= u_max / n_points
    tail = (1.0 + u_max) ** (-alpha) / alpha
    return body + tail


class TestIterLog:
    def test_depth_zero_is_identity_on_positives(self):
        assert asy.iter_log_plus(0, 7.0) == 7.0
        assert asy.iter_log_plus(0, -3.0) == 0.0

    def test_double_log_of_e_to_e(self):
        assert asy.iter_log_plus(2, math.exp(math.e)) == pytest.approx(1.0)

    def test_clipping(self):
        assert asy.iter_log_plus(1, 0.5) == 0.0
        assert asy.iter_log_plus(3, 1.0) == 0.0

    def test_array_input_matches_scalar(self):
        xs = np.array([0.0, 0.5, 1.0, math.e, 10.0, 1e6])
        got = asy.iter_log_plus(2, xs)
        want = [asy.iter_log_plus(2, float(x)) for x in xs]
        np.testing.assert_allclose(got, want, rtol=0, atol=0)

    def test_nondecreasing(self):
        xs = np.linspace(0, 100, 500)
        for j in (0, 1, 2, 3):
            vals = asy.iter_log_plus(j, xs)
            assert np.all(np.diff(vals) >= 0)
            assert np.all(vals >= 0)

    def test_negative_depth_rejected(self):
        with pytest.raises(ValueError):
            asy.iter_log_plus(-1, 2.0)


class TestETower:
    def test_values(self):
        e = asy.e_tower(3)
        assert e[0] == 1.0
        assert e[1] == math.e
        assert e[2] == pytest.approx(math.exp(math.e))
        for a, b in zip(e, e[1:]):
            assert b == pytest.approx(math.exp(a))

    def test_overflow_guard(self):
        with pytest.raises(ValueError):
            asy.e_tower(4)

    def test_params_type(self):
        p = asy.IterLogParams(j=2, alpha=1.5)
        assert p.e == asy.e_tower(2)
        with pytest.raises(ValueError):
            asy.IterLogParams(j=-1, alpha=1.0)
        with pytest.raises(ValueError):
            asy.IterLogParams(j=1, alpha=0.0)


class TestLogWeightIntegral:
    def test_riemann_sum_agreement(self):
        l_value = math.e**3
        got = asy.log_weight_integral(l_value, 1.0, 2)
        oracle = log_weight_riemann_oracle(l_value, 1.0)
        assert got == pytest.approx(oracle, rel=1e-6)

    def test_decays_to_zero_in_l(self):
        values = [asy.log_weight_integral(math.e**k, 1.0, 2) for k in range(2, 10)]
        assert all(b < a for a, b in zip(values, values[1:]))
        assert values[-1] < 0.12

    def test_asymptotic_ratio_near_one(self):
        l_value = math.e**6
        integral = asy.log_weight_integral(l_value, 1.0, 2)
        # alpha I log_2 n = I log L should be 1 up to O(1/log L)
        assert abs(integral * math.log(l_value) - 1.0) <= 2.0 / math.log(l_value)

    def test_subinterval_additivity(self):
        l_value = math.e**4
        total = asy.log_weight_integral(l_value, 1.5, 2)
        left = asy.log_weight_integral(l_value, 1.5, 2, t_max=0.25)
        right = asy.log_weight_integral(l_value, 1.5, 2, t_min=0.25)
        assert left + right == pytest.approx(total, rel=1e-9)

    def test_tail_piece_exponentially_small(self):
        # the t > 1/sqrt(L) piece is exponentially small, per the split-point structure
        l_value = math.e**4
        sqrt_l = math.sqrt(l_value)
        tail = asy.log_weight_integral(l_value, 1.0, 2, t_min=1.0 / sqrt_l)
        assert tail <= 10.0 * math.exp(-sqrt_l) * sqrt_l

    def test_j3_against_direct_quadrature(self):
        # independent route: integrate in u = log(1/t) with explicit factors
        from scipy.integrate import quad

        l_value = math.e**2
        e2 = math.exp(math.e)

        def integrand(u):
            return (
                math.exp(-l_value * math.exp(-u))
                / (1.0 + u)
                * math.log(math.e + u) ** -2.5
            )

        body = sum(
            quad(integrand, a, b, limit=300, epsabs=1e-14)[0]
            for a, b in zip([0, 50, 1e3, 1e6], [50, 1e3, 1e6, 1e9])
        )
        # tail beyond u = 1e9: integrand ~ d[(log(e+u))^{-1.5}]/1.5 * (1+u)/(e+u)
        tail = math.log(math.e + 1e9) ** -1.5 / 1.5
        got = asy.log_weight_integral(l_value, 1.5, 3)
        assert got == pytest.approx(body + tail, rel=1e-4)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            asy.log_weight_integral(0.0, 1.0, 2)
        with pytest.raises(ValueError):
            asy.log_weight_integral(10.0, -1.0, 2)
        with pytest.raises(ValueError):
            asy.log_weight_integral(10.0, 1.0, 1)
        with pytest.raises(ValueError):
            asy.log_weight_integral(10.0, 1.0, 2, t_min=0.5, t_max=0.25)


class TestLogWeightAsymptotic:
    def test_quarter(self):
        assert asy.log_weight_asymptotic(math.e**4, 1.0, 2) == pytest.approx(0.25)

    def test_alpha_two(self):
        assert asy.log_weight_asymptotic(math.e**4, 2.0, 2) == pytest.approx(1.0 / 32.0)

    def test_ratio_trend_to_one(self):
        ratios = []
        for k in range(3, 10):
            l_value = math.e**k
            ratios.append(
                asy.log_weight_integral(l_value, 1.0, 2) / asy.log_weight_asymptotic(l_value, 1.0, 2)
            )
        errs = [abs(r - 1.0) for r in ratios]
        assert all(b < a for a, b in zip(errs, errs[1:]))
        assert errs[-1] < 0.15

    def test_degenerate(self):
        with pytest.raises(ValueError):
            asy.log_weight_asymptotic(0.5, 1.0, 2)  # log log n = 0


class TestNu:
    def test_at_zero(self):
        assert asy.nu(0.0) == 1.0

    def test_at_one(self):
        assert asy.nu(1.0) == pytest.approx(1.0, abs=1e-12)

    def test_convergence_at_three_halves(self):
        a = asy.nu(1.5, asy.NuProductConfig(prime_cutoff=10**6))
        b = asy.nu(1.5, asy.NuProductConfig(prime_cutoff=2 * 10**6))
        assert abs(a - b) <= 1e-6

    def test_cutoff_stability_improves(self):
        z = 1.2 + 0.3j
        diffs = []
        for p_cut in (10**4, 10**5, 10**6):
            a = asy.nu(z, asy.NuProductConfig(prime_cutoff=p_cut))
            b = asy.nu(z, asy.NuProductConfig(prime_cutoff=2 * p_cut))
            diffs.append(abs(a - b))
        assert diffs[2] < diffs[1] < diffs[0]

    def test_derivative_stable_under_cutoff_doubling(self):
        h = 1e-5

        def deriv(p_cut):
            cfg = asy.NuProductConfig(prime_cutoff=p_cut)
            return (asy.nu(1.0 + h, cfg) - asy.nu(1.0 - h, cfg)).real / (2 * h)

        d1, d2 = deriv(10**5), deriv(2 * 10**5)
        assert d1 == pytest.approx(d2, abs=1e-5)

    def test_domain(self):
        with pytest.raises(ValueError):
            asy.nu(2.0)
        with pytest.raises(ValueError):
            asy.nu(1.5 + 1.4j)

    def test_tail_bound_reported(self):
        bound = asy.nu_tail_residual_bound(1.5, asy.NuProductConfig(prime_cutoff=10**5))
        assert 0 < bound < 1e-6


class TestSatheSelberg:
    def test_k1_is_x_over_log_x(self):
        x = 10**6
        assert asy.sathe_selberg_Nk(x, 1) == pytest.approx(x / math.log(x), rel=1e-12)

    def test_against_sieve_at_1e6(self):
        table = arith.build_factor_table(10**6)
        hist = arith.count_omega_classes(table)
        for k in (2, 3, 4):
            pred = asy.sathe_selberg_Nk(10**6, k)
            assert abs(pred / hist.counts[k] - 1.0) < 0.25

    def test_prediction_peaks_near_loglog(self):
        x = 10**7
        ll = math.log(math.log(x))
        ks = range(1, 6)  # stays inside the nu domain at this X
        preds = [asy.sathe_selberg_Nk(x, k) for k in ks]
        k_star = list(ks)[int(np.argmax(preds))]
        assert abs(k_star - ll) <= 1.0

    def test_error_scale_column(self):
        assert asy.sathe_selberg_error_scale(10**7, 3) == pytest.approx(
            3 / math.log(math.log(10**7)) ** 2
        )

    def test_domain(self):
        with pytest.raises(ValueError):
            asy.sathe_selberg_Nk(10.0, 1)
        with pytest.raises(ValueError):
            asy.sathe_selberg_Nk(10**7, 0)
        with pytest.raises(ValueError):
            asy.sathe_selberg_Nk(10**7, 7)  # (k-1)/loglog X >= 2


class TestAvgOrderPrediction:
    def test_double_exponential(self):
        x = math.exp(math.exp(2.0))
        pred = asy.avg_order_prediction(x, 1.0)
        assert pred.main == pytest.approx(2.0 * x, rel=1e-12)

    def test_1e7(self):
        pred = asy.avg_order_prediction(10**7, 1.0)
        assert pred.main == pytest.approx(10**7 * 2.779943, rel=1e-6)

    def test_ratio_identity(self):
        x = 10**5
        ll = math.log(math.log(x))
        p1 = asy.avg_order_prediction(x, 1.0)
        p2 = asy.avg_order_prediction(x, 2.0)
        assert p2.main / p1.main == pytest.approx(ll, rel=1e-12)
        assert p1.error_scale == pytest.approx(x, rel=1e-12)

    def test_alpha_below_one_needs_exploratory(self):
        with pytest.raises(ValueError):
            asy.avg_order_prediction(10**5, 0.5)
        pred = asy.avg_order_prediction(10**5, 0.5, exploratory=True)
        assert pred.main > 0


class TestNicolasBound:
    def test_zero_at_top_index(self):
        x = 2.0**20
        assert asy.nicolas_range_bound(x, 20, 1.0) == 0.0

    def test_decreasing_in_k(self):
        x = 10**6
        ks = range(5, int(math.log2(x)))
        vals = [asy.nicolas_range_bound(x, k, 1.0) for k in ks]
        assert all(b < a for a, b in zip(vals, vals[1:]))

    def test_direct_evaluation(self):
        # spec's example row pairs X = 1e6 with k = 25, but 2^25 > 1e6 violates
        # the stated precondition; evaluate the formula where it is defined
        x, k = 10**8, 25
        ratio = x / 2**25
        assert asy.nicolas_range_bound(x, k, 1.0) == pytest.approx(ratio * math.log(ratio))
        with pytest.raises(ValueError):
            asy.nicolas_range_bound(10**6, 25, 1.0)


class TestKsStatistic:
    def test_quantile_construction(self):
        from scipy.special import ndtri

        n = 999
        samples = ndtri((np.arange(1, n + 1)) / (n + 1))
        assert asy.ks_statistic(samples) <= 1.0 / (n + 1) + 1e-7

    def test_constant_samples(self):
        assert asy.ks_statistic(np.zeros(100)) >= 0.5

    def test_gaussian_samples_small(self):
        rng = np.random.default_rng(3)
        ks = asy.ks_statistic(rng.standard_normal(20000))
        assert ks < 0.02

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            asy.ks_statistic([])

    def test_normal_cdf_reference_values(self):
        assert asy.normal_cdf(0.0) == pytest.approx(0.5, abs=1e-12)
        assert float(asy.normal_cdf(1.96)) == pytest.approx(0.9750021048517795, abs=1e-10)
        assert float(asy.normal_cdf(-1.0)) == pytest.approx(0.15865525393145707, abs=1e-10)
