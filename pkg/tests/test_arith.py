import math

import numpy as np
import pytest

from dirichlet_lab import arith


def omega_trial_division(n):
    """Independent Omega oracle: plain trial division."""
    count = 0
    d = 2
    while d * d <= n:
        while n % d == 0:
            n //= d
            count += 1
        d += 1
    if n > 1:
        count += 1
    return count


def divisor_count_enumeration(n):
    """Independent d(n) oracle: enumerate divisors up to sqrt(n)."""
    count = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            count += 2 if d * d < n else 1
        d += 1
    return count


@pytest.fixture(scope="module")
def table_1e4():
    return arith.build_factor_table(10**4)


@pytest.fixture(scope="module")
def table_1e5():
    return arith.build_factor_table(10**5)


class TestBuildFactorTable:
    def test_hand_factorization_x10(self):
        t = arith.build_factor_table(10)
        assert t.omega[1:11].tolist() == [0, 1, 1, 2, 1, 2, 1, 3, 2, 2]

    def test_x2(self):
        t = arith.build_factor_table(2)
        assert t.spf[2] == 2
        assert t.omega[2] == 1

    def test_prime_count_x30_vs_trial_division(self):
        t = arith.build_factor_table(30)
        expected = sum(1 for n in range(2, 31) if omega_trial_division(n) == 1)
        assert expected == 10
        assert int(np.count_nonzero(t.omega[1:] == 1)) == expected

    def test_invariants_small(self, table_1e4):
        t = table_1e4
        assert t.omega[1] == 0
        spf = t.spf
        for n in range(2, 2000):
            if spf[n] == n:
                assert t.omega[n] == 1
            else:
                assert t.omega[n] == t.omega[n // spf[n]] + 1
        assert int(t.omega.max()) <= math.log2(t.limit)

    def test_omega_vs_trial_division_exhaustive(self, table_1e5):
        om = np.fromiter(
            (omega_trial_division(n) for n in range(1, table_1e5.limit + 1)),
            dtype=np.uint8,
            count=table_1e5.limit,
        )
        assert np.array_equal(table_1e5.omega[1:], om)

    def test_omega_sampled_above_1e5(self):
        t = arith.build_factor_table(10**6)
        rng = np.random.default_rng(7)
        for n in rng.integers(10**5, 10**6, size=300):
            assert t.omega[n] == omega_trial_division(int(n))

    def test_capacity_errors(self):
        with pytest.raises(arith.CapacityError):
            arith.build_factor_table(0)
        with pytest.raises(arith.CapacityError):
            arith.build_factor_table(10**6, ceiling=10**5)

    def test_immutability(self, table_1e4):
        with pytest.raises(ValueError):
            table_1e4.omega[3] = 5


class TestDAlpha:
    def test_d2_is_divisor_count(self, table_1e4):
        assert arith.d_alpha(6, 2, table_1e4) == 4

    def test_d3_prime_square(self, table_1e4):
        assert arith.d_alpha(4, 3, table_1e4) == 6

    def test_half_alpha(self, table_1e4):
        assert arith.d_alpha(2, 0.5, table_1e4) == 0.5

    def test_n_zero_rejected(self, table_1e4):
        with pytest.raises(ValueError):
            arith.d_alpha(0, 1.0, table_1e4)

    def test_alpha_nonpositive_rejected(self, table_1e4):
        with pytest.raises(ValueError):
            arith.d_alpha(6, 0.0, table_1e4)

    @pytest.mark.parametrize("alpha", [0.5, 1, 2, 3])
    def test_multiplicative_on_coprime_pairs(self, alpha, table_1e4):
        rng = np.random.default_rng(11)
        found = 0
        while found < 50:
            m = int(rng.integers(2, 90))
            n = int(rng.integers(2, 90))
            if math.gcd(m, n) != 1:
                continue
            found += 1
            lhs = arith.d_alpha(m * n, alpha, table_1e4)
            rhs = arith.d_alpha(m, alpha, table_1e4) * arith.d_alpha(n, alpha, table_1e4)
            assert lhs == pytest.approx(rhs, rel=1e-14)

    def test_d1_is_one_and_d2_matches_enumeration(self, table_1e4):
        for n in range(1, 10**4 + 1):
            assert arith.d_alpha(n, 1, table_1e4) == 1.0
        for n in range(1, 10**4 + 1):
            assert arith.d_alpha(n, 2, table_1e4) == divisor_count_enumeration(n)


class TestOmegaHistogram:
    def test_x30_n1(self):
        t = arith.build_factor_table(30)
        hist = arith.count_omega_classes(t)
        expected = sum(1 for n in range(2, 31) if omega_trial_division(n) == 1)
        assert hist.counts[1] == expected

    def test_x1(self):
        t = arith.build_factor_table(1)
        hist = arith.count_omega_classes(t)
        assert hist.counts[0] == 1
        assert hist.counts.sum() == 1

    def test_x100_semiprimes(self):
        t = arith.build_factor_table(100)
        hist = arith.count_omega_classes(t)
        expected = sum(1 for n in range(2, 101) if omega_trial_division(n) == 2)
        assert expected == 34
        assert hist.counts[2] == expected

    def test_consistency_identities(self, table_1e5):
        hist = arith.count_omega_classes(table_1e5)
        assert int(hist.counts.sum()) == table_1e5.limit
        k = np.arange(len(hist.counts))
        assert float(k @ hist.counts) == arith.sum_omega_power(table_1e5, 1)

    def test_index_range(self, table_1e4):
        hist = arith.count_omega_classes(table_1e4)
        assert len(hist.counts) == int(math.log(10**4) / math.log(2)) + 1


class TestSumOmegaPower:
    def test_x10_alpha1(self):
        t = arith.build_factor_table(10)
        expected = sum(omega_trial_division(n) for n in range(2, 11))
        assert expected == 15
        assert arith.sum_omega_power(t, 1) == expected

    def test_x1(self):
        t = arith.build_factor_table(1)
        assert arith.sum_omega_power(t, 1) == 0.0
        assert arith.sum_omega_power(t, 2.5) == 0.0

    def test_x4_alpha2(self):
        t = arith.build_factor_table(4)
        assert arith.sum_omega_power(t, 2) == 6.0

    def test_fractional_alpha_vs_direct_sum(self, table_1e4):
        direct = float(np.sum(table_1e4.omega[1:].astype(np.float64) ** 0.5))
        assert arith.sum_omega_power(table_1e4, 0.5) == pytest.approx(direct, rel=1e-12)


class TestErdosKacSamples:
    def test_value_at_16(self):
        t = arith.build_factor_table(16)
        samples = arith.erdos_kac_samples(t)
        ll = math.log(math.log(16))
        assert samples[0] == pytest.approx((4 - ll) / math.sqrt(ll), rel=1e-12)
        assert samples[0] == pytest.approx(2.9512, abs=2e-4)

    def test_prime_formula_instance(self, table_1e4):
        samples = arith.erdos_kac_samples(table_1e4)
        p = 9973  # prime
        ll = math.log(math.log(p))
        assert samples[p - 16] == pytest.approx((1 - ll) / math.sqrt(ll), rel=1e-12)

    def test_sample_mean_1e6(self):
        # Empirical: the mean sits near the Mertens-type constant for Omega
        # (about 1.03) divided by sqrt(log log X); at X = 10^6 that is ~0.68.
        t = arith.build_factor_table(10**6)
        samples = arith.erdos_kac_samples(t)
        assert samples.mean() == pytest.approx(0.6767, abs=0.02)

    def test_n_min_too_small(self, table_1e4):
        with pytest.raises(ValueError):
            arith.erdos_kac_samples(table_1e4, n_min=15)


class TestCache:
    def test_round_trip(self, tmp_path):
        t = arith.build_factor_table(10**4)
        path = tmp_path / "t.dlab"
        arith.save_cache(t, path)
        loaded = arith.load_cache(path)
        assert loaded.limit == t.limit
        assert np.array_equal(loaded.omega, t.omega)
        assert loaded.spf is None
        assert np.array_equal(loaded.require_spf(), t.spf)

    def test_round_trip_bytes_identical(self, tmp_path):
        t = arith.build_factor_table(512)
        p1, p2 = tmp_path / "a", tmp_path / "b"
        arith.save_cache(t, p1)
        arith.save_cache(arith.load_cache(p1), p2)
        assert p1.read_bytes() == p2.read_bytes()

    def test_bad_magic(self, tmp_path):
        path = tmp_path / "bad"
        path.write_bytes(b"NOPE" + bytes(20))
        with pytest.raises(arith.CacheMagicError):
            arith.load_cache(path)

    def test_version_mismatch(self, tmp_path):
        t = arith.build_factor_table(32)
        path = tmp_path / "v"
        arith.save_cache(t, path)
        raw = bytearray(path.read_bytes())
        raw[4] = 99
        path.write_bytes(bytes(raw))
        with pytest.raises(arith.CacheVersionError):
            arith.load_cache(path)

    def test_truncated(self, tmp_path):
        t = arith.build_factor_table(32)
        path = tmp_path / "tr"
        arith.save_cache(t, path)
        raw = path.read_bytes()
        path.write_bytes(raw[:-5])
        with pytest.raises(arith.CacheTruncatedError):
            arith.load_cache(path)

    def test_checksum(self, tmp_path):
        t = arith.build_factor_table(32)
        path = tmp_path / "ck"
        arith.save_cache(t, path)
        raw = bytearray(path.read_bytes())
        raw[20] ^= 0xFF
        path.write_bytes(bytes(raw))
        with pytest.raises(arith.CacheChecksumError):
            arith.load_cache(path)


class TestHelpers:
    def test_primes_upto(self):
        assert arith.primes_upto(30).tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
        assert arith.primes_upto(1).size == 0

    def test_factorize(self, table_1e4):
        assert arith.factorize(360, table_1e4) == [(2, 3), (3, 2), (5, 1)]
        assert arith.factorize(1, table_1e4) == []
        with pytest.raises(ValueError):
            arith.factorize(10**5, table_1e4)
