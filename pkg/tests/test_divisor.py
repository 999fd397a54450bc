import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from isingv.divisor import (
    SIGMA_O_UPPER,
    DivisorTable,
    cached_divisor_table,
    check_sigma_identities,
    fig1_table,
    lambert_L,
    s_generating,
    s_generating_qderiv,
    sigma_k,
    sigma_o_minus2,
)
from isingv.errors import DomainError


class TestSigma:
    def test_examples(self):
        assert sigma_o_minus2(1) == 1
        assert sigma_o_minus2(3) == Fraction(10, 9)
        assert sigma_o_minus2(2) == 1
        assert sigma_k(6, 2) == 50
        assert sigma_k(1, 2) == 1
        assert sigma_k(12, 0) == 6

    def test_identities_examples(self):
        assert 9 * sigma_o_minus2(3) == sigma_k(3, 2) == 10
        assert 16 * sigma_o_minus2(4) == sigma_k(4, 2) - sigma_k(2, 2) == 16
        assert check_sigma_identities(1)

    def test_identities_exhaustive(self):
        assert all(check_sigma_identities(n) for n in range(1, 10_001))

    @given(st.integers(1, 500), st.integers(1, 500))
    @settings(max_examples=60, deadline=None)
    def test_multiplicativity(self, m, n):
        if math.gcd(m, n) == 1:
            assert sigma_o_minus2(m * n) == sigma_o_minus2(m) * sigma_o_minus2(n)

    def test_bounds_to_1e5(self):
        table = cached_divisor_table(100_000)
        vals = table.sigma_o_floats()
        assert float(vals.min()) >= 1.0
        assert float(vals.max()) < SIGMA_O_UPPER

    def test_table_matches_scalar(self):
        table = DivisorTable(500)
        for n in (1, 2, 17, 360, 499):
            assert table.sigma_o_minus2[n] == sigma_o_minus2(n)
            assert table.sigma_2[n] == sigma_k(n, 2)


class TestGeneratingFunction:
    def test_zero(self):
        assert s_generating(0.0) == 0.0

    def test_matches_singular_sum(self):
        from isingv.boundary import singular_sum

        z = -0.5 * cmath.exp(1j * math.pi * 0.3)
        got = s_generating(z, tol=1e-13)
        want = singular_sum(0.3, math.log(2.0) / math.pi, tol=1e-13)
        assert abs(got - want) < 1e-11

    def test_z_derivative_lambert_chain(self):
        # z d/dz S(-z) = -4 sum n^2/(z^n - z^{-n})
        z = 0.3
        lhs = s_generating_qderiv(-z, tol=1e-13)  # = 4 sum n^2 sigma z^n
        rhs = -4.0 * sum(n * n / (z**n - z ** (-n)) for n in range(1, 400))
        assert abs(lhs - rhs) < 1e-11

    def test_divergence(self):
        with pytest.raises(DomainError):
            s_generating(1.0)
        with pytest.raises(DomainError):
            s_generating(-1.2)


class TestLambert:
    def test_zero(self):
        assert lambert_L(0.0) == 0.0

    def test_brute_force_partial_sum(self):
        q = 0.5
        n = np.arange(1, 10_001, dtype=float)
        brute = float(np.sum(n * n * q**n / (1.0 - q**n)))
        assert abs(lambert_L(q, tol=1e-13) - brute) < 1e-10

    def test_q_derivative_identity_at_anchor(self):
        # q dS/dq = 4 L_{-q}(2,1) - 4 L_{q^2}(2,1), derivative by central
        # differences on S (Richardson over h and h/2; bare h = 1e-5 leaves
        # ~2e-10 of roundoff)
        q = 0.4 * cmath.exp(0.2j * math.pi)
        h = 4e-5
        d1 = (s_generating(-(q + h), tol=1e-14) - s_generating(-(q - h), tol=1e-14)) / (2 * h)
        d2 = (s_generating(-(q + h / 2), tol=1e-14) - s_generating(-(q - h / 2), tol=1e-14)) / h
        fd = q * (4.0 * d2 - d1) / 3.0
        rhs = 4.0 * lambert_L(-q, tol=1e-14) - 4.0 * lambert_L(q * q, tol=1e-14)
        assert abs(fd - rhs) < 1e-10

    def test_q_derivative_identity_disk(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            q = rng.uniform(0.1, 0.7) * cmath.exp(1j * rng.uniform(0, 2 * math.pi))
            lhs = s_generating_qderiv(q, tol=1e-14)
            rhs = 4.0 * lambert_L(-q, tol=1e-14) - 4.0 * lambert_L(q * q, tol=1e-14)
            assert abs(lhs - rhs) < 1e-10

    def test_divergence(self):
        with pytest.raises(DomainError):
            lambert_L(1.0)


class TestFig1:
    def test_row_count(self):
        tab = fig1_table(3000)
        assert len(tab.rows) == 3000

    def test_bounds_per_row(self):
        tab = fig1_table(3000)
        for row in tab.rows:
            assert 1.0 <= row[1] < SIGMA_O_UPPER

    def test_powers_of_two_exact(self):
        tab = fig1_table(2048)
        for k in range(12):
            assert tab.rows[2**k - 1][1] == 1.0

    def test_headers(self):
        tab = fig1_table(5)
        assert tab.headers == ["n", "sigma_o_minus2", "n_sigma_o_minus2"]
