import cmath
import math

import numpy as np
import pytest

from isingv.errors import PoleError
from isingv.resurgence import borel_pole_coeffs, borel_transform, stokes_discontinuity
from isingv.vfn import v_borel_laplace, v_integral


class TestBorelTransform:
    def test_small_t_slope(self):
        # B(t)/t -> -pi^2/384 as t -> 0
        b = borel_transform(1e-3) / 1e-3
        assert abs(b / (-math.pi**2 / 384.0) - 1.0) < 1e-6

    def test_oddness(self):
        t = 0.8 + 0.4j
        assert abs(borel_transform(-t) + borel_transform(t)) < 1e-13

    def test_laplace_consistency(self):
        d = abs(v_borel_laplace(10.0, 0.0, tol=1e-13).value - v_integral(10.0, tol=1e-13).value)
        assert d < 1e-10

    def test_near_pole_guard(self):
        with pytest.raises(PoleError):
            borel_transform(2j * math.pi + 1e-8)
        with pytest.raises(PoleError):
            borel_transform(0.0)

    def test_array_evaluation(self):
        t = np.array([0.5, 1.0, 2.0], dtype=complex)
        out = borel_transform(t)
        assert out.shape == (3,)
        assert abs(out[1] - borel_transform(1.0)) < 1e-16


class TestPoleData:
    def test_l1_coefficients(self):
        d = borel_pole_coeffs(1)
        assert abs(d.double_pole_coeff - 4j / math.pi) < 1e-15
        assert abs(d.single_pole_coeff + 2.0 / math.pi**2) < 1e-16

    def test_l2_coefficients(self):
        # sigma_{-2}^o(2) = 1
        d = borel_pole_coeffs(2)
        assert abs(d.double_pole_coeff + 8j / math.pi) < 1e-15
        assert abs(d.single_pole_coeff - 2.0 / math.pi**2) < 1e-16

    def test_l0_rejected(self):
        with pytest.raises(PoleError):
            borel_pole_coeffs(0)

    @pytest.mark.parametrize("l", [1, 2, 3])
    def test_numeric_laurent_limit(self, l):
        target = borel_pole_coeffs(l).double_pole_coeff
        pole = 2j * math.pi * l
        for phi in (0.0, math.pi / 2, math.pi, 1.5 * math.pi):
            step = cmath.exp(1j * phi)
            f = lambda eps: (eps * step) ** 2 * borel_transform(pole + eps * step)
            lim = 2.0 * f(5e-5) - f(1e-4)  # one Richardson level in eps
            assert abs(lim - target) < 1e-6


class TestStokes:
    def test_l1_term(self):
        n = 0.7 - 1.3j
        got = stokes_discontinuity(n, l_max=1)
        want = 4j / math.pi * (1.0 + 2j * math.pi * n) * cmath.exp(-2j * math.pi * n)
        assert abs(got - want) < 1e-15 * abs(want)

    def test_lateral_laplace_difference(self):
        n = 2.0 - 2.0j
        up = v_borel_laplace(n, math.pi / 2 + 0.15, tol=1e-13).value
        dn = v_borel_laplace(n, math.pi / 2 - 0.15, tol=1e-13).value
        disc = stokes_discontinuity(n, l_max=20)
        assert abs((up - dn) - disc) < 1e-6

    def test_three_point_relative_accuracy(self):
        for n in (2.0 - 2.0j, 3.0 - 1.5j, 1.5 - 2.5j):
            up = v_borel_laplace(n, math.pi / 2 + 0.15, tol=1e-13).value
            dn = v_borel_laplace(n, math.pi / 2 - 0.15, tol=1e-13).value
            disc = stokes_discontinuity(n, l_max=40)
            assert abs((up - dn) - disc) / abs(disc) < 1e-4

    def test_damping_with_imaginary_depth(self):
        assert abs(stokes_discontinuity(2.0 - 4.0j)) < abs(stokes_discontinuity(2.0 - 2.0j))

    def test_warns_on_upper_half_plane(self):
        with pytest.warns(RuntimeWarning):
            stokes_discontinuity(2.0 + 1.0j, l_max=3)
