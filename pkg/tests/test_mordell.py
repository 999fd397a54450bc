import cmath
import math

import numpy as np
import pytest

from isingv.errors import DecayStallError, DomainError
from isingv.mordell import (
    MordellRoute,
    fig2_scan,
    j_dual,
    j_dual_continued,
    j_mellin_barnes,
    j_quadrature,
    j_reflection_residual,
    mordell_f1,
    mordell_f2,
    psi_false_theta,
    psi_truncation_index,
)


class TestQuadratureRoute:
    def test_gaussian_limit(self):
        t = 1e-3
        got = j_quadrature(t).value
        want = (1.0 / 6.0) * math.sqrt(math.pi * t / 3.0)
        assert abs(got / want - 1.0) < 1e-2

    def test_integrand_bound(self):
        # 0 < J(t) <= (1/6) sqrt(pi t/3) from 0 < sinh u / sinh 3u <= 1/3
        for t in (0.1, 1.0, 5.0):
            v = j_quadrature(t).value.real
            assert 0.0 < v <= (1.0 / 6.0) * math.sqrt(math.pi * t / 3.0)

    def test_domain(self):
        with pytest.raises(DomainError):
            j_quadrature(-1.0)

    def test_route_tag(self):
        assert j_quadrature(1.0).route is MordellRoute.QUADRATURE


class TestContourRoute:
    @pytest.mark.parametrize("t", [0.3, 1.0, 2.0])
    def test_matches_quadrature(self, t):
        a = j_quadrature(t, tol=1e-13).value
        b = j_mellin_barnes(t, tol=1e-13).value
        assert abs(a - b) < 1e-10

    def test_contour_shift_invariance(self):
        a = j_mellin_barnes(1.0, tol=1e-13, re_u=0.3).value
        b = j_mellin_barnes(1.0, tol=1e-13, re_u=0.7).value
        assert abs(a - b) < 1e-11

    def test_upper_negative_axis_matches_dual(self):
        t = 0.1 * cmath.exp(1j * math.pi)  # e^{i pi} * 0.1
        a = j_mellin_barnes(t, tol=1e-12, arg_t=math.pi).value
        b = j_dual(-0.1, "+", k_max=800).value
        assert abs(a - b) < 1e-9

    def test_domain(self):
        with pytest.raises(DomainError):
            j_mellin_barnes(1.0, re_u=1.2)
        with pytest.raises(DomainError):
            j_mellin_barnes(1.0, arg_t=1.51 * math.pi)

    def test_decay_stall_near_boundary(self):
        with pytest.raises(DecayStallError):
            j_mellin_barnes(1.0, arg_t=1.45 * math.pi, tol=1e-10, t_cap=60.0)

    def test_analyticity_fan(self):
        prev = None
        for deg in np.linspace(60.0, 200.0, 29):
            val = j_mellin_barnes(
                cmath.exp(1j * math.radians(deg)), tol=1e-10, arg_t=math.radians(deg)
            ).value
            if prev is not None:
                assert abs(val - prev) < 0.15
            prev = val


class TestFalseTheta:
    def test_deep_negative_leading_term(self):
        # psi -> e^{t/3}; the next term e^{4t/3} ~ 1e-29 sits far below the
        # rounding floor of the leading exponential, so compare relatively
        t = -50.0
        psi = psi_false_theta(t, 64)
        assert abs(psi / math.exp(t / 3.0) - 1.0) < 1e-13

    def test_converged_at_half(self):
        assert abs(psi_false_theta(-0.5, 200) - psi_false_theta(-0.5, 400)) < 1e-14

    def test_truncation_index_scale(self):
        # a few hundred terms are required at Re t = -2e-4; the fixed 800
        # budget is sufficient with margin
        k_need = psi_truncation_index(-2e-4, eps=1e-16)
        assert 200 <= k_need <= 800
        a = psi_false_theta(-2e-4, 800)
        b = psi_false_theta(-2e-4, 1600)
        assert abs(a - b) < 1e-14

    def test_divergence(self):
        with pytest.raises(DomainError):
            psi_false_theta(0.5, 100)


class TestDualDecomposition:
    @pytest.mark.parametrize("t", [-0.2, -1.0, -math.pi, -5.0])
    def test_matches_contour_upper_branch(self, t):
        mb = j_mellin_barnes(complex(t), tol=1e-12, arg_t=math.pi).value
        du = j_dual(t, "+", k_max=800).value
        assert abs(mb - du) < 1e-8

    def test_self_dual_point(self):
        # t = -pi: both series parameters equal -pi
        assert abs(-math.pi - math.pi**2 / (-math.pi)) < 1e-15
        mb = j_mellin_barnes(complex(-math.pi), tol=1e-13, arg_t=math.pi).value
        du = j_dual(-math.pi, "+", k_max=800).value
        assert abs(mb - du) < 1e-10

    def test_conjugate_symmetry(self):
        a = j_dual(-1.0, "+").value
        b = j_dual(-1.0, "-").value
        assert abs(a.conjugate() - b) < 1e-15

    def test_domain(self):
        with pytest.raises(DomainError):
            j_dual(1.0, "+")
        with pytest.raises(DomainError):
            j_dual(-1.0, "x")


class TestReflection:
    def test_residual_small(self):
        assert abs(j_reflection_residual(-0.5, 0.3)) < 1e-8

    def test_term_split_even_in_y(self):
        t = complex(-0.5, 0.3)
        tb = complex(-0.5, -0.3)
        assert abs(mordell_f1(t).real - mordell_f1(tb).real) < 1e-10
        assert abs(mordell_f2(t).real - mordell_f2(tb).real) < 1e-10

    def test_boundary_value_consistency(self):
        # y -> 0+: J(x, y) + J(x, -y) -> 2 A~ + 2i A with A~ = Re j_dual(+),
        # A = Im j_dual(+) (both one-sided limits live on the upper branch)
        x = -0.5
        du_p = j_dual(x, "+", k_max=400).value
        lim = j_dual_continued(complex(x, 1e-6), "upper") + j_dual_continued(
            complex(x, -1e-6), "upper"
        )
        assert abs(lim - (2.0 * du_p.real + 2j * du_p.imag)) < 1e-4

    def test_domain(self):
        with pytest.raises(DomainError):
            j_reflection_residual(0.5, 0.3)


class TestFig2:
    def test_row_count_and_headers(self):
        tab = fig2_scan(points=41, sign="+")
        assert len(tab.rows) == 41
        assert tab.headers == ["y", "re_J", "im_J", "branch_sign"]

    def test_oscillation_contrast(self):
        tab_p = fig2_scan(points=301, sign="+")
        tab_m = fig2_scan(points=301, sign="-")

        def changes(vals):
            s = np.sign(vals)
            return int(np.sum(s[1:] * s[:-1] < 0))

        c_reg = changes(np.array(tab_p.column("re_J")))
        c_bad = changes(np.array(tab_m.column("re_J")))
        assert c_bad >= 10 * max(c_reg, 1)

    def test_truncation_stability(self):
        a = np.array(fig2_scan(points=101, sign="-", k_max=800).column("re_J"))
        b = np.array(fig2_scan(points=101, sign="-", k_max=1200).column("re_J"))
        assert float(np.max(np.abs(a - b))) < 1e-8

    def test_schwarz_pairing_across_branches(self):
        # upper branch at +iy is the conjugate of the lower branch at -iy
        up = fig2_scan(points=31, sign="+", branch="upper")
        lo = fig2_scan(points=31, sign="-", branch="lower")
        for ru, rl in zip(up.rows, lo.rows):
            assert abs(ru[1] - rl[1]) < 1e-13
            assert abs(ru[2] + rl[2]) < 1e-13

    def test_regular_side_matches_contour(self):
        t = complex(-2e-4, 0.9)
        a = j_dual_continued(t, "upper")
        b = j_mellin_barnes(t, tol=1e-12).value
        assert abs(a - b) < 1e-10

    def test_domain(self):
        with pytest.raises(DomainError):
            fig2_scan(re_t=0.1)
        with pytest.raises(DomainError):
            fig2_scan(points=1)
