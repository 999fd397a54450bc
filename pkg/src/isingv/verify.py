"""Named invariant suites, one per module, shared by the CLI and the tests.

Each check returns a CheckResult; a suite is a list of those.  Thresholds
are pinned here (they are part of the package's acceptance surface, not
tunables); the tol argument only steers the underlying quadrature/series
evaluations.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = ["CheckResult", "SUITES", "run_suite", "run_all"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _check(name, passed, detail=""):
    return CheckResult(name=name, passed=bool(passed), detail=detail)


# ----------------------------------------------------------------------------
# v function
# ----------------------------------------------------------------------------

def verify_v(tol=1e-10):
    from .vfn import (
        v_borel_laplace,
        v_integral,
        v_integral_from_kappa,
        v_loggamma_sum,
        v_mellin_barnes,
        v_series_coeff,
        v_series_coeff_bernoulli,
        v_series_coeff_dirichlet,
        v_series_truncated,
    )

    out = []
    qtol = min(tol, 1e-12)

    worst = 0.0
    for n in (2.0, 3.0, 5.0, 10.0, 1 + 1j, 3 * cmath.exp(1j * math.pi / 3)):
        vals = [
            v_integral(n, tol=qtol).value,
            v_mellin_barnes(n, tol=qtol).value,
            v_loggamma_sum(n).value,
            v_borel_laplace(n, 0.0, tol=qtol).value,
        ]
        worst = max(worst, max(abs(a - b) for a in vals for b in vals))
    out.append(_check("v.four_route_agreement", worst < 1e-9, f"max spread {worst:.2e}"))

    d = abs(
        v_integral_from_kappa(0.125, tol=qtol).value
        - v_integral_from_kappa(-0.125, tol=qtol).value
    )
    out.append(_check("v.evenness_in_kappa", d < 1e-12, f"delta {d:.2e}"))

    worst = 0.0
    for n in range(1, 13):
        a = v_series_coeff(n)
        rb = abs(a - v_series_coeff_bernoulli(n)) / abs(a)
        rd = abs(a - v_series_coeff_dirichlet(n)) / abs(a)
        worst = max(worst, rb, rd)
    c1 = abs(v_series_coeff(1) + math.pi**2 / 384.0)
    out.append(
        _check(
            "v.coefficient_triple_identity",
            worst < 1e-12 and c1 < 1e-14,
            f"worst rel {worst:.2e}, |c1 + pi^2/384| = {c1:.2e}",
        )
    )

    signs_ok = all(
        math.copysign(1.0, v_series_coeff(n)) == (-1.0) ** n for n in range(1, 21)
    )
    ratio_ok = True
    worst_ratio = 0.0
    for n in range(8, 16):
        got = abs(v_series_coeff(n + 1) / v_series_coeff(n))
        # exact leading form: (n/(n+1)) (2n+2)(2n+3)/(2 pi)^2, zeta factors -> 1
        want = (n / (n + 1)) * (2 * n + 2) * (2 * n + 3) / (2.0 * math.pi) ** 2
        dev = abs(got / want - 1.0)
        worst_ratio = max(worst_ratio, dev)
        ratio_ok &= dev < 0.05
    out.append(
        _check(
            "v.sign_alternation_and_growth",
            signs_ok and ratio_ok,
            f"worst ratio dev {worst_ratio:.2e}",
        )
    )

    v10 = v_integral(10.0, tol=qtol).value
    tr = v_series_truncated(10.0)
    # the superasymptotic bound, clamped at the double-precision floor
    opt_ok = abs(tr.value - v10) < max(tr.abs_err, 100.0 * 2.2e-16 * abs(v10))
    tr5 = v_series_truncated(5.0)
    v5 = v_integral(5.0, tol=qtol).value
    dec_ok = abs(tr.value - v10) < abs(tr5.value - v5)
    tr1 = v_series_truncated(100.0, order=1)
    v100 = v_integral(100.0, tol=qtol).value
    lead_ok = abs(tr1.value - v100) / abs(v100) < 0.01
    out.append(
        _check(
            "v.optimal_truncation",
            opt_ok and dec_ok and lead_ok,
            f"N=10 err {abs(tr.value - v10):.2e} < "
            f"max(omitted {tr.abs_err:.2e}, double floor)",
        )
    )

    big = abs(v_integral(1e6, tol=qtol).value)
    out.append(_check("v.large_N_limit", big < 1e-12, f"|v(1e6)| = {big:.2e}"))
    return out


# ----------------------------------------------------------------------------
# boundary
# ----------------------------------------------------------------------------

def _reflection_grid():
    xs = np.linspace(0.08, 0.92, 5)
    ys = [0.05, 0.17, 0.38, 0.64, 1.0]
    pts = [(float(x), float(s * y)) for x in xs for y in ys for s in (1.0, -1.0)]
    return pts[:50]


def verify_boundary(tol=1e-10):
    from .boundary import (
        RationalAngle,
        SingularityLaw,
        classify_boundary_point,
        cosine_sum_rule,
        dominant_cosine_sum,
        imag_singular_sum,
        reflection_residual,
        singular_sum,
        singularity_fit,
    )
    from .special import barnes_constants
    from .special import alternating_zeta_tail

    out = []
    qtol = min(tol, 1e-12)

    worst = max(abs(reflection_residual(x, y, tol=qtol)) for x, y in _reflection_grid())
    out.append(_check("boundary.reflection_identity_grid", worst < 1e-8,
                      f"worst residual {worst:.2e} on 50 points"))

    # alternating Barnes constant series, psi-tail closed analytically
    m = 64
    n = np.arange(1, m + 1, dtype=float)
    psi = np.log(n * (n + 2.0) / (n + 1.0) ** 2)
    partial = float(np.sum((-1.0) ** n * (n + 1.0) * psi))
    tail = 0.0
    sgn = (-1.0) ** (m + 1)
    for r in range(1, 13):
        tail -= (1.0 / r) * (
            sgn * (m + 1.0) ** (1 - 2 * r) - alternating_zeta_tail(2 * r - 1, m).real
        )
    lhs = -0.5 * (partial + tail)
    bc = barnes_constants()
    rhs = math.log(2.0) + 2.0 * math.log(bc.g_product)
    out.append(_check("boundary.barnes_constant_series", abs(lhs - rhs) < 1e-10,
                      f"|delta| = {abs(lhs - rhs):.2e}"))

    rng = np.random.default_rng(20260809)
    n_samples = 100_000
    xs = rng.uniform(-1.0, 1.0, n_samples)
    ys = np.exp(rng.uniform(math.log(1e-3), 0.0, n_samples))
    bound_ok = True
    margin = 0.0
    order = np.argsort(ys)
    chunk = 2000
    for i0 in range(0, n_samples, chunk):
        idx = order[i0 : i0 + chunk]
        y_min = float(ys[idx].min())
        k_max = int(math.ceil(50.0 / (2.0 * math.pi * y_min))) + 1
        k = np.arange(k_max, dtype=float)
        odd = 2.0 * k + 1.0
        with np.errstate(under="ignore"):
            omega = np.exp(
                np.outer(-math.pi * ys[idx], odd)
                + 1j * np.outer(math.pi * xs[idx], odd)
            )
        s = (-4.0 / odd[None, :] * omega / (1.0 + omega) ** 2).sum(axis=1)
        ratio = np.abs(s) * 2.0 * ys[idx] ** 2
        margin = max(margin, float(ratio.max()))
        bound_ok &= bool(np.all(ratio <= 1.0))
    out.append(_check("boundary.power_law_bound", bound_ok,
                      f"max |S| * 2y^2 = {margin:.6f} over {n_samples} samples"))

    grid = np.logspace(-4, -2, 25)
    worst_rel = 0.0
    law_ok = True
    for den in range(2, 21):
        for num in range(1, den):
            if math.gcd(num, den) != 1:
                continue
            x = RationalAngle(num, den)
            cls = classify_boundary_point(x)
            fit = singularity_fit(x, grid, tol=qtol)
            law_ok &= fit.law is cls.law
            worst_rel = max(worst_rel, abs(fit.fitted_coeff / cls.predicted_coeff - 1.0))
    out.append(_check("boundary.singularity_laws_den_le_20",
                      law_ok and worst_rel < 0.05,
                      f"worst coeff dev {worst_rel:.2%}"))

    worst = 0.0
    for p in range(1, 9):
        for q in range(0, 6):
            worst = max(worst, abs(cosine_sum_rule(p, q) - 2.0 ** (2 * p - 1)))
    out.append(_check("boundary.cosine_sum_rule", worst < 1e-10, f"worst {worst:.2e}"))

    x = 3.0 / 8.0
    cal = abs(singular_sum(x, 1e-1, tol=qtol).real - dominant_cosine_sum(x, 1e-1))
    excess = 0.0
    ok = True
    for y in (3e-2, 1e-2, 3e-3, 1e-3, 3e-4, 1e-4):
        d = abs(singular_sum(x, y, tol=qtol).real - dominant_cosine_sum(x, y))
        excess = max(excess, d / cal)
        ok &= d <= 2.0 * cal
    out.append(_check("boundary.dominant_sum_consistency", ok,
                      f"max diff / calibration = {excess:.2f}"))

    anti = abs(imag_singular_sum(0.31, 0.22) + imag_singular_sum(0.31, -0.22))
    zero_x0 = abs(imag_singular_sum(0.0, 0.4))
    slope = abs(imag_singular_sum(1.0 / 3.0, 1e-2)) / 1e-2
    lin_ok = all(
        abs(imag_singular_sum(1.0 / 3.0, y)) <= 1.5 * slope * y
        for y in (3e-3, 1e-3, 3e-4, 1e-4)
    )
    out.append(_check("boundary.imag_part_structure",
                      anti < 1e-13 and zero_x0 == 0.0 and lin_ok,
                      f"antisym {anti:.2e}, linear-approach ok {lin_ok}"))
    return out


# ----------------------------------------------------------------------------
# divisor
# ----------------------------------------------------------------------------

def verify_divisor(tol=1e-10):
    from .divisor import (
        SIGMA_O_UPPER,
        cached_divisor_table,
        check_sigma_identities,
        fig1_table,
        lambert_L,
        s_generating,
        s_generating_qderiv,
    )

    out = []
    ok = all(check_sigma_identities(n) for n in range(1, 10_001))
    out.append(_check("divisor.sigma_identities_1e4", ok, "exact rational check"))

    table = cached_divisor_table(100_000)
    vals = table.sigma_o_floats()
    lo, hi = float(vals.min()), float(vals.max())
    out.append(_check("divisor.bounds_1e5", lo >= 1.0 and hi < SIGMA_O_UPPER,
                      f"range [{lo:.6f}, {hi:.6f}] vs pi^2/8 = {SIGMA_O_UPPER:.6f}"))

    mult_ok = True
    for m in range(2, 101):
        for n in range(m + 1, 10_000 // m + 1):
            if math.gcd(m, n) != 1:
                continue
            if table.sigma_o_minus2[m * n] != table.sigma_o_minus2[m] * table.sigma_o_minus2[n]:
                mult_ok = False
    out.append(_check("divisor.multiplicativity", mult_ok, "coprime m n <= 1e4"))

    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(20):
        q = rng.uniform(0.1, 0.7) * cmath.exp(1j * rng.uniform(0, 2 * math.pi))
        ds = s_generating_qderiv(q, tol=1e-14)
        rhs = 4.0 * lambert_L(-q, tol=1e-14) - 4.0 * lambert_L(q * q, tol=1e-14)
        worst = max(worst, abs(ds - rhs))
    # anchor point with the derivative taken by central differences on S itself
    q0 = 0.4 * cmath.exp(0.2j * math.pi)
    h = 4e-5
    d1 = (s_generating(-(q0 + h), tol=1e-14) - s_generating(-(q0 - h), tol=1e-14)) / (2 * h)
    d2 = (s_generating(-(q0 + h / 2), tol=1e-14) - s_generating(-(q0 - h / 2), tol=1e-14)) / h
    fd = q0 * (4.0 * d2 - d1) / 3.0
    fd_res = abs(fd - (4.0 * lambert_L(-q0, tol=1e-14) - 4.0 * lambert_L(q0 * q0, tol=1e-14)))
    out.append(_check("divisor.lambert_identity", worst < 1e-10 and fd_res < 1e-10,
                      f"worst {worst:.2e} (20 pts, analytic q-derivative); "
                      f"finite-difference anchor {fd_res:.2e}"))

    tab = fig1_table(3000)
    rows_ok = len(tab.rows) == 3000
    in_bounds = all(1.0 <= r[1] < SIGMA_O_UPPER for r in tab.rows)
    pow2_ok = all(tab.rows[2**k - 1][1] == 1.0 for k in range(0, 12))
    out.append(_check("divisor.fig1_table", rows_ok and in_bounds and pow2_ok,
                      f"{len(tab.rows)} rows, bounds ok, powers of 2 exact"))
    return out


# ----------------------------------------------------------------------------
# resurgence
# ----------------------------------------------------------------------------

def verify_resurgence(tol=1e-10):
    from .resurgence import borel_pole_coeffs, borel_transform, stokes_discontinuity
    from .vfn import v_borel_laplace, v_integral

    out = []
    qtol = min(tol, 1e-12)

    worst = 0.0
    for l in (1, 2, 3):
        target = borel_pole_coeffs(l).double_pole_coeff
        pole = 2j * math.pi * l
        for phi in (0.0, math.pi / 2, math.pi, 1.5 * math.pi):
            e1 = 1e-4
            f1 = (e1 * cmath.exp(1j * phi)) ** 2 * borel_transform(pole + e1 * cmath.exp(1j * phi))
            f2 = (0.5 * e1 * cmath.exp(1j * phi)) ** 2 * borel_transform(
                pole + 0.5 * e1 * cmath.exp(1j * phi)
            )
            worst = max(worst, abs(2.0 * f2 - f1 - target))
    out.append(_check("resurgence.pole_coefficient_limits", worst < 1e-6,
                      f"worst Laurent-limit error {worst:.2e}"))

    worst = 0.0
    for n in (2 - 2j, 3 - 1.5j, 1.5 - 2.5j):
        up = v_borel_laplace(n, math.pi / 2 + 0.15, tol=qtol).value
        dn = v_borel_laplace(n, math.pi / 2 - 0.15, tol=qtol).value
        disc = stokes_discontinuity(n, l_max=40)
        worst = max(worst, abs((up - dn) - disc) / abs(disc))
    out.append(_check("resurgence.stokes_discontinuity", worst < 1e-4,
                      f"worst relative mismatch {worst:.2e}"))

    worst = max(
        abs(v_borel_laplace(float(n), 0.0, tol=qtol).value - v_integral(float(n), tol=qtol).value)
        for n in (3, 5, 10)
    )
    out.append(_check("resurgence.laplace_reproduces_v", worst < 1e-10,
                      f"worst {worst:.2e}"))

    b = borel_transform(1e-3) / 1e-3
    small_t = abs(b / (-math.pi**2 / 384.0) - 1.0)
    odd = abs(borel_transform(0.7 + 0.3j) + borel_transform(-0.7 - 0.3j))
    ray1 = v_borel_laplace(10.0, 0.3, tol=qtol).value
    ray2 = v_borel_laplace(10.0, -0.3, tol=qtol).value
    out.append(_check("resurgence.transform_structure",
                      small_t < 1e-6 and odd < 1e-13 and abs(ray1 - ray2) < 1e-10,
                      f"small-t rel {small_t:.2e}, oddness {odd:.2e}, "
                      f"ray independence {abs(ray1 - ray2):.2e}"))
    return out


# ----------------------------------------------------------------------------
# leg functions / Chern-Simons
# ----------------------------------------------------------------------------

def verify_cs(tol=1e-10):
    from .legcs import (
        LegRoute,
        cs_identity_residual,
        gamma_hat,
        gamma_hat_defining,
        leg_asymptotic,
        leg_asymptotic_term,
        leg_p,
        leg_p_from_gamma_hat,
        one_point,
        product_P,
    )

    out = []
    qtol = min(tol, 1e-12)

    worst = 0.0
    for n in (2, 3, 5, 8):
        for k in range(n):
            z = cmath.exp(2j * math.pi * k / n)
            a = leg_p(z, n, route=LegRoute.SQRT_PRODUCT).value
            b = leg_p(z, n, route=LegRoute.FINITE_PRODUCT).value
            worst = max(worst, abs(a - b) / abs(a))
            if k > 0:
                c = leg_p_from_gamma_hat(n, k, tol=qtol).value
                worst = max(worst, abs(a - c) / abs(a))
    out.append(_check("cs.leg_route_agreement", worst < 1e-10,
                      f"worst rel {worst:.2e} over N in {{2,3,5,8}}"))

    d = abs(gamma_hat(6, 2, tol=qtol) - gamma_hat_defining(6, 2, tol=qtol))
    edge = gamma_hat(8, 7, tol=qtol)
    out.append(_check("cs.gamma_hat_representations",
                      d < 1e-10 and math.isfinite(edge.real),
                      f"two-integral delta {d:.2e}, k=N-1 finite"))

    ok = True
    for n in range(1, 31):
        product_P(n, rel_tol=1e-9)
    out.append(_check("cs.product_routes_N_le_30", ok, "p-ratio vs sine form"))

    worst = max(cs_identity_residual(n) for n in range(1, 51))
    out.append(_check("cs.partition_identity_N_le_50", worst < 1e-9,
                      f"worst residual {worst:.2e}"))

    worst = 0.0
    for n in (1, 2, 3, 4, 6, 8, 12, 16):
        op = one_point(n, tol=qtol)
        worst = max(worst, abs(op.via_v - op.via_p))
    out.append(_check("cs.one_point_cross_check", worst < 1e-8,
                      f"worst |via_v - via_P| = {worst:.2e}"))

    gh = gamma_hat(40, 2, tol=1e-14)
    ok = True
    worst = 0.0
    for n_max in (1, 2, 3):
        err = abs(gh - leg_asymptotic(40, 2, n_max))
        omit = abs(leg_asymptotic_term(40, 2, n_max + 1))
        worst = max(worst, err / omit)
        ok &= err <= 1.01 * omit  # same-sign geometric tail adds ~(k/N)^2
    out.append(_check("cs.asymptotic_truncation_bound", ok,
                      f"max err/first-omitted = {worst:.4f} (bound 1.01)"))
    return out


# ----------------------------------------------------------------------------
# Mordell
# ----------------------------------------------------------------------------

def verify_mordell(tol=1e-10):
    from .mordell import (
        fig2_scan,
        j_dual,
        j_mellin_barnes,
        j_quadrature,
        j_reflection_residual,
        mordell_f1,
        mordell_f2,
    )

    out = []
    qtol = min(tol, 1e-12)

    worst = max(
        abs(j_quadrature(t, tol=qtol).value - j_mellin_barnes(t, tol=qtol).value)
        for t in (0.3, 1.0, 2.0)
    )
    out.append(_check("mordell.quadrature_vs_contour", worst < 1e-10,
                      f"worst {worst:.2e}"))

    worst = 0.0
    for t in (-0.2, -1.0, -math.pi, -5.0):
        mb = j_mellin_barnes(complex(t), tol=qtol, arg_t=math.pi).value
        du = j_dual(t, "+", k_max=800).value
        worst = max(worst, abs(mb - du))
    conj = abs(j_dual(-1.0, "+").value.conjugate() - j_dual(-1.0, "-").value)
    out.append(_check("mordell.dual_decomposition", worst < 1e-8 and conj < 1e-14,
                      f"worst |MB - dual| {worst:.2e} (upper branch, incl. t = -pi)"))

    tab_p = fig2_scan(points=301, sign="+")
    tab_m = fig2_scan(points=301, sign="-")
    tab_m2 = fig2_scan(points=301, sign="-", k_max=1200)
    re_m = np.array(tab_m.column("re_J"))
    stable = float(np.max(np.abs(re_m - np.array(tab_m2.column("re_J")))))

    def changes(v):
        s = np.sign(v)
        return int(np.sum(s[1:] * s[:-1] < 0))

    c_plus = changes(np.array(tab_p.column("re_J")))
    c_minus = changes(re_m)
    osc_ok = c_minus >= 10 * max(c_plus, 1)
    out.append(_check("mordell.fig2_scan", stable < 1e-8 and osc_ok,
                      f"k-stability {stable:.2e}; sign changes regular side {c_plus}, "
                      f"boundary side {c_minus}"))

    r = abs(j_reflection_residual(-0.5, 0.3, tol=qtol))
    f1p = mordell_f1(complex(-0.5, 0.3)).real
    f1m = mordell_f1(complex(-0.5, -0.3)).real
    f2p = mordell_f2(complex(-0.5, 0.3)).real
    f2m = mordell_f2(complex(-0.5, -0.3)).real
    even_ok = abs(f1p - f1m) < 1e-10 and abs(f2p - f2m) < 1e-10
    out.append(_check("mordell.even_y_projection", r < 1e-8 and even_ok,
                      f"residual {r:.2e}, evenness of the term split ok"))

    fan_ok = True
    prev = None
    for deg in np.linspace(60.0, 200.0, 36):
        val = j_mellin_barnes(cmath.exp(1j * math.radians(deg)), tol=1e-10,
                              arg_t=math.radians(deg)).value
        if prev is not None and abs(val - prev) > 0.15:
            fan_ok = False
        prev = val
    out.append(_check("mordell.analyticity_fan", fan_ok,
                      "contour route continuous across Arg t = pi/2 and pi"))
    return out


SUITES = {
    "v": verify_v,
    "boundary": verify_boundary,
    "divisor": verify_divisor,
    "resurgence": verify_resurgence,
    "cs": verify_cs,
    "mordell": verify_mordell,
}


def run_suite(name, tol=1e-10):
    if name == "all":
        return run_all(tol=tol)
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    return SUITES[name](tol=tol)


def run_all(tol=1e-10):
    out = []
    for name in ("v", "boundary", "divisor", "resurgence", "cs", "mordell"):
        out.extend(SUITES[name](tol=tol))
    return out
