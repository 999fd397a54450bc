"""Leg functions, their large-N asymptotics, the finite product P, and the
S^3 partition-function identities.

The one-particle leg function is a square-root q-product

    p(Z, q) = prod_{k=0}^{N-1} (sqrt(Z) + q^k) / (sqrt(Z) + q^{k+1/2}),
    q = e^{i pi / N},

with sqrt(Z) taken in the (0, 2 pi) branch.  At the even/odd roots of
unity it has a finite-product form and an integral representation, whose
mutual agreement (together with the product P and the partition-function
identity P = Z^2(2N,2N)/Z^8(N,N)) ties the whole q-product layer to the
v function through the one-point normalization.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np
from scipy.special import gammaln

from .errors import BranchError, DomainError, RouteDisagreementError
from .quadrature import integrate_half_line
from .special import barnes_constants, bernoulli_fraction, bernoulli_poly
from .vfn import v_auto

__all__ = [
    "LegRoute",
    "LegEvaluation",
    "sqrt_branch_02pi",
    "leg_p",
    "gamma_hat",
    "gamma_hat_defining",
    "leg_p_from_gamma_hat",
    "leg_asymptotic",
    "log_product_p_sine",
    "log_product_p_ratio",
    "product_P",
    "cs_partition_log",
    "one_point",
    "OnePointComparison",
    "cs_identity_residual",
]


class LegRoute(str, Enum):
    SQRT_PRODUCT = "sqrt_product"
    FINITE_PRODUCT = "finite_product"
    INTEGRAL_REP = "integral_rep"
    ASYMPTOTIC = "asymptotic"


@dataclass(frozen=True)
class LegEvaluation:
    n: int
    z: complex
    value: complex
    route: LegRoute


def sqrt_branch_02pi(z) -> complex:
    """sqrt(z) with the argument taken in (0, 2 pi).

    Positive real z is ambiguous between the edges; z = 1 is resolved to +1
    (the root-of-unity limit), anything else on the cut raises BranchError.
    """
    z = complex(z)
    if z == 0:
        raise BranchError("sqrt branch undefined at 0")
    if z.imag == 0.0 and z.real > 0.0:
        if z.real == 1.0:
            return 1.0 + 0.0j
        raise BranchError("sqrt branch ambiguous on the positive real axis")
    arg = cmath.phase(z)  # (-pi, pi]
    if arg <= 0.0:
        arg += 2.0 * math.pi
    return cmath.exp(0.5 * (math.log(abs(z)) + 1j * arg))


def _nome(n: int) -> complex:
    return cmath.exp(1j * math.pi / n)


def _root_of_unity_index(z: complex, n: int):
    """Half-integer j with z = q^{2j} (j in {0, 1/2, 1, ...}), or None."""
    if abs(abs(z) - 1.0) > 1e-12:
        return None
    arg = cmath.phase(z)
    if arg < 0.0:
        arg += 2.0 * math.pi
    j2 = arg * n / math.pi  # = 2j
    j2r = round(j2)
    if abs(j2 - j2r) > 1e-9 * n or not 0 <= j2r < 2 * n:
        return None
    return j2r  # twice the index


def _sqrt_product(n: int, root_z: complex) -> complex:
    """prod (root_z + q^k) / (root_z + q^{k+1/2}) as a product of ratios."""
    q = _nome(n)
    value = 1.0 + 0.0j
    for k in range(n):
        value *= (root_z + q**k) / (root_z + q ** (k + 0.5))
    return value


def _finite_product_even(n: int, k: int) -> complex:
    """p(q^{2k}, q) = (N/q^k) prod_l (q^k - q^{l+1/2}) / prod_{l != k} (q^k - q^l)."""
    q = _nome(n)
    num = 1.0 + 0.0j
    den = 1.0 + 0.0j
    for l in range(n):
        num *= q**k - q ** (l + 0.5)
        if l != k:
            den *= q**k - q**l
    return n / q**k * num / den


def _finite_product_odd(n: int, k: int) -> complex:
    """p(q^{2k+1}, q) = (q^{k+1/2}/N) prod_{l != k} (q^{k+1/2} - q^{l+1/2})
    / prod_l (q^{k+1/2} - q^l)."""
    q = _nome(n)
    num = 1.0 + 0.0j
    den = 1.0 + 0.0j
    for l in range(n):
        if l != k:
            num *= q ** (k + 0.5) - q ** (l + 0.5)
        den *= q ** (k + 0.5) - q**l
    return q ** (k + 0.5) / n * num / den


def leg_p(z, n: int, route: LegRoute | None = None) -> LegEvaluation:
    """Leg function p(Z, q) at q = e^{i pi/N}.

    Default route is the square-root product; FINITE_PRODUCT is available
    at the root-of-unity points Z = q^{2j} (and is the only way through
    the branch ambiguity at positive real Z other than Z = 1).
    """
    if n < 1:
        raise DomainError("N must be a positive integer")
    z = complex(z)
    j2 = _root_of_unity_index(z, n)
    if route is None:
        route = LegRoute.SQRT_PRODUCT
        if z.imag == 0.0 and z.real > 0.0 and z.real != 1.0:
            if j2 is None or j2 % 2 == 1:
                raise BranchError(
                    "Z on the positive real axis: branch ambiguous and no even "
                    "root-of-unity route applies"
                )
            route = LegRoute.FINITE_PRODUCT
    if route is LegRoute.SQRT_PRODUCT:
        if j2 is not None and j2 % 2 == 0:
            root = _nome(n) ** (j2 // 2)  # (0,2pi)-branch root at q^{2k}, k=0 limit
        else:
            root = sqrt_branch_02pi(z)
        value = _sqrt_product(n, root)
    elif route is LegRoute.FINITE_PRODUCT:
        if j2 is None:
            raise DomainError("finite-product route needs Z = q^{2j} exactly")
        if j2 % 2 == 0:
            value = _finite_product_even(n, j2 // 2)
        else:
            value = _finite_product_odd(n, (j2 - 1) // 2)
    else:
        raise DomainError(f"route {route} is not a direct evaluation route")
    return LegEvaluation(n=n, z=z, value=complex(value), route=route)


def gamma_hat(n: int, k: int, tol: float = 1e-12) -> complex:
    """Gamma-hat at Z = e^{2 pi i k/N}, 0 < |k| < N:

    ln( sqrt(|k|) Gamma(|k|+1/2) / Gamma(|k|+1) )
      - int_0^inf tanh(t/4N) sinh(|k| t/N) / (t (1 + e^t)) dt.
    """
    if not 0 < abs(k) < n:
        raise DomainError("gamma_hat requires 0 < |k| < N")
    ka = abs(k)
    a = ka / n
    log_part = 0.5 * math.log(ka) + gammaln(ka + 0.5) - gammaln(ka + 1.0)

    def f(t):
        # sinh(a t)/(1+e^t) = (e^{(a-1)t} - e^{-(a+1)t}) / (2 (1 + e^{-t}))
        ratio = (np.exp((a - 1.0) * t) - np.exp(-(a + 1.0) * t)) / (
            2.0 * (1.0 + np.exp(-t))
        )
        return np.tanh(t / (4.0 * n)) * ratio / t

    r = integrate_half_line(f, tol=tol)
    return complex(log_part - r.value)


def gamma_hat_defining(n: int, k: int, tol: float = 1e-12) -> complex:
    """Gamma-hat from its defining (0,1) integral at Z = e^{2 pi i k/N},

    -i (sqrt(Z) - 1/sqrt(Z)) int_0^1 dt/(2 pi sqrt(t)) (1+t)
        / ((1 - Z t)(1 - t/Z)) ln[(1 - t^N)/(1 + t^N)],

    mapped onto the half-line by t = e^{-s} (log endpoint singularity
    handled by the double-exponential rule).
    """
    if not 0 < abs(k) < n:
        raise DomainError("gamma_hat requires 0 < |k| < N")
    c = 2.0 * math.cos(2.0 * math.pi * k / n)
    pref = 2.0 * math.sin(math.pi * abs(k) / n)  # -i (sqrt(Z) - 1/sqrt(Z)), real

    def f(s):
        t = np.exp(-s)
        tn = np.exp(-n * s)
        denom = 1.0 - c * t + t * t  # (1 - Z t)(1 - t/Z), real
        # ln(1 - t^N) via expm1: the log endpoint singularity stays finite
        # at nodes where e^{-N s} rounds to 1
        log_ratio = np.log(-np.expm1(-n * s)) - np.log1p(tn)
        return np.exp(-0.5 * s) / (2.0 * math.pi) * (1.0 + t) / denom * log_ratio

    r = integrate_half_line(f, tol=tol)
    return complex(pref * r.value)


def leg_p_from_gamma_hat(n: int, k: int, tol: float = 1e-12) -> LegEvaluation:
    """p(q^{2k}, q) = exp( Gamma-hat - ln(1 - Z^{-1/2})/2 + ln(1 + Z^{-1/2})/2 )."""
    gh = gamma_hat(n, k, tol=tol)
    root_inv = cmath.exp(-1j * math.pi * k / n)  # 1/sqrt(Z) in the (0,2pi) branch
    value = cmath.exp(gh - 0.5 * cmath.log(1.0 - root_inv) + 0.5 * cmath.log(1.0 + root_inv))
    return LegEvaluation(n=n, z=cmath.exp(2j * math.pi * k / n), value=value,
                         route=LegRoute.INTEGRAL_REP)


def leg_asymptotic(n: int, k: int, n_max: int = 8) -> complex:
    """Large-N asymptotics of Gamma-hat at Z = e^{2 pi i k/N}:

    ln( sqrt(|k|) Gamma(|k|+1/2)/Gamma(|k|+1) )
      + sum_{m=1}^{n_max} (4^m - 2) B_{2m}
            [B_{2m+1}(|k|) + B_{2m+1}(|k|+1) - 2 B_{2m+1}(|k|+1/2)]
            / (4 m (2m+1)!) (i pi / N)^{2m},

    with the Bernoulli bracket evaluated in exact rational arithmetic
    ((i pi/N)^{2m} = (-1)^m (pi/N)^{2m} supplies the alternation; the sign
    is pinned by Richardson extrapolation of the defining integral).
    Divergent in m; truncation error is bounded by the first omitted term.
    """
    if not 1 <= n_max <= 20:
        raise DomainError("asymptotic order n_max must be in 1..20")
    ka = abs(k)
    total = 0.5 * math.log(ka) + gammaln(ka + 0.5) - gammaln(ka + 1.0)
    for m in range(1, n_max + 1):
        bracket = (
            bernoulli_poly(2 * m + 1, Fraction(ka))
            + bernoulli_poly(2 * m + 1, Fraction(ka + 1))
            - 2 * bernoulli_poly(2 * m + 1, Fraction(2 * ka + 1, 2))
        )
        coeff = (
            Fraction(4**m - 2)
            * bernoulli_fraction(2 * m)
            * bracket
            / (4 * m * math.factorial(2 * m + 1))
        )
        total += float(coeff) * (-1.0) ** m * (math.pi / n) ** (2 * m)
    return complex(total)


def leg_asymptotic_term(n: int, k: int, m: int) -> float:
    """The m-th correction term of the Gamma-hat asymptotics (sign included)."""
    ka = abs(k)
    bracket = (
        bernoulli_poly(2 * m + 1, Fraction(ka))
        + bernoulli_poly(2 * m + 1, Fraction(ka + 1))
        - 2 * bernoulli_poly(2 * m + 1, Fraction(2 * ka + 1, 2))
    )
    coeff = (
        Fraction(4**m - 2)
        * bernoulli_fraction(2 * m)
        * bracket
        / (4 * m * math.factorial(2 * m + 1))
    )
    return float(coeff) * (-1.0) ** m * (math.pi / n) ** (2 * m)


# ----------------------------------------------------------------------------
# The product P and the S^3 partition function
# ----------------------------------------------------------------------------

def log_product_p_sine(n: int) -> float:
    """ln P from the closed sine form

    P = (4 N^2)^N [ prod_{l=1}^{2N-1} sin(pi l/4N)^{2N-l}
                    / prod_{l=1}^{N-1} sin(pi l/2N)^{4N-4l} ]^2.
    """
    if n < 1:
        raise DomainError("N must be >= 1")
    l1 = np.arange(1, 2 * n, dtype=float)
    l2 = np.arange(1, n, dtype=float)
    top = float(np.sum((2 * n - l1) * np.log(np.sin(math.pi * l1 / (4 * n)))))
    bot = float(np.sum((4 * n - 4 * l2) * np.log(np.sin(math.pi * l2 / (2 * n))))) if n > 1 else 0.0
    return n * math.log(4.0 * n * n) + 2.0 * (top - bot)


def log_product_p_ratio(n: int) -> complex:
    """ln P as the log-sum of the leg-function ratio product
    prod_k p(q^{2k}, q) / p(q^{2k+1}, q), factor by factor."""
    q = _nome(n)
    total = 0.0 + 0.0j
    for k in range(n):
        root_even = q**k
        root_odd = q ** (k + 0.5)
        for l in range(n):
            total += cmath.log(root_even + q**l) - cmath.log(root_even + q ** (l + 0.5))
            total -= cmath.log(root_odd + q**l) - cmath.log(root_odd + q ** (l + 0.5))
    return total


def product_P(n: int, rel_tol: float = 1e-9) -> float:
    """P(q) with both routes evaluated in log space; returns the sine form
    and raises RouteDisagreementError beyond rel_tol (imaginary parts
    compared mod 2 pi)."""
    ln_sine = log_product_p_sine(n)
    ln_ratio = log_product_p_ratio(n)
    d_re = ln_ratio.real - ln_sine
    d_im = (ln_ratio.imag + math.pi) % (2.0 * math.pi) - math.pi
    mismatch = math.hypot(d_re, d_im)
    if mismatch > rel_tol * max(1.0, abs(ln_sine)):
        raise RouteDisagreementError(
            f"P routes disagree at N={n}: |delta ln P| = {mismatch:.3e}"
        )
    return math.exp(ln_sine)


def cs_partition_log(n: int, k: int) -> complex:
    """ln Z(N, k) for the S^3 partition function,

    ln Z = i pi N^2/4 - (N/2) ln(k+N) + ((N^2-N)/2) ln 2
           + sum_{l=1}^{N-1} (N-l) ln sin(pi l/(k+N)).
    """
    if n < 1 or k < 1:
        raise DomainError("N, k must be >= 1")
    l = np.arange(1, n, dtype=float)
    s = float(np.sum((n - l) * np.log(np.sin(math.pi * l / (k + n))))) if n > 1 else 0.0
    return (
        1j * math.pi * n * n / 4.0
        - 0.5 * n * math.log(k + n)
        + 0.5 * (n * n - n) * math.log(2.0)
        + s
    )


def cs_identity_residual(n: int) -> float:
    """| ln P(q) - (2 ln Z(2N,2N) - 8 ln Z(N,N)) | with the imaginary part
    reduced mod 2 pi (the phase windings of i pi N^2/4 differ between
    sides)."""
    lhs = log_product_p_sine(n)
    rhs = 2.0 * cs_partition_log(2 * n, 2 * n) - 8.0 * cs_partition_log(n, n)
    d_re = lhs - rhs.real
    d_im = (-rhs.imag + math.pi) % (2.0 * math.pi) - math.pi
    return math.hypot(d_re, d_im)


@dataclass(frozen=True)
class OnePointComparison:
    via_v: float
    via_p: float


def one_point(n: int, tol: float = 1e-12) -> OnePointComparison:
    """The squared one-point function both ways:

    via_v = G(1/2) G(3/2) (2 pi/N)^{1/4} e^{v(1/N)},
    via_p = sqrt(2) / sqrt(P(q)).

    Their equality ties the defining integral, the product P, and the
    Barnes constants together in a single number.
    """
    if n < 1:
        raise DomainError("N must be >= 1")
    bc = barnes_constants()
    v = v_auto(float(n), tol=tol).value.real
    via_v = bc.g_product * (2.0 * math.pi / n) ** 0.25 * math.exp(v)
    via_p = math.sqrt(2.0) * math.exp(-0.5 * log_product_p_sine(n))
    return OnePointComparison(via_v=via_v, via_p=via_p)
