"""Natural-boundary machinery on the negative real axis.

With 1/N = 2(x + i y), the reflection formula reduces the behavior of v
near the boundary to the singular sum

    S(x, y) = -sum_{k>=0} 4 w^{2k+1} / ((2k+1) (w^{2k+1} + 1)^2),
    w = e^{-i pi x} e^{pi |y|},

whose y -> 0 law at rational x is fixed by the 2-adic structure of x:
1/y^2 for odd/odd rationals, log|y| when a factor of 2 is present.  This
module evaluates the sums stably, classifies rational boundary points,
fits the predicted laws, and checks the combined reflection identity.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from math import gcd

import numpy as np

from .errors import DomainError, FitError
from .special import barnes_constants, zeta
from .vfn import v_auto

__all__ = [
    "RationalAngle",
    "SingularityKind",
    "SingularityLaw",
    "SingularityClass",
    "singular_sum",
    "regular_sum_closed",
    "imag_singular_sum",
    "reflection_residual",
    "classify_boundary_point",
    "classify_real",
    "cosine_sum_rule",
    "dominant_cosine_sum",
    "singularity_fit",
    "FitResult",
]

_CHUNK = 1 << 19


@dataclass(frozen=True)
class RationalAngle:
    """Reduced rational boundary coordinate x = num/den, den > 0."""

    num: int
    den: int

    def __post_init__(self):
        if self.den <= 0:
            raise DomainError("denominator must be positive")
        if gcd(abs(self.num), self.den) != 1:
            raise DomainError("num/den must be in lowest terms")

    @property
    def value(self) -> float:
        return self.num / self.den

    @classmethod
    def parse(cls, text: str) -> "RationalAngle":
        num, _, den = text.partition("/")
        d = int(den) if den else 1
        return cls(int(num), d)


class SingularityKind(Enum):
    ODD_OVER_ODD = "odd_over_odd"
    DYADIC_MIXED = "dyadic_mixed"
    EVEN_OVER_ODD = "even_over_odd"
    UNCLASSIFIED = "unclassified"


class SingularityLaw(Enum):
    INVERSE_Y_SQUARED = "inverse_y_squared"
    LOG_Y = "log_y"


@dataclass(frozen=True)
class SingularityClass:
    kind: SingularityKind
    predicted_coeff: float
    law: SingularityLaw


def _phase_terms(x, y, k0, k1):
    """Terms k0..k1-1 of the singular sum at (x, y), y != 0, vectorized.

    Written via omega = 1/w^{2k+1} (modulus < 1), so nothing overflows and
    terms with (2k+1) pi |y| beyond the underflow threshold are exactly 0.
    """
    k = np.arange(k0, k1, dtype=float)
    odd = 2.0 * k + 1.0
    omega = np.exp(odd * (-math.pi * abs(y) + 1j * math.pi * x * math.copysign(1.0, y)))
    return -4.0 / odd * omega / (1.0 + omega) ** 2


def singular_sum(x: float, y: float, tol: float = 1e-12) -> complex:
    """The singular sum S(x, y) for y != 0.

    Invariant under (x, y) -> (-x, -y); the y < 0 case is folded onto
    y > 0 through that rule (equivalently the sign(y) factor in the
    omega phase).
    """
    if y == 0.0:
        raise DomainError("singular sum is defined off the boundary (y != 0)")
    theta_max = 45.0 + 1.2 * max(0.0, -math.log(max(tol, 1e-300)))
    k_max = int(math.ceil(theta_max / (2.0 * math.pi * abs(y)))) + 1
    total = 0.0 + 0.0j
    for k0 in range(0, k_max, _CHUNK):
        total += _phase_terms(x, y, k0, min(k0 + _CHUNK, k_max)).sum()
    return complex(total)


def imag_singular_sum(x: float, y: float) -> float:
    """Im S(x, y) from its explicit sine/sinh form,

    -sum_k (2/(2k+1)) sin((2k+1) pi x) sinh((2k+1) pi y)
           / (cos((2k+1) pi x) + cosh((2k+1) pi y))^2,

    evaluated through E = e^{-(2k+1) pi |y|} so large k never overflows.
    """
    if y == 0.0:
        raise DomainError("imaginary singular sum needs y != 0")
    k_max = int(math.ceil(85.0 / (2.0 * math.pi * abs(y)))) + 1
    total = 0.0
    sign_y = math.copysign(1.0, y)
    for k0 in range(0, k_max, _CHUNK):
        k = np.arange(k0, min(k0 + _CHUNK, k_max), dtype=float)
        odd = 2.0 * k + 1.0
        e = np.exp(-odd * math.pi * abs(y))
        c = np.cos(odd * math.pi * x)
        s = np.sin(odd * math.pi * x)
        # sinh/(c+cosh)^2 = 2E(1-E^2)/(1+2cE+E^2)^2, E = e^{-theta}
        ratio = 2.0 * e * (1.0 - e * e) / (1.0 + 2.0 * c * e + e * e) ** 2
        total += float(np.sum(-2.0 / odd * s * sign_y * ratio))
    return total


def regular_sum_closed(x: float, y: float) -> complex:
    """Closed form of the regular sum for y > 0:

    ln[(1 + z)/(1 - z)] - (1/2) ln[(1 + z^2)/(1 - z^2)],  z = e^{i pi x - pi y}.
    """
    if y <= 0.0:
        raise DomainError("closed regular sum is stated for y > 0")
    z = cmath.exp(1j * math.pi * x - math.pi * y)
    return cmath.log((1.0 + z) / (1.0 - z)) - 0.5 * cmath.log((1.0 + z * z) / (1.0 - z * z))


def regular_sum_terms(x: float, y: float, k_max: int = 200_000) -> complex:
    """Direct k-sum of the regular part (oracle for the closed form)."""
    if y <= 0.0:
        raise DomainError("regular sum converges for y > 0")
    k = np.arange(0, k_max, dtype=float)
    odd = 2.0 * k + 1.0
    winv = np.exp(odd * (1j * math.pi * x - math.pi * y))
    return complex(np.sum((2.0 * winv - winv**2) / odd))


def reflection_residual(x: float, y: float, tol: float = 1e-12) -> complex:
    """Residual of the combined reflection identity

    v(-x - iy) + v(x + iy) + ln[sqrt(pi) G^2(1/2) G^2(3/2)]
        - (1/2) ln(i sign(y) / (x + iy)) - S(x, y),

    where v(x + iy) abbreviates v at 1/N = 2(x + iy).  Near-zero residual
    validates the whole analytic-continuation chain.
    """
    if y == 0.0:
        raise DomainError("reflection identity needs y != 0")
    eta = 2.0 * complex(x, y)
    v_plus = v_auto(1.0 / eta, tol=tol).value
    v_minus = v_auto(-1.0 / eta, tol=tol).value
    lhs = v_plus + v_minus + barnes_constants().reflection_log_const
    rhs = 0.5 * cmath.log(1j * math.copysign(1.0, y) / complex(x, y)) + singular_sum(
        x, y, tol=tol
    )
    return lhs - rhs


def classify_boundary_point(x: RationalAngle) -> SingularityClass:
    """Leading y -> 0 singularity class of Re S at rational x.

    num odd, den odd                 -> 7 zeta(3)/(2 pi^2 den^3) / y^2
    num odd, den = 2^p (2q+1), p>0   -> (den/2) ln|y|
    num even (den odd)               -> (den/2) ln|y|
    """
    num = abs(x.num)
    den = x.den
    if num % 2 == 1 and den % 2 == 1:
        zeta3 = complex(zeta(3.0)).real
        coeff = 7.0 * zeta3 / (2.0 * math.pi**2 * den**3)
        return SingularityClass(SingularityKind.ODD_OVER_ODD, coeff,
                                SingularityLaw.INVERSE_Y_SQUARED)
    if den % 2 == 0:
        # num odd automatically (reduced); den = 2^p * odd
        return SingularityClass(SingularityKind.DYADIC_MIXED, den / 2.0,
                                SingularityLaw.LOG_Y)
    return SingularityClass(SingularityKind.EVEN_OVER_ODD, den / 2.0,
                            SingularityLaw.LOG_Y)


def classify_real(x: float, max_den: int = 4096) -> SingularityClass:
    """Classification entry for a floating boundary coordinate.

    If x is recognizably rational (within 1e-12 of a fraction with
    denominator <= max_den) the exact classification applies; otherwise the
    point is UNCLASSIFIED and carries only the universal |S| <= 1/(2 y^2)
    bound (coefficient 1/2).
    """
    from fractions import Fraction

    frac = Fraction(x).limit_denominator(max_den)
    if abs(x - float(frac)) < 1e-12:
        return classify_boundary_point(RationalAngle(frac.numerator, frac.denominator))
    return SingularityClass(SingularityKind.UNCLASSIFIED, 0.5,
                            SingularityLaw.INVERSE_Y_SQUARED)


def cosine_sum_rule(p: int, q: int = 0) -> float:
    """sum_{k=0}^{2^p - 1} 1 / (1 + cos((2k+1)(2q+1) pi / 2^p)); equals 2^{2p-1}.

    1 + cos(theta) = 2 cos^2(theta/2) with the half-angle reduced exactly as
    an integer residue; near-pole terms would otherwise lose ~6 digits at
    p = 8 through the angle rounding.
    """
    if p < 1:
        raise DomainError("cosine sum rule requires p >= 1")
    two_p1 = 2 ** (p + 1)
    total = 0.0
    for k in range(2**p):
        r = ((2 * k + 1) * (2 * q + 1)) % two_p1  # theta/2 = pi r / 2^{p+1}
        s = r - 2**p  # cos(pi r/2^{p+1}) = -sin(pi s/2^{p+1}), |s| < 2^p
        total += 1.0 / (2.0 * math.sin(math.pi * s / two_p1) ** 2)
    return total


def dominant_cosine_sum(x: float, y: float) -> float:
    """The y = 0 cosine sum truncated at k0 = floor(1/(2 pi |y|)),

    -sum_{k<=k0} (2/(2k+1)) / (1 + cos((2k+1) pi x)),

    which carries the leading small-y singularity of Re S when the
    cosine never hits -1 (x with a factor of 2).
    """
    if y == 0.0:
        raise DomainError("truncation index needs y != 0")
    k0 = int(math.floor(1.0 / (2.0 * math.pi * abs(y))))
    k = np.arange(0, k0 + 1, dtype=float)
    odd = 2.0 * k + 1.0
    den = 1.0 + np.cos(odd * math.pi * x)
    if np.any(den < 1e-9):
        raise DomainError("cosine hits -1: dominant sum valid only for dyadic-type x")
    return float(np.sum(-2.0 / odd / den))


@dataclass(frozen=True)
class FitResult:
    fitted_coeff: float
    law: SingularityLaw
    predicted_coeff: float
    rel_residual: float


def singularity_fit(x: RationalAngle, y_grid, tol: float = 1e-10) -> FitResult:
    """Least-squares fit of Re S(x, y) against the classified law.

    LOG_Y:             Re S ~ a ln|y| + b
    INVERSE_Y_SQUARED: Re S ~ a / y^2 + b

    The largest decade of y is excluded (the laws are leading-order only);
    a relative residual above 20% raises FitError.
    """
    y = np.asarray(sorted(float(v) for v in y_grid))
    if y.size < 4 or y[0] < 1e-5 or y[-1] / y[0] < 99.0:
        raise DomainError("y grid must span >= 2 decades with min y >= 1e-5")
    cls = classify_boundary_point(x)
    keep = y <= y[-1] / 10.0 * (1.0 + 1e-12)
    yk = y[keep]
    re_s = np.array([singular_sum(x.value, float(v), tol=tol).real for v in yk])
    if cls.law is SingularityLaw.LOG_Y:
        basis = np.log(yk)
    else:
        basis = 1.0 / yk**2
    a_mat = np.column_stack([basis, np.ones_like(basis)])
    coef, *_ = np.linalg.lstsq(a_mat, re_s, rcond=None)
    resid = a_mat @ coef - re_s
    scale = float(np.linalg.norm(re_s - re_s.mean())) or 1.0
    rel = float(np.linalg.norm(resid)) / scale
    if rel > 0.20:
        raise FitError(f"law fit residual {rel:.1%} exceeds 20%")
    return FitResult(fitted_coeff=float(coef[0]), law=cls.law,
                     predicted_coeff=cls.predicted_coeff, rel_residual=rel)
