"""Borel-plane structure of the large-N expansion of v.

The Borel transform is an alternating sum of tanh^2 terms with double poles
at t = 2 pi i l whose Laurent data is carried by the odd divisor sum
sigma_{-2}^o(|l|); the discontinuity across the Arg(t) = pi/2 Stokes line
follows from the residues (upper-lateral minus lower-lateral convention,
verified numerically against the lateral Laplace difference).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .divisor import sigma_o_minus2
from .errors import PoleError
from .special import alternating_zeta_tail, bernoulli_fraction

__all__ = [
    "borel_transform",
    "BorelPoleData",
    "borel_pole_coeffs",
    "stokes_discontinuity",
]

_TANH2_ORDER = 16


@lru_cache(maxsize=1)
def _tanh_sq_coeffs():
    """Taylor coefficients T_j of tanh^2(x) = sum_j T_j x^{2j}, exact."""
    a = [Fraction(0)]
    for m in range(1, _TANH2_ORDER + 1):
        num = Fraction(2 ** (2 * m) * (2 ** (2 * m) - 1)) * bernoulli_fraction(2 * m)
        a.append(num / math.factorial(2 * m))
    t = []
    for j in range(1, _TANH2_ORDER + 1):
        t.append(sum(a[m] * a[j + 1 - m] for m in range(1, j + 1)))
    return [float(x) for x in t]  # t[j-1] multiplies x^{2j}


def _nearest_pole(t):
    """Nearest Borel pole 2 pi i l (l != 0) and the distance to it."""
    l0 = int(round(t.imag / (2.0 * math.pi)))
    cands = {l for l in (l0 - 1, l0, l0 + 1) if l != 0}
    best_l = min(cands, key=lambda l: abs(t - 2j * math.pi * l))
    return best_l, abs(t - 2j * math.pi * best_l)


def borel_transform(t, tol=1e-12, pole_margin=1e-6):
    """Borel transform B(t) = (1/2t) sum_{n>=1} (-1)^n tanh^2(t/4n).

    Direct terms are summed until |t/4n| <= 1/2 and the remaining
    alternating tail is closed analytically through the tanh^2 Taylor
    series, so accuracy is uniform in t away from the poles.
    """
    ts = np.atleast_1d(np.asarray(t, dtype=complex))
    for tv in ts:
        if tv == 0:
            raise PoleError("Borel transform is evaluated for t != 0 only", location=0.0)
        l, dist = _nearest_pole(complex(tv))
        if dist <= pole_margin:
            raise PoleError(
                f"t within {pole_margin} of the Borel pole at 2*pi*i*{l}",
                location=2j * math.pi * l,
            )
    tmax = float(np.max(np.abs(ts)))
    m = max(32, int(math.ceil(tmax / 2.0)))
    n = np.arange(1, m + 1, dtype=float)
    signs = np.where(n.astype(int) % 2 == 0, 1.0, -1.0)
    s = (signs[None, :] * np.tanh(ts[:, None] / (4.0 * n[None, :])) ** 2).sum(axis=1)
    # tail over n > m via tanh^2 series and alternating zeta tails
    coeffs = _tanh_sq_coeffs()
    x2 = (ts / 4.0) ** 2
    acc = np.zeros_like(ts)
    pw = np.ones_like(ts)
    for j in range(1, _TANH2_ORDER + 1):
        pw = pw * x2
        acc = acc + coeffs[j - 1] * pw * alternating_zeta_tail(2 * j, m)
    out = (s + acc) / (2.0 * ts)
    if np.isscalar(t) or np.asarray(t).ndim == 0:
        return complex(out[0])
    return out


@dataclass(frozen=True)
class BorelPoleData:
    l: int
    double_pole_coeff: complex
    single_pole_coeff: complex


def borel_pole_coeffs(l: int) -> BorelPoleData:
    """Laurent data of B at t = 2 pi i l:

    B(t) ~ double/(t - 2 pi i l)^2 + single/(t - 2 pi i l) + regular,
    double = -4i (-1)^l l sigma_{-2}^o(|l|) / pi,
    single =  2 (-1)^l sigma_{-2}^o(|l|) / pi^2.
    """
    if l == 0:
        raise PoleError("Borel poles sit at nonzero integers l", location=0)
    sig = float(sigma_o_minus2(abs(l)))
    sgn = -1.0 if l % 2 else 1.0
    return BorelPoleData(
        l=l,
        double_pole_coeff=-4j * sgn * l * sig / math.pi,
        single_pole_coeff=2.0 * sgn * sig / math.pi**2,
    )


def stokes_discontinuity(N, l_max=40):
    """Discontinuity of the Borel sum across the Arg(t) = pi/2 Stokes line.

    disc v = -(4i/pi) sum_{l>=1} (-1)^l sigma_{-2}^o(l) (1 + 2 pi i l N) e^{-2 pi i l N},
    equal (verified numerically) to the upper-lateral minus lower-lateral
    Laplace transform.  Decays only for Im(N) < 0.
    """
    N = complex(N)
    if N.imag >= 0:
        warnings.warn(
            "stokes_discontinuity series does not decay for Im(N) >= 0",
            RuntimeWarning,
            stacklevel=2,
        )
    total = 0.0 + 0.0j
    for l in range(1, l_max + 1):
        sgn = -1.0 if l % 2 else 1.0
        term = sgn * float(sigma_o_minus2(l)) * (1.0 + 2j * math.pi * l * N) * np.exp(
            -2j * math.pi * l * N
        )
        total += term
        if abs(term) < 1e-14 * max(abs(total), 1e-300) and l >= 4:
            break
    return -4j / math.pi * total
