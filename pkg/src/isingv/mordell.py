"""The Mordell integral J(t), its contour representation, and the
false-theta decomposition across the negative axis.

    J(t) = int_0^inf e^{-3u^2/t} sinh(u)/sinh(3u) du

is analytic for Re(t) > 0, continues through the contour representation to
|Arg t| < 3 pi/2, and on the negative axis splits into two false-theta
series (the continuation tool all the way to the Arg t = 3 pi/2 natural
boundary, where the contour route stalls).  J lives on the covering space:
values at Arg t and Arg t - 2 pi differ, so the continued argument is
tracked explicitly where it matters.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.special import loggamma

from .errors import DomainError
from .quadrature import integrate_half_line, integrate_vertical_line
from .special import hurwitz_zeta

__all__ = [
    "MordellRoute",
    "MordellEvaluation",
    "j_quadrature",
    "j_mellin_barnes",
    "psi_false_theta",
    "psi_truncation_index",
    "j_dual",
    "j_dual_continued",
    "mordell_f1",
    "mordell_f2",
    "j_reflection_residual",
    "fig2_scan",
]


class MordellRoute(str, Enum):
    QUADRATURE = "quadrature"
    MELLIN_BARNES = "mellin_barnes"
    DUAL_DECOMPOSITION = "dual_decomposition"


@dataclass(frozen=True)
class MordellEvaluation:
    t: complex
    value: complex
    route: MordellRoute
    k_max: int  # series truncation (0 for non-series routes)


def _sinh_ratio(u):
    """sinh(u)/sinh(3u) on u > 0, stable at both ends (limit 1/3 at 0)."""
    out = np.empty_like(u)
    small = u < 1e-4
    if small.any():
        us = u[small]
        out[small] = (1.0 - (4.0 / 3.0) * us * us) / 3.0
    big = ~small
    if big.any():
        ub = u[big]
        e2 = np.exp(-2.0 * ub)
        out[big] = e2 * (1.0 - e2) / (1.0 - e2 * e2 * e2)
    return out


def j_quadrature(t, tol=1e-12) -> MordellEvaluation:
    """J(t) by direct quadrature; needs Re(t) > 0 for the Gaussian factor."""
    t = complex(t)
    if t.real <= 0.0:
        raise DomainError("quadrature route requires Re(t) > 0")
    w = 3.0 / t

    def f(u):
        uc = np.minimum(u, 1e150)  # Gaussian already underflowed far earlier
        return np.exp(-w * uc * uc) * _sinh_ratio(u)

    r = integrate_half_line(f, tol=tol)
    return MordellEvaluation(t=t, value=complex(r.value),
                             route=MordellRoute.QUADRATURE, k_max=0)


def j_mellin_barnes(t, tol=1e-12, re_u=0.5, arg_t=None, t_cap=400.0) -> MordellEvaluation:
    """J(t) from the contour representation

    J(t) = int_{(c)} du/(4 pi i) t^{(1-u)/2} 2^{-u} 3^{-(1+u)/2}
           Gamma((1-u)/2) Gamma(u) [zeta(u, 1/3) - zeta(u, 2/3)],

    0 < c < 1.  `arg_t` selects the sheet (continued argument, default the
    principal one); the representation holds for |arg_t| < 3 pi/2 and the
    exponential decay of the integrand dies at the edges, so evaluations
    near +-3 pi/2 stall (DecayStallError).
    """
    t = complex(t)
    if t == 0:
        raise DomainError("t must be nonzero")
    if not 0.0 < re_u < 1.0:
        raise DomainError("contour must sit in 0 < Re u < 1")
    arg = cmath.phase(t) if arg_t is None else float(arg_t)
    if abs(arg) > 1.5 * math.pi - 0.05:
        raise DomainError("Mellin-Barnes route requires |Arg t| < 3 pi/2 - margin")
    ln_t = math.log(abs(t)) + 1j * arg

    def f(u):
        expo = (
            ((1.0 - u) / 2.0) * ln_t
            - u * math.log(2.0)
            - (0.5 + u / 2.0) * math.log(3.0)
            + loggamma((1.0 - u) / 2.0)
            + loggamma(u)
        )
        return np.exp(expo) * (hurwitz_zeta(u, 1.0 / 3.0) - hurwitz_zeta(u, 2.0 / 3.0))

    r = integrate_vertical_line(f, re_u, tol=tol, t_cap=t_cap)
    return MordellEvaluation(t=t, value=complex(r.value / (4j * math.pi)),
                             route=MordellRoute.MELLIN_BARNES, k_max=0)


def psi_false_theta(t, k_max=800) -> complex:
    """False theta sum Psi(t) = sum_{k>=0} (e^{t (3k+1)^2/3} - e^{t (3k+2)^2/3}),
    convergent for Re(t) < 0; truncation error below the first omitted pair."""
    t = complex(t)
    if t.real >= 0.0:
        raise DomainError("false-theta series diverges for Re(t) >= 0")
    if k_max < 1:
        raise DomainError("k_max must be >= 1")
    k = np.arange(0, k_max + 1, dtype=float)
    with np.errstate(under="ignore"):
        terms = np.exp(t * (3.0 * k + 1.0) ** 2 / 3.0) - np.exp(
            t * (3.0 * k + 2.0) ** 2 / 3.0
        )
    return complex(terms.sum())


def psi_truncation_index(t, eps=1e-16) -> int:
    """Smallest k whose pair magnitude e^{Re(t)(3k+2)^2/3} drops below eps."""
    t = complex(t)
    if t.real >= 0.0:
        raise DomainError("series parameter must have Re(t) < 0")
    need = 3.0 * (-math.log(eps)) / (-t.real)
    return max(1, int(math.ceil((math.sqrt(need) - 2.0) / 3.0)))


def _auto_k(t, k_cap):
    """Truncation for the two series parameters, capped at the user value."""
    k1 = psi_truncation_index(t, eps=1e-18)
    k2 = psi_truncation_index(math.pi**2 / t, eps=1e-18)
    return min(k_cap, max(k1, k2, 16))


def mordell_f1(t, k_max=None, k_cap=800) -> complex:
    """First decomposition term -t sqrt(pi/(-12 t)) Psi(t-series)
    = sqrt(pi (-t) / 12) Psi(t), principal branch of -t; real on t < 0."""
    t = complex(t)
    k = _auto_k(t, k_cap) if k_max is None else k_max
    return cmath.sqrt(math.pi * (-t) / 12.0) * psi_false_theta(t, k)


def mordell_f2(t, k_max=None, k_cap=800) -> complex:
    """Second decomposition term (pi/sqrt(12)) Psi(pi^2/t-series); real on t < 0."""
    t = complex(t)
    k = _auto_k(t, k_cap) if k_max is None else k_max
    return math.pi / math.sqrt(12.0) * psi_false_theta(math.pi**2 / t, k)


def j_dual(t, sign="+", k_max=800) -> MordellEvaluation:
    """Boundary values J(t +- i0) on the negative real axis,

    J(t +- i0) = -+ i t sqrt(pi/(-12 t)) Psi(1/q) + (pi/sqrt(12)) Psi(1/q~),

    with q = e^{-t}, q~ = e^{-pi^2/t}; series parameters t and pi^2/t
    (both negative).  sign '+' is the upper branch Arg(t + i0) = +pi.
    """
    t = float(t)
    if t >= 0.0:
        raise DomainError("dual decomposition anchors on the negative real axis")
    if sign not in ("+", "-"):
        raise DomainError("sign must be '+' or '-'")
    f1 = mordell_f1(t, k_max=k_max)
    f2 = mordell_f2(t, k_max=k_max)
    value = (1j if sign == "+" else -1j) * f1 + f2
    return MordellEvaluation(t=complex(t), value=complex(value),
                             route=MordellRoute.DUAL_DECOMPOSITION, k_max=k_max)


def j_dual_continued(t, branch="upper", k_max=None, k_cap=800) -> complex:
    """The dual decomposition continued off the negative axis (Re t < 0):

    upper branch: J = +i F1(t) + F2(t) on pi/2 < Arg_cont(t) < 3 pi/2,
    lower branch: J = -i F1(t) + F2(t) on -3 pi/2 < Arg_cont(t) < -pi/2.
    """
    t = complex(t)
    if t.real >= 0.0:
        raise DomainError("dual continuation lives in the left half-plane")
    if branch not in ("upper", "lower"):
        raise DomainError("branch must be 'upper' or 'lower'")
    f1 = mordell_f1(t, k_max=k_max, k_cap=k_cap)
    f2 = mordell_f2(t, k_max=k_max, k_cap=k_cap)
    return (1j if branch == "upper" else -1j) * f1 + f2


def j_reflection_residual(x: float, y: float, tol: float = 1e-12, k_cap=2000) -> complex:
    """Residual of the even-y projection identity

    [J(x + iy) + J(x - iy)] - [2 Re F2(x + iy) + 2 i Re F1(x + iy)],

    for pi/2 < Arg(x + iy) < pi.  J(x + iy) comes from the contour route,
    J(x - iy) is the upper-branch continuation (Arg_cont in (pi, 3 pi/2)),
    so a small residual cross-validates the two routes and the evenness of
    the term split.
    """
    tt = complex(x, y)
    if not (math.pi / 2.0 < cmath.phase(tt) < math.pi):
        raise DomainError("need pi/2 < Arg(x + iy) < pi")
    j_up = j_mellin_barnes(tt, tol=tol).value
    j_down = j_dual_continued(complex(x, -y), branch="upper", k_cap=k_cap)
    f1 = mordell_f1(tt, k_cap=k_cap)
    f2 = mordell_f2(tt, k_cap=k_cap)
    return (j_up + j_down) - (2.0 * f2.real + 2j * f1.real)


def fig2_scan(re_t=-2e-4, y_range=(0.5, 1.5), points=500, k_max=800, sign="+",
              branch="upper"):
    """Scan of the dual-decomposition J along t = re_t +- i y.

    sign picks the side of the axis (t = re_t + i y for '+'); branch picks
    the decomposition branch.  With the upper branch, sign '+' tracks the
    regular side near Arg t = pi/2 while sign '-' runs close to the
    Arg t = 3 pi/2 natural boundary, where J oscillates violently in y.
    Rows: (y, Re J, Im J, branch_sign).
    """
    from .emit import ScanTable

    if re_t >= 0.0:
        raise DomainError("scan requires Re(t) < 0")
    if points < 2:
        raise DomainError("need at least 2 scan points")
    if sign not in ("+", "-"):
        raise DomainError("sign must be '+' or '-'")
    sgn = 1.0 if sign == "+" else -1.0
    y0, y1 = float(y_range[0]), float(y_range[1])
    ys = np.linspace(y0, y1, points)
    rows = []
    for y in ys:
        t = complex(re_t, sgn * y)
        val = j_dual_continued(t, branch=branch, k_max=None, k_cap=k_max)
        rows.append((float(y), val.real, val.imag, sgn))
    return ScanTable(headers=["y", "re_J", "im_J", "branch_sign"], rows=rows)
