"""Adaptive quadrature on the half-line and on truncated vertical contours.

Two rules cover every integral in the package:

* `integrate_half_line` -- double-exponential (exp-sinh) nodes on (0, inf),
  dyadic level refinement.  Handles endpoint singularities up to
  logarithmic strength and any exponential decay rate.
* `integrate_vertical_line` -- midpoint-offset trapezoid on u = c + i y,
  with the truncation height grown from the measured integrand decay and
  the step halved until successive estimates agree.

Integrands must accept numpy arrays and be reentrant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DecayStallError, DomainError


def _eval(f, x):
    """Evaluate an integrand with overflow-to-zero tolerated but NaN/Inf
    results rejected (the no-non-finite-escape rule)."""
    with np.errstate(over="ignore", under="ignore", invalid="ignore", divide="ignore"):
        vals = np.asarray(f(x))
    if not np.all(np.isfinite(vals)):
        raise DomainError("integrand returned a non-finite value")
    return vals

__all__ = ["QuadratureResult", "integrate_half_line", "integrate_vertical_line"]

_ESINH_C = math.pi / 2.0
# |sinh t| cap keeping exp(c sinh t) inside double range
_T_NEG_CAP = 6.2
# positive nodes stop at x = 1e30: any decay rate above ~1e-27 has fully
# underflowed there, and polynomial prefactors in user integrands cannot
# overflow into inf * 0 = nan
_SINH_POS_CAP = math.log(1e30) / _ESINH_C


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    abs_err: float
    nodes: int

    def __post_init__(self):
        if not math.isfinite(self.abs_err) or self.abs_err < 0:
            raise ValueError("abs_err must be finite and >= 0")
        if self.nodes <= 0:
            raise ValueError("node count must be positive")


def _halfline_level_sum(f, h, tol, t_pos_cap):
    """One trapezoid level of the exp-sinh rule; returns (sum, nodes, t_hi)."""
    total = 0.0 + 0.0j
    nodes = 0

    # negative t: x -> 0 doubly exponentially; underflowed nodes contribute 0
    k_neg_max = int(math.floor(_T_NEG_CAP / h))
    t = -h * np.arange(1, k_neg_max + 1)
    x = np.exp(_ESINH_C * np.sinh(t))
    w = _ESINH_C * np.cosh(t) * x
    keep = x > 0.0
    if np.any(keep):
        vals = _eval(f, x[keep]) * w[keep]
        total += vals.sum()
        nodes += int(keep.sum())

    # t = 0
    total += _eval(f, np.array([1.0]))[0] * _ESINH_C
    nodes += 1

    # positive t in windows until the window contribution is negligible
    window = max(8, int(math.ceil(1.0 / h)))
    k = 0
    t_hi = 0.0
    scale = abs(total) + 1e-300
    while True:
        t = h * np.arange(k + 1, k + window + 1)
        t = t[np.sinh(t) < _SINH_POS_CAP]
        if t.size == 0:
            break
        x = np.exp(_ESINH_C * np.sinh(t))
        w = _ESINH_C * np.cosh(t) * x
        vals = _eval(f, x) * w
        total += vals.sum()
        nodes += t.size
        t_hi = t[-1]
        scale = max(scale, abs(total))
        if np.max(np.abs(vals)) * t.size < 0.02 * tol * scale:
            break
        if t.size < window:  # hit the representable-range cap
            break
        if t_hi > t_pos_cap:
            break
        k += window
    return h * total, nodes, t_hi


def integrate_half_line(f, tol=1e-12, max_level=12, t_pos_cap=6.1):
    """Integrate f over (0, inf) with exp-sinh double-exponential nodes.

    f must be continuous on (0, inf) with at worst a logarithmic
    singularity at 0 and at least exponential decay at infinity, and must
    accept ndarray arguments.  Raises ConvergenceError (carrying the best
    estimate) if the level ladder is exhausted.
    """
    prev = None
    best = None
    err = math.inf
    total_nodes = 0
    for level in range(max_level + 1):
        h = 1.0 / 2.0**level
        s, n, _ = _halfline_level_sum(f, h, tol, t_pos_cap)
        total_nodes += n
        if prev is not None:
            err = abs(s - prev)
            best = s
            if err <= max(tol, 4e-16 * abs(s)):
                return QuadratureResult(s, max(err, 1e-16 * abs(s)), total_nodes)
        prev = s
    raise ConvergenceError(
        f"half-line quadrature did not converge in {max_level} levels",
        best=best,
        err=err,
    )


def _line_level_sum(f, re_u, h, tol, t_cap):
    """Midpoint trapezoid along u = re_u + i y at step h.

    Grows |y| in windows until the window contribution is negligible;
    reports a stall when t_cap is hit first (decay rate too slow).
    """
    total = 0.0 + 0.0j
    nodes = 0
    window = max(16, int(math.ceil(8.0 / h)))
    for sign in (1.0, -1.0):
        k = 0
        scale = 1e-300
        while True:
            y = sign * h * (np.arange(k + 1, k + window + 1) - 0.5)
            vals = _eval(f, re_u + 1j * y)
            total += vals.sum()
            nodes += y.size
            scale = max(scale, abs(total))
            tail = float(np.max(np.abs(vals))) * window
            if tail < 0.02 * tol * scale:
                break
            if abs(y[-1]) > t_cap:
                return None, nodes, abs(y[-1])
            k += window
    return 1j * h * total, nodes, None


def integrate_vertical_line(f, re_u, tol=1e-12, max_level=9, h0=0.5, t_cap=400.0):
    """Integrate f along the vertical line Re(u) = re_u, upward orientation.

    The truncation height is driven by the measured integrand decay, not an
    a-priori bound; DecayStallError signals that the tail stopped shrinking
    before t_cap (the natural-boundary symptom for this package's
    integrands).
    """
    prev = None
    best = None
    err = math.inf
    total_nodes = 0
    for level in range(max_level + 1):
        h = h0 / 2.0**level
        s, n, stall_at = _line_level_sum(f, re_u, h, tol, t_cap)
        total_nodes += n
        if s is None:
            raise DecayStallError(
                f"contour tail still significant at |Im u| = {stall_at:.1f}; "
                "integrand decay too slow for these parameters",
                best=best,
                err=err,
            )
        if prev is not None:
            err = abs(s - prev)
            best = s
            if err <= max(tol, 4e-16 * abs(s)):
                return QuadratureResult(s, max(err, 1e-16 * abs(s)), total_nodes)
        prev = s
    raise ConvergenceError(
        f"vertical-line quadrature did not converge in {max_level} levels",
        best=best,
        err=err,
    )
