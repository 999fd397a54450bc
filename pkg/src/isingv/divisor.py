"""Arithmetic functions: odd divisor-square sums, their identities, the
singular-sum generating function and the Lambert-series reduction.

All divisor identities are exact rational statements, so the divisor sums
are kept as Fractions and converted to floats only at the emission layer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import ConvergenceError, DomainError

__all__ = [
    "sigma_o_minus2",
    "sigma_k",
    "check_sigma_identities",
    "DivisorTable",
    "cached_divisor_table",
    "s_generating",
    "s_generating_qderiv",
    "lambert_L",
    "fig1_table",
    "SIGMA_O_UPPER",
]

# sup_n sigma_{-2}^o(n) = pi^2/8 (strict upper bound, attained only in the limit)
SIGMA_O_UPPER = math.pi**2 / 8.0


def _factorize(n: int):
    """Prime factorization by trial division, returns list of (p, exponent)."""
    if n < 1:
        raise DomainError("factorization requires n >= 1")
    out = []
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    p = 5
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 2 if p % 6 == 5 else 4
    if n > 1:
        out.append((n, 1))
    return out


def sigma_o_minus2(n: int) -> Fraction:
    """sigma_{-2}^o(n) = sum over odd divisors l of n of 1/l^2, exact."""
    acc = Fraction(1)
    for p, e in _factorize(n):
        if p == 2:
            continue
        # 1 + p^-2 + ... + p^-2e
        acc *= Fraction(p ** (2 * e + 2) - 1, p ** (2 * e) * (p * p - 1))
    return acc


def sigma_k(n: int, k: int) -> Fraction:
    """Full divisor power sum sigma_k(n) = sum_{d|n} d^k, exact."""
    acc = Fraction(1)
    for p, e in _factorize(n):
        if k == 0:
            acc *= e + 1
        else:
            pk = Fraction(p) ** k
            acc *= (pk ** (e + 1) - 1) / (pk - 1)
    return acc


def check_sigma_identities(n: int) -> bool:
    """Exact check of n^2 sigma_{-2}^o(n) against the sigma_2 reductions.

    Odd n:  n^2 sigma_{-2}^o(n) == sigma_2(n)
    Even n: n^2 sigma_{-2}^o(n) == sigma_2(n) - sigma_2(n/2)
    """
    lhs = n * n * sigma_o_minus2(n)
    if n % 2 == 1:
        return lhs == sigma_k(n, 2)
    return lhs == sigma_k(n, 2) - sigma_k(n // 2, 2)


@dataclass
class DivisorTable:
    """Sieve-backed batch table of sigma_{-2}^o(n) and sigma_2(n), 1..n_max."""

    n_max: int
    sigma_o_minus2: list = field(default_factory=list)
    sigma_2: list = field(default_factory=list)

    def __post_init__(self):
        if self.n_max < 1:
            raise DomainError("n_max must be >= 1")
        if not self.sigma_o_minus2:
            self._build()

    def _build(self):
        n_max = self.n_max
        spf = np.zeros(n_max + 1, dtype=np.int64)  # smallest prime factor
        for i in range(2, n_max + 1):
            if spf[i] == 0:
                spf[i::i][spf[i::i] == 0] = i
        so = [None, Fraction(1)]
        s2 = [None, Fraction(1)]
        for n in range(2, n_max + 1):
            p = int(spf[n])
            m, e = n, 0
            while m % p == 0:
                m //= p
                e += 1
            # multiplicative build from the cofactor m < n
            so_pp = (
                Fraction(1)
                if p == 2
                else Fraction(p ** (2 * e + 2) - 1, p ** (2 * e) * (p * p - 1))
            )
            s2_pp = Fraction(p ** (2 * (e + 1)) - 1, p * p - 1)
            so.append(so[m] * so_pp)
            s2.append(s2[m] * s2_pp)
        self.sigma_o_minus2 = so
        self.sigma_2 = s2

    def sigma_o_floats(self):
        return np.array([float(x) for x in self.sigma_o_minus2[1:]])


@lru_cache(maxsize=4)
def cached_divisor_table(n_max: int) -> "DivisorTable":
    """Shared read-only table; build once per size."""
    return DivisorTable(n_max)


def _sigma_series(z, n_power, tol, max_terms):
    """4 sum_{n>=1} n^{n_power} sigma_{-2}^o(n) z^n with a geometric tail bound."""
    z = complex(z)
    r = abs(z)
    if r >= 1.0:
        raise DomainError("sigma power series diverges for |z| >= 1")
    if r == 0.0:
        return 0.0 + 0.0j
    block = 256
    table = DivisorTable(block)
    total = 0.0 + 0.0j
    n0 = 1
    while True:
        if len(table.sigma_o_minus2) - 1 < n0 + block - 1:
            table = DivisorTable(2 * (len(table.sigma_o_minus2) - 1))
        n = np.arange(n0, n0 + block)
        sig = np.array([float(table.sigma_o_minus2[int(i)]) for i in n])
        total += 4.0 * np.sum(n.astype(float) ** n_power * sig * z**n)
        n1 = n0 + block
        # crude tail bound: 4 (pi^2/8) sum_{n>=n1} n^p r^n <= 4 (pi^2/8) n1^p r^n1/(1-r)^{p+1}
        tail = 4.0 * SIGMA_O_UPPER * float(n1) ** n_power * r**n1 / (1 - r) ** (n_power + 1)
        if tail < tol * max(abs(total), 1e-300):
            return total
        n0 = n1
        if n0 > max_terms:
            raise ConvergenceError("sigma series: term cap exceeded", best=total)


def s_generating(z, tol=1e-12, max_terms=2_000_000):
    """Generating function 4 sum_{n>=1} n sigma_{-2}^o(n) z^n, |z| < 1.

    Truncated when the geometric tail bound (using sigma < pi^2/8) drops
    below tol relative to the partial sum.
    """
    return _sigma_series(z, 1, tol, max_terms)


def s_generating_qderiv(q, tol=1e-12, max_terms=2_000_000):
    """q d/dq of the singular sum S(q) = 4 sum (-1)^n n sigma_{-2}^o(n) q^n,

    i.e. 4 sum (-1)^n n^2 sigma_{-2}^o(n) q^n, |q| < 1.  Independent target
    for the Lambert reduction 4 L_{-q}(2,1) - 4 L_{q^2}(2,1).
    """
    return _sigma_series(-complex(q), 2, tol, max_terms)


def lambert_L(q, tol=1e-12, max_terms=2_000_000):
    """Lambert series L_q(2,1) = sum n^2 q^n / (1 - q^n), |q| < 1."""
    q = complex(q)
    r = abs(q)
    if r >= 1.0:
        raise DomainError("Lambert series diverges for |q| >= 1")
    if r == 0.0:
        return 0.0 + 0.0j
    total = 0.0 + 0.0j
    block = 256
    n0 = 1
    while True:
        n = np.arange(n0, n0 + block)
        qn = q**n
        total += np.sum(n * n * qn / (1.0 - qn))
        n1 = n0 + block
        tail = r**n1 * (n1 * n1) / ((1 - r) ** 2 * (1 - r))  # crude n^2 r^n tail
        if tail < tol * max(abs(total), 1e-300):
            return total
        n0 = n1
        if n0 > max_terms:
            raise ConvergenceError("lambert_L: term cap exceeded", best=total)


def fig1_table(n_max: int):
    """Rows (n, sigma_{-2}^o(n), n*sigma_{-2}^o(n)) for 1 <= n <= n_max."""
    from .emit import ScanTable

    table = DivisorTable(n_max)
    rows = []
    for n in range(1, n_max + 1):
        s = float(table.sigma_o_minus2[n])
        rows.append((float(n), s, n * s))
    return ScanTable(headers=["n", "sigma_o_minus2", "n_sigma_o_minus2"], rows=rows)
