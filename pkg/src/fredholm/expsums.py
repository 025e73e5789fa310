"""Exponential sums s_n(theta) = sum_{j<n} e(2^j theta): exact moments,
the doubling identity s_{2n} = s_n(theta) + s_n(2^n theta), and the
measure of the large-values set A_n = {theta : |s_n| > sqrt(n)/2}.

The second and fourth moments are computed combinatorially as exact
integers (they equal n and 2n^2 - n); quadrature only cross-checks them.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, asdict
from fractions import Fraction

import numpy as np

__all__ = [
    "s_n",
    "s_n_rational",
    "moment",
    "moment_quadrature",
    "measure_A",
    "measure_bound",
    "doubling_identity",
    "ExpSumReport",
    "make_report",
]


def s_n(theta: float, n: int) -> complex:
    """s_n(theta) with the angle re-reduced mod 1 before every doubling.

    Doubling the fractional part each step keeps full precision where the
    naive 2^j * theta loses all of it past j ~ 50.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    t = theta % 1.0
    total = 0j
    for _ in range(n):
        total += cmath.exp(2j * math.pi * t)
        t = (2.0 * t) % 1.0
    return total


def s_n_rational(theta: Fraction, n: int) -> complex:
    """Exact-phase evaluation for rational theta (phases stay in Q/Z)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    q = theta.denominator
    p = theta.numerator % q
    total = 0j
    for _ in range(n):
        total += cmath.exp(2j * math.pi * (p / q))
        p = (2 * p) % q
    return total


def _s_n_grid(n: int, grid: int) -> np.ndarray:
    theta = (np.arange(grid, dtype=np.float64) + 0.5) / grid
    total = np.zeros(grid, dtype=np.complex128)
    t = theta.copy()
    for _ in range(n):
        total += np.exp(2j * np.pi * t)
        t = (2.0 * t) % 1.0
    return total


def moment(n: int, p: int) -> int:
    """Exact integral of |s_n|^p over [0,1] for p in {2, 4}.

    |s_n|^p integrates to the number of index tuples whose power-of-two
    sums cancel: for p = 2 the pairs with 2^a = 2^b, for p = 4 the
    quadruples with 2^a + 2^b = 2^c + 2^d.  Counted via a sum-multiset
    histogram over exact integers.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if p == 2:
        counts: dict[int, int] = {}
        for a in range(n):
            key = 2 ** a
            counts[key] = counts.get(key, 0) + 1
        return sum(c * c for c in counts.values())
    if p == 4:
        counts = {}
        for a in range(n):
            for b in range(n):
                key = 2 ** a + 2 ** b
                counts[key] = counts.get(key, 0) + 1
        return sum(c * c for c in counts.values())
    raise ValueError("only moments p in {2, 4} are supported")


def moment_quadrature(n: int, p: int, grid: int = 1 << 16) -> float:
    """Midpoint-rule cross-check of the exact moment."""
    if p not in (2, 4):
        raise ValueError("only moments p in {2, 4} are supported")
    vals = np.abs(_s_n_grid(n, grid)) ** p
    return float(vals.mean())


def measure_A(n: int, grid: int = 1 << 16) -> float:
    """Estimated Lebesgue measure of {theta : |s_n(theta)| > sqrt(n)/2}."""
    if grid < (1 << 12):
        raise ValueError("grid must be >= 2^12")
    vals = np.abs(_s_n_grid(n, grid))
    return float(np.count_nonzero(vals > math.sqrt(n) / 2.0) / grid)


def measure_bound(n: int) -> float:
    """Lower bound 9n / (16 (2n - 1)) implied by the moment inequalities.

    From int_A |s|^2 >= 3n/4 and (int_A |s|^2)^2 <= |A| * int |s|^4
    with int |s|^4 = 2n^2 - n.
    """
    return 9.0 * n / (16.0 * (2.0 * n - 1.0))


def doubling_identity(theta, n: int) -> float:
    """|s_{2n}(theta) - s_n(theta) - s_n(2^n theta)|; exact path for Fractions."""
    if isinstance(theta, Fraction):
        lhs = s_n_rational(theta, 2 * n)
        shifted = (theta * 2 ** n) % 1
        rhs = s_n_rational(theta, n) + s_n_rational(shifted, n)
        return abs(lhs - rhs)
    t = float(theta) % 1.0
    lhs = s_n(t, 2 * n)
    tn = t
    for _ in range(n):
        tn = (2.0 * tn) % 1.0
    rhs = s_n(t, n) + s_n(tn, n)
    return abs(lhs - rhs)


@dataclass
class ExpSumReport:
    n: int
    M2: int
    M4: int
    measure_estimate: float
    measure_lower_bound: float
    grid: int

    def to_json(self) -> dict:
        return asdict(self)


def make_report(n: int, grid: int = 1 << 16) -> ExpSumReport:
    m2 = moment(n, 2)
    m4 = moment(n, 4)
    if m2 != n or m4 != 2 * n * n - n:
        raise AssertionError("combinatorial moments disagree with the closed forms")
    return ExpSumReport(
        n=n,
        M2=m2,
        M4=m4,
        measure_estimate=measure_A(n, grid),
        measure_lower_bound=measure_bound(n),
        grid=grid,
    )
