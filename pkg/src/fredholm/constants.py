"""The constant families attached to the half-plane companion function.

c_m   = H(m) = sum_{l>=1} (e(m/2^l) - 1)          (c_{2m} = c_m, conj c_m = c_{-m})
k_l   = e(1/2^l) - 1,  mu_l = |k_l|^2
c(m)  = sum_{l>=1} k_l^m                          (integer-combination partner of c_m)
sigma_m   = c_m + c_{-m}  (real)
sigma(m)  = sum_{l>=1} (k_l + conj k_l)^m = (-1)^m sum mu_l^m

with the binomial conversions between the two families, the rational
recurrence (1 - 2^m) c(m) = sum_h 2^(m-h) C(m,h) c(m+h), the expansion of
(2 cos phi - 2)^m over the basis (2 cos j phi - 2) with integer
coefficients, and the growth sigma(m) ~ (-1)^m (4^m + 2^m + (2-sqrt2)^m).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .rigor import EPS, TWO_PI, Ball, RationalAngle, ball_e_rational
from .series import _safe_exp  # shared conservative exp

__all__ = [
    "DEFAULT_L",
    "k_l",
    "mu_l",
    "c_m",
    "c_paren",
    "sigma",
    "sigma_paren",
    "verify_c_recurrence",
    "binomial_c_paren_from_c",
    "binomial_c_from_c_paren",
    "chebyshev_expansion",
    "sigma_chebyshev_residual",
    "ConstantTable",
    "build_table",
]

DEFAULT_L = 64


def k_l(l: int) -> Ball:
    """k_l = e(1/2^l) - 1; k_0 = 0, k_1 = -2, k_2 = i - 1."""
    if l < 0:
        raise ValueError("l must be >= 0")
    if l == 0:
        return Ball(0.0)
    return ball_e_rational(RationalAngle(1, 2 ** l)) - 1.0


def mu_l(l: int) -> Ball:
    """mu_l = |k_l|^2, as a real-valued enclosure."""
    k = k_l(l)
    prod = k * k.conjugate()
    # the product of conjugates is real; fold the imaginary slack into the radius
    return Ball(complex(prod.center.real, 0.0), prod.radius + abs(prod.center.imag))


def c_m(m: int, n_terms: int = DEFAULT_L) -> Ball:
    """Certified c_m = sum_{l>=1} (e(m/2^l) - 1); exact phases per term."""
    acc = Ball(0.0)
    for l in range(1, n_terms + 1):
        acc = acc + (ball_e_rational(RationalAngle(m, 2 ** l)) - 1.0)
    u = TWO_PI * abs(m) * math.ldexp(1.0, -(n_terms + 1))
    tail = TWO_PI * abs(m) * math.ldexp(1.0, -n_terms) * _safe_exp(u) * 2.0
    return acc.widen(tail)


def c_paren(m: int, n_terms: int = DEFAULT_L) -> Ball:
    """Certified c(m) = sum_{l>=1} k_l^m, m >= 1.

    |k_l| <= 2 pi / 2^l, so the tail after L terms is below
    2 (2 pi / 2^(L+1))^m.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    acc = Ball(0.0)
    for l in range(1, n_terms + 1):
        acc = acc + k_l(l).pow_int(m)
    tail = 2.0 * (TWO_PI * math.ldexp(1.0, -(n_terms + 1))) ** m
    return acc.widen(tail)


def sigma(m: int, n_terms: int = DEFAULT_L) -> Ball:
    """sigma_m = c_m + c_{-m}; real, returned with real center."""
    s = c_m(m, n_terms) + c_m(-m, n_terms)
    return Ball(complex(s.center.real, 0.0), s.radius + abs(s.center.imag))


def sigma_paren(m: int, n_terms: int = DEFAULT_L) -> Ball:
    """sigma(m) = sum_{l>=1} (k_l + conj k_l)^m = sum (-mu_l)^m.

    mu_l <= (pi / 2^(l-1))^2, so the tail after L terms is below
    2 (pi^2 4^(-L))^m.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    acc = Ball(0.0)
    for l in range(1, n_terms + 1):
        acc = acc + (-mu_l(l)).pow_int(m)
    tail = 2.0 * (math.pi ** 2 * math.ldexp(1.0, -2 * n_terms)) ** m
    return acc.widen(tail)


def sigma_paren_tail(m: int, start: int = 4, n_terms: int = DEFAULT_L) -> Ball:
    """sum_{l >= start} (-mu_l)^m as a certified ball.

    With start = 4 this is exactly (-1)^m sigma(m) - 4^m - 2^m - (2-sqrt2)^m
    (up to sign (-1)^m), since mu_1, mu_2, mu_3 are 4, 2 and 2 - sqrt2;
    comparing the tail directly avoids the catastrophic cancellation a
    float subtraction against 4^m would suffer.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    acc = Ball(0.0)
    for l in range(start, n_terms + 1):
        acc = acc + (-mu_l(l)).pow_int(m)
    tail = 2.0 * (math.pi ** 2 * math.ldexp(1.0, -2 * n_terms)) ** m
    return acc.widen(tail)


def verify_c_recurrence(m: int, n_terms: int = DEFAULT_L) -> Ball:
    """Residual of (1 - 2^m) c(m) - sum_{h=1}^m 2^(m-h) C(m,h) c(m+h)."""
    if not 1 <= m <= 16:
        raise ValueError("m must be in [1, 16]")
    lhs = c_paren(m, n_terms) * float(1 - 2 ** m)
    rhs = Ball(0.0)
    for h in range(1, m + 1):
        rhs = rhs + c_paren(m + h, n_terms) * float(2 ** (m - h) * math.comb(m, h))
    return lhs - rhs


def binomial_c_paren_from_c(m: int, n_terms: int = DEFAULT_L) -> Ball:
    """c(m) via c_m: sum_{j=1}^m (-1)^(m-j) C(m,j) c_j."""
    acc = Ball(0.0)
    for j in range(1, m + 1):
        acc = acc + c_m(j, n_terms) * float((-1) ** (m - j) * math.comb(m, j))
    return acc


def binomial_c_from_c_paren(m: int, n_terms: int = DEFAULT_L) -> Ball:
    """c_m via c(j): sum_{j=1}^m C(m,j) c(j)."""
    acc = Ball(0.0)
    for j in range(1, m + 1):
        acc = acc + c_paren(j, n_terms) * float(math.comb(m, j))
    return acc


def chebyshev_expansion(m: int) -> list[int]:
    """Integer coefficients a_{m,1..m} with
    (2 cos phi - 2)^m = sum_j a_{m,j} (2 cos j phi - 2).

    Computed exactly: expand (u + 1/u - 2)^m as a Laurent polynomial in
    u = e^(i phi) by repeated convolution with [1, -2, 1]; the symmetric
    coefficient of u^j (j >= 1) is a_{m,j}, and the constant coefficient
    automatically equals -2 sum_j a_{m,j} because the left side vanishes
    at phi = 0.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    # coeffs[i] is the coefficient of u^(i - deg), deg = current half-degree
    coeffs = [1]
    for _ in range(m):
        out = [0] * (len(coeffs) + 2)
        for i, c in enumerate(coeffs):
            out[i] += c
            out[i + 1] += -2 * c
            out[i + 2] += c
        coeffs = out
    # now coeffs has length 2m+1, center index m is the constant term
    a = [coeffs[m + j] for j in range(1, m + 1)]
    assert coeffs[m] == -2 * sum(a), "constant term consistency"
    for j in range(1, m + 1):
        assert coeffs[m + j] == coeffs[m - j], "Laurent symmetry"
    return a


def sigma_chebyshev_residual(m: int, n_terms: int = DEFAULT_L) -> Ball:
    """Residual of sigma(m) - sum_j a_{m,j} sigma_j; encloses 0."""
    a = chebyshev_expansion(m)
    acc = sigma_paren(m, n_terms)
    for j, coeff in enumerate(a, start=1):
        acc = acc - sigma(j, n_terms) * float(coeff)
    return acc


@dataclass
class ConstantTable:
    """All constant enclosures up to index m_max, as plain JSON-able data."""

    m_max: int
    n_terms: int
    c: dict = field(default_factory=dict)          # c_m for m in [-m_max, m_max]
    c_paren: dict = field(default_factory=dict)    # c(m) for m in [1, m_max]
    sigma: dict = field(default_factory=dict)      # sigma_m for m in [1, m_max]
    sigma_paren: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        def enc(b: Ball) -> dict:
            return {"re": b.center.real, "im": b.center.imag, "radius": b.radius}
        return {
            "m_max": self.m_max,
            "truncation_terms": self.n_terms,
            "c_m": {str(m): enc(b) for m, b in sorted(self.c.items())},
            "c_paren": {str(m): enc(b) for m, b in sorted(self.c_paren.items())},
            "sigma_m": {str(m): enc(b) for m, b in sorted(self.sigma.items())},
            "sigma_paren": {str(m): enc(b) for m, b in sorted(self.sigma_paren.items())},
        }


def build_table(m_max: int = 16, n_terms: int = DEFAULT_L) -> ConstantTable:
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    table = ConstantTable(m_max=m_max, n_terms=n_terms)
    for m in range(-m_max, m_max + 1):
        table.c[m] = c_m(m, n_terms)
    for m in range(1, m_max + 1):
        table.c_paren[m] = c_paren(m, n_terms)
        table.sigma[m] = sigma(m, n_terms)
        table.sigma_paren[m] = sigma_paren(m, n_terms)
    # structural invariants: conjugation and index doubling
    for m in range(1, m_max // 2 + 1):
        assert table.c[2 * m].overlaps(table.c[m])
    for m in range(1, m_max + 1):
        assert table.c[-m].overlaps(table.c[m].conjugate())
    return table
