"""Exact integer machinery behind the boundary-approach construction.

The parameter family is a = 1, 2, ...: k = 2^a, q = 3^k, n0 = phi(q),
theta0 = 1/q.  Powers of 2 enumerate all units mod q (2 is a primitive
root mod every 3^k), q is not squarefree, so the sum of e(2^m s / q) over
a full period of m is a vanishing Ramanujan sum.  Everything here is
verified with exact integers; the only Ball output is the numerically
summed Ramanujan sum itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .rigor import Ball, RationalAngle, ball_e_rational

__all__ = [
    "RamanujanParams",
    "make_params",
    "order_mod",
    "euler_phi",
    "ramanujan_sum",
    "phase_pow2",
    "check_mod_z",
]

DEFAULT_A_CAP = 4


@dataclass(frozen=True)
class RamanujanParams:
    a: int
    k: int          # 2^a
    q: int          # 3^k
    n0: int         # phi(q) = 2 * 3^(k-1)
    theta0: RationalAngle  # 1/q


class InvariantViolation(AssertionError):
    """An exactly-checkable arithmetic fact failed; this must abort loudly."""


def make_params(a: int, cap: int = DEFAULT_A_CAP) -> RamanujanParams:
    """Build and exactly verify the parameter tuple for a given a >= 1."""
    if a < 1:
        raise ValueError("a must be >= 1")
    if a > cap:
        raise ValueError(f"a={a} exceeds cap {cap} (raise cap explicitly to go larger)")
    k = 2 ** a
    q = 3 ** k
    n0 = 2 * 3 ** (k - 1)
    if q % 2 ** (a + 2) != 1:
        raise InvariantViolation(f"q = 3^{k} is not 1 mod 2^{a + 2}")
    # primitive-root check: ord(2 mod q) divides n0 = 2 * 3^(k-1); it equals
    # n0 iff 2^(n0/p) != 1 for the prime divisors p in {2, 3}.
    if pow(2, n0, q) != 1:
        raise InvariantViolation("2^phi(q) != 1 mod q")
    for p in (2, 3):
        if n0 % p == 0 and pow(2, n0 // p, q) == 1:
            raise InvariantViolation(f"2 has order dividing phi(q)/{p} mod {q}")
    return RamanujanParams(a=a, k=k, q=q, n0=n0, theta0=RationalAngle(1, q))


def order_mod(g: int, q: int) -> int:
    """Multiplicative order of g modulo q, by direct enumeration."""
    if q < 2:
        raise ValueError("modulus must be >= 2")
    if math.gcd(g, q) != 1:
        raise ValueError(f"gcd({g}, {q}) != 1")
    x = g % q
    order = 1
    while x != 1:
        x = (x * g) % q
        order += 1
        if order > q:  # unreachable for coprime g; guards a logic bug
            raise InvariantViolation("order search exceeded the modulus")
    return order


def euler_phi(q: int) -> int:
    """Euler totient by trial-division factorization (q is small here)."""
    if q < 1:
        raise ValueError("q must be >= 1")
    result = q
    n = q
    p = 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1 if p == 2 else 2
    if n > 1:
        result -= result // n
    return result


def ramanujan_sum(q: int, s: int) -> Ball:
    """Certified enclosure of sum_{m=0}^{phi(q)-1} e(2^m s / q).

    When 2 is a primitive root mod q the summands run over all primitive
    q-th roots of unity raised to the s-th power, i.e. a Ramanujan sum,
    which vanishes whenever q is not squarefree.  The vanishing is the
    claim under test, so we return an enclosure instead of asserting it.
    """
    if q < 2:
        raise ValueError("q must be >= 2")
    if math.gcd(s, q) != 1:
        raise ValueError(f"gcd({s}, {q}) != 1")
    phi = euler_phi(q)
    total = Ball(0.0)
    x = 1 % q
    for _ in range(phi):
        total = total + ball_e_rational(RationalAngle(s * x, q))
        x = (x * 2) % q
    return total


def phase_pow2(n: int, theta: RationalAngle) -> RationalAngle:
    """Exact 2^n * theta mod 1 (modular exponentiation on the denominator)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return theta.times_pow2(n)


def check_mod_z(params: RamanujanParams, l: int) -> bool:
    """Exact check in Q/Z that 2^(n0-l) theta0 == theta0/2^l - 1/2^l.

    Valid for 0 <= l <= a; a False return would contradict exact
    arithmetic facts, so callers treat it as a fatal inconsistency.
    """
    if not 0 <= l <= params.a:
        raise ValueError(f"l must be in [0, {params.a}]")
    lhs = params.theta0.times_pow2(params.n0 - l)
    rhs = RationalAngle(Fraction(1, params.q * 2 ** l) - Fraction(1, 2 ** l))
    return lhs == rhs
