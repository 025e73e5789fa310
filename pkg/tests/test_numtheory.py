import math
from fractions import Fraction

import pytest

from fredholm.numtheory import (
    InvariantViolation,
    check_mod_z,
    euler_phi,
    make_params,
    order_mod,
    ramanujan_sum,
)


class TestParams:
    def test_small_levels(self):
        p1 = make_params(1)
        assert (p1.k, p1.q, p1.n0) == (2, 9, 6)
        p2 = make_params(2)
        assert (p2.k, p2.q, p2.n0) == (4, 81, 54)
        p3 = make_params(3)
        assert (p3.k, p3.q, p3.n0) == (8, 6561, 4374)

    def test_theta0_reduced(self):
        p = make_params(2)
        assert p.theta0.frac == Fraction(1, 81)

    def test_two_is_primitive_root(self):
        for a in (1, 2, 3):
            p = make_params(a)
            assert order_mod(2, p.q) == p.n0 == euler_phi(p.q)

    def test_congruence_mod_power_of_two(self):
        for a in (1, 2, 3):
            p = make_params(a)
            assert p.q % (1 << (a + 2)) == 1

    def test_cap_enforced(self):
        with pytest.raises(ValueError):
            make_params(5)
        with pytest.raises(ValueError):
            make_params(0)

    def test_cap_override(self):
        with pytest.raises(ValueError):
            make_params(4, cap=3)


class TestArithmeticHelpers:
    def test_euler_phi_oracle(self):
        """Brute-force gcd count agrees for every q up to 200."""
        for q in range(1, 201):
            brute = sum(1 for s in range(1, q + 1) if math.gcd(s, q) == 1)
            assert euler_phi(q) == brute

    def test_order_mod_oracle(self):
        for q in (3, 5, 7, 9, 11, 27, 81):
            for g in range(2, q):
                if math.gcd(g, q) != 1:
                    continue
                k, x = 1, g % q
                while x != 1:
                    x = (x * g) % q
                    k += 1
                assert order_mod(g, q) == k


class TestRamanujanSums:
    def test_vanishes_for_prime_power_q(self):
        """Sums over a full set of primitive q-th roots cancel for q = 3^k, k >= 2."""
        for q in (9, 27, 81, 729):
            for s in (1, 2, 4, 5, 7, 8):
                if math.gcd(s, q) != 1:
                    continue
                ball = ramanujan_sum(q, s)
                assert ball.contains(0.0)
                assert ball.mag_upper < 1e-9

    def test_does_not_vanish_for_prime_q(self):
        # for prime q the sum is the Moebius value -1, not 0
        ball = ramanujan_sum(3, 1)
        assert not ball.contains(0.0)
        assert abs(ball.center - (-1.0)) < 1e-12

    def test_congruence_identity_levels(self):
        for a in (1, 2, 3):
            p = make_params(a)
            for l in range(0, a + 1):
                assert check_mod_z(p, l)
