import cmath
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fredholm.rigor import (
    Ball,
    BallDomainError,
    RationalAngle,
    ball_e,
    ball_e_rational,
)

rng = random.Random(424242)


def sample_in(ball: Ball, t: float, s: float) -> complex:
    return ball.center + ball.radius * t * cmath.exp(2j * math.pi * s)


def random_ball() -> Ball:
    c = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
    return Ball(c, abs(rng.gauss(0, 0.5)))


class TestBallArithmetic:
    def test_exact_zero_radius_for_exact_ops(self):
        z = Ball(complex(1.0, -2.0))
        assert (z + z).radius == 0.0 or (z + z).radius < 1e-15

    def test_inclusion_monotone_binary_ops(self):
        """Sampled points stay inside image balls across +,-,*,/ (10^4 trials)."""
        for _ in range(10_000):
            a, b = random_ball(), random_ball()
            ta, sa = rng.random(), rng.random()
            tb, sb = rng.random(), rng.random()
            x, y = sample_in(a, ta, sa), sample_in(b, tb, sb)
            assert (a + b).contains(x + y)
            assert (a - b).contains(x - y)
            assert (a * b).contains(x * y)
            if (b.mag_lower) > 1e-6:
                assert (a / b).contains(x / y)

    def test_division_by_zero_ball_raises(self):
        with pytest.raises(BallDomainError):
            Ball(1.0) / Ball(0.0, 0.5)

    def test_abs_bounds_bracket_samples(self):
        for _ in range(1000):
            a = random_ball()
            x = sample_in(a, rng.random(), rng.random())
            assert a.mag_lower <= abs(x) <= a.mag_upper * (1 + 1e-12)

    def test_scale_pow2_exact(self):
        b = Ball(complex(3.0, -7.0), 0.25)
        for d in (-300, -1, 0, 1, 300):
            s = b.scale_pow2(d)
            assert s.center == b.center * math.ldexp(1.0, d)
            assert s.radius == b.radius * math.ldexp(1.0, d)

    def test_pow_int_contains(self):
        for _ in range(500):
            a = random_ball()
            x = sample_in(a, rng.random(), rng.random())
            k = rng.randrange(0, 6)
            assert a.pow_int(k).contains(x ** k)

    def test_conjugate_and_parts(self):
        a = Ball(complex(1.5, -0.5), 0.1)
        assert a.conjugate().contains(complex(1.5, 0.5))
        assert a.real_ball.contains(1.5)
        assert a.imag_ball.contains(-0.5)

    @given(st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
           st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False))
    @settings(max_examples=300)
    def test_point_ball_ops_contain_float_result(self, x, y):
        a, b = Ball(x), Ball(y)
        assert (a + b).contains(x + y)
        assert (a * b).contains(x * y)


class TestExponential:
    def test_ball_e_contains_samples(self):
        for _ in range(2000):
            zc = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            zb = Ball(zc, abs(rng.gauss(0, 0.01)))
            w = sample_in(zb, rng.random(), rng.random())
            assert ball_e(zb).contains(cmath.exp(2j * math.pi * w))

    def test_ball_e_rational_overlaps_float_path(self):
        """Exact-phase and float evaluations must agree as enclosures."""
        for _ in range(1000):
            num = rng.randrange(-500, 500)
            den = rng.randrange(1, 500)
            ang = RationalAngle(Fraction(num, den))
            exact = ball_e_rational(ang)
            floaty = ball_e(Ball(complex(num / den, 0.0)))
            assert exact.overlaps(floaty)

    def test_ball_e_unit_modulus_on_reals(self):
        for x in (0.0, 0.25, 1.0 / 3.0, 0.9):
            b = ball_e(Ball(complex(x, 0.0)))
            assert b.mag_lower <= 1.0 <= b.mag_upper


class TestRationalAngle:
    def test_reduction_mod_one(self):
        assert RationalAngle(Fraction(7, 3)).frac == Fraction(1, 3)

    def test_times_pow2_matches_direct(self):
        a = RationalAngle(Fraction(5, 729))
        for n in (0, 1, 13, 54, 200):
            assert a.times_pow2(n).frac == (Fraction(5, 729) * 2 ** n) % 1

    def test_times_pow2_huge_exponent(self):
        a = RationalAngle(Fraction(1, 3 ** 27))
        big = a.times_pow2(2 * 3 ** 26)   # full multiplicative order: identity
        assert big.frac == a.frac
