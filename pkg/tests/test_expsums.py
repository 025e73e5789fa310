import cmath
import math
import random
from fractions import Fraction

import pytest

from fredholm.expsums import (
    doubling_identity,
    make_report,
    measure_A,
    measure_bound,
    moment,
    moment_quadrature,
    s_n,
    s_n_rational,
)

rng = random.Random(90210)


def brute_s_n(theta: float, n: int) -> complex:
    return sum(cmath.exp(2j * math.pi * ((2 ** k * theta) % 1.0))
               for k in range(n))


class TestPointEvaluations:
    def test_matches_brute_force(self):
        for _ in range(200):
            theta = rng.random()
            n = rng.randrange(1, 30)
            assert abs(s_n(theta, n) - brute_s_n(theta, n)) < 1e-9

    def test_rational_matches_float(self):
        for _ in range(100):
            frac = Fraction(rng.randrange(0, 64), 64)
            n = rng.randrange(1, 20)
            assert abs(s_n_rational(frac, n) - s_n(float(frac), n)) < 1e-9

    def test_exact_at_third(self):
        # 2^k / 3 alternates between 1/3 and 2/3: conjugate phases
        val = s_n_rational(Fraction(1, 3), 2)
        want = cmath.exp(2j * math.pi / 3) + cmath.exp(4j * math.pi / 3)
        assert abs(val - want) < 1e-12

    def test_doubling_identity(self):
        for _ in range(50):
            theta = rng.random()
            n = rng.randrange(1, 12)
            assert doubling_identity(theta, n) < 1e-8

    def test_doubling_identity_rational(self):
        assert doubling_identity(Fraction(3, 7), 5) < 1e-10


class TestMoments:
    def test_exact_second_and_fourth(self):
        """Combinatorial counting gives M2 = n and M4 = 2n^2 - n exactly."""
        for n in range(1, 65):
            assert moment(n, 2) == n
            assert moment(n, 4) == 2 * n * n - n

    def test_quadrature_agrees(self):
        for n in range(1, 17):
            for p in (2, 4):
                exact = moment(n, p)
                quad = moment_quadrature(n, p)
                assert abs(quad - exact) <= 1e-6 * max(1.0, abs(exact))

    def test_unsupported_power_rejected(self):
        with pytest.raises(ValueError):
            moment(4, 3)


class TestMeasure:
    def test_lower_bound_formula(self):
        assert abs(measure_bound(2) - 18.0 / 48.0) < 1e-15

    def test_estimate_beats_bound(self):
        for n in range(2, 13):
            assert measure_A(n) >= measure_bound(n) - 0.01

    def test_report_roundtrip(self):
        rep = make_report(6)
        data = rep.to_json()
        assert data["n"] == 6
        assert data["M2"] == 6
        assert data["M4"] == 2 * 36 - 6
        assert data["measure_estimate"] >= data["measure_lower_bound"] - 0.01
