import cmath
import math
import random
from fractions import Fraction

import mpmath as mp
import pytest

from fredholm.rigor import Ball, BallDomainError, RationalAngle
from fredholm.series import (
    MicroscopePoint,
    TruncationPlan,
    c_minus_1,
    delta_ms,
    eval_F,
    eval_F_micro,
    eval_G,
    eval_H,
    eval_S,
    eval_S1,
    eval_S_deriv,
    eval_f,
    eval_f_partial,
    eval_f_prime,
    f_tail_bound,
    residual_functional_equation,
)

rng = random.Random(31337)
mp.mp.dps = 40


def mp_e(w):
    return mp.e ** (2j * mp.pi * w)


def mp_f(z, terms=80):
    return sum(mp.mpmathify(z) ** (2 ** n) for n in range(terms))


def mp_F(w, terms=60):
    return sum(mp_e((2 ** n) * mp.mpmathify(w)) for n in range(terms))


def mp_H(w, terms=200):
    w = mp.mpmathify(w)
    return sum(mp_e(w / 2 ** l) - 1 for l in range(1, terms))


def mp_G(w, terms=200):
    w = mp.mpmathify(w)
    return sum(mp_e(mp.mpf(-1) / 2 ** l) * (mp_e(w / 2 ** l) - 1)
               for l in range(1, terms))


def mp_S(w):
    return mp_F(w) + mp_G(w)


def as_complex(x) -> complex:
    return complex(float(mp.re(x)), float(mp.im(x)))


def random_disk_point(r_max=0.95) -> complex:
    r = r_max * math.sqrt(rng.random())
    return r * cmath.exp(2j * math.pi * rng.random())


def random_upper(t_lo=0.05, t_hi=2.0) -> complex:
    return complex(rng.uniform(-2, 2), rng.uniform(t_lo, t_hi))


class TestDiskSeries:
    def test_f_matches_high_precision_oracle(self):
        for _ in range(200):
            z = random_disk_point()
            assert eval_f(Ball(z)).contains(as_complex(mp_f(z)))

    def test_f_prime_matches_oracle(self):
        for _ in range(60):
            z = random_disk_point(0.9)
            oracle = mp.diff(lambda t: mp_f(t), z)
            assert eval_f_prime(Ball(z)).contains(as_complex(oracle))

    def test_tail_bound_is_honest(self):
        """Certified tail dominates the actual omitted sum."""
        for _ in range(200):
            z = random_disk_point(0.99)
            n = rng.randrange(1, 12)
            actual = abs(mp_f(z) - sum(mp.mpmathify(z) ** (2 ** j)
                                       for j in range(n)))
            assert f_tail_bound(abs(z), n) >= float(actual)

    def test_partial_plus_tail_brackets_full(self):
        z = Ball(0.7 + 0.2j)
        part = eval_f_partial(z, 6)
        full = eval_f(z)
        assert abs(part.center - full.center) <= f_tail_bound(z.mag_upper, 6) \
            + part.radius + full.radius

    def test_rejects_points_outside_disk(self):
        with pytest.raises(BallDomainError):
            eval_f(Ball(1.01))


class TestHalfPlaneSeries:
    def test_F_matches_oracle(self):
        for _ in range(100):
            w = random_upper()
            assert eval_F(Ball(w)).contains(as_complex(mp_F(w)))

    def test_F_periodicity(self):
        for _ in range(50):
            w = random_upper()
            a, b = eval_F(Ball(w)), eval_F(Ball(w + 3.0))
            assert a.overlaps(b)

    def test_G_H_match_oracle(self):
        for _ in range(100):
            w = random_upper()
            assert eval_G(Ball(w)).contains(as_complex(mp_G(w)))
            assert eval_H(Ball(w)).contains(as_complex(mp_H(w)))

    def test_S_matches_oracle(self):
        for _ in range(100):
            w = random_upper()
            assert eval_S(Ball(w)).contains(as_complex(mp_S(w)))

    def test_S1_two_routes_agree(self):
        for _ in range(100):
            w = Ball(random_upper())
            assert eval_S1(w, route="shift").overlaps(eval_S1(w, route="direct"))

    def test_c_minus_1_is_H_at_minus_one(self):
        assert c_minus_1().contains(as_complex(mp_H(-1)))

    def test_S_deriv_matches_oracle(self):
        for _ in range(20):
            w = random_upper(0.2, 1.5)
            for k in (1, 2):
                oracle = mp.diff(lambda t: mp_S(t), w, k)
                assert eval_S_deriv(Ball(w), k).contains(as_complex(oracle))

    def test_delta_translation_correction(self):
        """S1(w + m 2^s) - S1(w) - c_m equals the explicit correction."""
        w, m, s = 0.3 + 0.4j, 1, 8
        wm = mp.mpmathify(w)  # shift in high precision; doubles would round
        lhs = mp_S(wm + m * 2 ** s + 1) - mp_S(wm + 1) - mp_H(m)
        assert delta_ms(m, s, Ball(w)).contains(as_complex(lhs))


class TestFunctionalEquations:
    def test_residuals_contain_zero(self):
        for _ in range(300):
            w = Ball(random_upper())
            for ident in ("F-shift", "F-double", "S1-double"):
                assert residual_functional_equation(ident, w).contains(0.0)

    def test_translate_residual(self):
        for m, s in ((1, 9), (-1, 11), (5, 10)):
            w = Ball(random_upper(0.1, 1.0))
            r = residual_functional_equation("S1-translate", w, m=m, s=s)
            assert r.contains(0.0)

    def test_unknown_identity_rejected(self):
        with pytest.raises(ValueError):
            residual_functional_equation("nope", Ball(1j))


class TestMicroscope:
    def test_matches_direct_evaluation_at_small_scale(self):
        for n in (0, 3, 6, 10, 16, 20):
            theta = RationalAngle(Fraction(1, 9))
            u = complex(0.3, 1.0)
            mp_pt = MicroscopePoint(theta, n, Ball(u))
            # cover the representation error of 1/9 as a double
            direct = eval_F(Ball(1.0 / 9.0 + u * math.ldexp(1.0, -n), 1e-16))
            assert eval_F_micro(mp_pt).overlaps(direct)

    def test_oracle_at_moderate_scale(self):
        theta = RationalAngle(Fraction(1, 81))
        u = complex(-0.2, 0.7)
        pt = MicroscopePoint(theta, 12, Ball(u))
        w = mp.mpf(1) / 81 + mp.mpmathify(u) / 2 ** 12
        assert eval_F_micro(pt).contains(as_complex(mp_F(w)))

    def test_deep_scale_does_not_blow_up(self):
        theta = RationalAngle(Fraction(1, 3 ** 8))
        pt = MicroscopePoint(theta, 2 * 3 ** 7, Ball(0.5 + 0.5j))
        ball = eval_F_micro(pt)
        assert math.isfinite(ball.mag_upper) and ball.mag_upper > 0.0

    def test_offset_must_be_upper(self):
        with pytest.raises(BallDomainError):
            MicroscopePoint(RationalAngle(Fraction(1, 9)), 5, Ball(1.0))


class TestPlans:
    def test_plan_controls_term_count(self):
        z = Ball(0.5)
        loose = eval_f(z, TruncationPlan(3))
        tight = eval_f(z, TruncationPlan(12))
        assert tight.radius <= loose.radius
        assert loose.overlaps(tight)

    def test_plan_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            TruncationPlan(0)
