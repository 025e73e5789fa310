"""Certified evaluators for the lacunary series and its companions.

f(z)   = sum_{n>=0} z^(2^n)                     on the unit disk
F(w)   = f(e(w)) = sum_{n>=0} e(2^n w)          on the upper half-plane
G(w)   = sum_{l>=1} e(-1/2^l) (e(w/2^l) - 1)    entire
H(w)   = sum_{l>=1} (e(w/2^l) - 1)              entire
S(w)   = F(w) + G(w)
S1(w)  = S(w+1) = F(w) + H(w) - c_{-1}

All evaluators return Balls whose radii include an explicit truncation
tail for the chosen term count, so the enclosures are valid for the full
infinite series.  Points exponentially close to the unit circle are
represented in microscope form w = theta + u * 2^(-n) with an exact
rational theta; the phase of each term is then computed by modular
exponentiation and only the compact offset u ever meets floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .rigor import (
    EPS,
    TWO_PI,
    Ball,
    BallDomainError,
    RationalAngle,
    ball_e,
    ball_e_rational,
)

__all__ = [
    "TruncationPlan",
    "MicroscopePoint",
    "eval_f",
    "eval_f_partial",
    "f_tail_bound",
    "eval_F",
    "eval_F_micro",
    "eval_G",
    "eval_H",
    "eval_S",
    "eval_S1",
    "eval_S_deriv",
    "residual_functional_equation",
    "delta_ms",
    "c_minus_1",
]

_LOG_TINY = -700.0  # exp() of anything below this is treated as exp(-700)


def _safe_exp(x: float) -> float:
    """exp with a conservative floor: never rounds a positive bound to 0."""
    if x > 690.0:
        raise BallDomainError("tail bound overflow")
    return math.exp(max(x, _LOG_TINY)) * (1.0 + 4.0 * EPS)


@dataclass(frozen=True)
class TruncationPlan:
    """Number of retained terms plus the family whose tail formula applies."""

    terms: int
    family: str = "auto"

    def __post_init__(self):
        if self.terms < 1:
            raise ValueError("terms must be >= 1")


@dataclass(frozen=True)
class MicroscopePoint:
    """w = base + offset * 2^(-scale), with exact rational base.

    The offset is a Ball confined to the upper half-plane; this is the only
    faithful way to address points whose distance to the boundary is of
    order 2^(-scale) with scale in the thousands.
    """

    base: RationalAngle
    scale: int
    offset: Ball

    def __post_init__(self):
        if self.scale < 0:
            raise ValueError("scale must be >= 0")
        if self.offset.center.imag - self.offset.radius <= 0.0:
            raise BallDomainError("microscope offset must stay in the upper half-plane")

    @property
    def im_lower(self) -> float:
        return self.offset.center.imag - self.offset.radius


# --------------------------------------------------------------------------
# f on the unit disk
# --------------------------------------------------------------------------


def _disk_radius_hi(z: Ball) -> float:
    r_hi = z.mag_upper
    if r_hi >= 1.0:
        raise BallDomainError(f"|z| must be < 1 (got upper bound {r_hi})")
    return r_hi


def f_tail_bound(r_hi: float, n_terms: int) -> float:
    """Upper bound for sum_{n >= n_terms} r^(2^n), r = r_hi < 1.

    Since 2^n >= 2^N + (n - N) for n >= N, the tail is dominated by
    r^(2^N) * sum_{j>=0} r^j = r^(2^N) / (1 - r).
    """
    if r_hi <= 0.0:
        return 0.0
    log_head = math.ldexp(1.0, n_terms) * math.log(r_hi)
    return _safe_exp(log_head) / (1.0 - r_hi) * (1.0 + 4.0 * EPS)


def _default_f_terms(r_hi: float) -> int:
    if r_hi <= 0.0:
        return 1
    log_r = math.log(r_hi)
    for n in range(1, 64):
        if math.ldexp(1.0, n) * log_r < -45.0:  # tail below ~1e-19 / (1-r)
            return n
    return 64


def eval_f_partial(z, n_terms: int) -> Ball:
    """Ball enclosure of the partial sum sum_{n=0}^{n_terms-1} z^(2^n).

    No tail is added; used directly by contour certificates that pair a
    partial sum with a separately-stated tail bound.
    """
    zb = Ball.ensure(z)
    acc = Ball(0.0)
    power = zb
    for _ in range(n_terms):
        acc = acc + power
        power = power * power
    return acc


def eval_f(z, plan: TruncationPlan | None = None) -> Ball:
    """Certified enclosure of f(z) = sum z^(2^n) for |z| < 1."""
    zb = Ball.ensure(z)
    r_hi = _disk_radius_hi(zb)
    n_terms = plan.terms if plan is not None else _default_f_terms(r_hi)
    partial = eval_f_partial(zb, n_terms)
    return partial.widen(f_tail_bound(r_hi, n_terms))


def f_prime_tail_bound(r_hi: float, n_terms: int) -> float:
    """Upper bound for sum_{n >= n_terms} 2^n r^(2^n - 1)."""
    if r_hi <= 0.0:
        return 0.0
    log_r = math.log(r_hi)
    first = math.ldexp(1.0, n_terms) * log_r
    # successive term ratio is 2 * r^(2^n) <= 2 * exp(first); require < 1/2
    ratio = 2.0 * _safe_exp(first)
    if ratio >= 0.5:
        raise BallDomainError("f' tail: not enough terms for a geometric bound")
    head = math.ldexp(1.0, n_terms) * _safe_exp(first - log_r)
    return head / (1.0 - ratio) * (1.0 + 4.0 * EPS)


def eval_f_prime(z, plan: TruncationPlan | None = None) -> Ball:
    """Certified enclosure of f'(z) = sum 2^n z^(2^n - 1)."""
    zb = Ball.ensure(z)
    r_hi = _disk_radius_hi(zb)
    n_terms = plan.terms if plan is not None else max(_default_f_terms(r_hi) + 2, 6)
    acc = Ball(0.0)
    power = Ball(1.0)   # z^(2^n - 1)
    doubling = zb       # z^(2^n)
    for n in range(n_terms):
        acc = acc + power.scale_pow2(n)  # 2^n * z^(2^n - 1)
        power = power * doubling         # -> z^(2^(n+1) - 1)
        doubling = doubling * doubling
    return acc.widen(f_prime_tail_bound(r_hi, n_terms))


# --------------------------------------------------------------------------
# F on the upper half-plane
# --------------------------------------------------------------------------


def _reduce_mod1(zb: Ball) -> Ball:
    """Shift the center's real part by an exact integer into [-0.5, 0.5).

    F and e are 1-periodic; reducing first keeps the phase slack of
    ball_e proportional to O(1) rather than to |Re w|.
    """
    shift = math.floor(zb.center.real + 0.5)
    if shift == 0:
        return zb
    return Ball(zb.center - shift, zb.radius)


def _im_lower(zb: Ball) -> float:
    t_lo = zb.center.imag - zb.radius
    if t_lo <= 0.0:
        raise BallDomainError("w must lie in the open upper half-plane")
    return t_lo


def _default_F_terms(t_lo: float) -> int:
    # smallest N with 2^N * t >= 8, so the tail ratio exp(-2 pi 2^N t) is < 1e-21
    n = max(1, math.ceil(math.log2(8.0 / t_lo)) + 1)
    return min(n, 64)


def F_tail_bound(t_lo: float, n_terms: int) -> float:
    """Tail of sum |e(2^n w)| = exp(-2 pi 2^n t) for n >= n_terms."""
    x = TWO_PI * math.ldexp(1.0, n_terms) * t_lo
    first = _safe_exp(-x)
    if first >= 0.5:
        raise BallDomainError("F tail: not enough terms for a geometric bound")
    return first / (1.0 - first) * (1.0 + 4.0 * EPS)


def eval_F_partial(w, n_terms: int) -> Ball:
    wb = _reduce_mod1(Ball.ensure(w))
    acc = Ball(0.0)
    cur = wb
    for _ in range(n_terms):
        acc = acc + ball_e(cur)
        cur = _reduce_mod1(cur.scale_pow2(1))
    return acc


def eval_F(w, plan: TruncationPlan | None = None) -> Ball:
    """Certified enclosure of F(w) = sum e(2^n w), Im w > 0.

    Accepts a complex, a Ball, or a MicroscopePoint.
    """
    if isinstance(w, MicroscopePoint):
        return eval_F_micro(w, plan)
    wb = Ball.ensure(w)
    t_lo = _im_lower(wb)
    n_terms = plan.terms if plan is not None else _default_F_terms(t_lo)
    return eval_F_partial(wb, n_terms).widen(F_tail_bound(t_lo, n_terms))


def micro_default_terms(mp: MicroscopePoint) -> int:
    guard = max(4, math.ceil(math.log2(8.0 / mp.im_lower)) + 1)
    return mp.scale + min(guard, 60)


def micro_tail_bound(mp: MicroscopePoint, n_terms: int) -> float:
    """Tail for the microscope expansion of F after n_terms terms.

    Term n has magnitude exp(-2 pi 2^(n-scale) Im u); the bound requires
    the first omitted exponent to be >= 2 pi (ratio then < 1/500).
    """
    d = n_terms - mp.scale
    if d < 1:
        raise BallDomainError("microscope plan too short: tail not geometric yet")
    x = TWO_PI * math.ldexp(1.0, d) * mp.im_lower
    if x < TWO_PI:
        raise BallDomainError("microscope plan too short: tail not geometric yet")
    first = _safe_exp(-x)
    return first / (1.0 - first) * (1.0 + 4.0 * EPS)


def eval_F_micro_partial(mp: MicroscopePoint, n_terms: int) -> Ball:
    """Partial sum of F at theta + u 2^(-scale), exact phases.

    Term n is e(2^n theta) * e(2^(n-scale) u): the root of unity comes
    from exact modular exponentiation, the offset factor from ball_e of
    an exactly-scaled ball.  For n far below scale the offset factor is
    1 up to < 1e-250, which is absorbed into the radius.
    """
    acc = Ball(0.0)
    for n in range(n_terms):
        phase = ball_e_rational(mp.base.times_pow2(n))
        d = n - mp.scale
        if d < -900:
            # |e(2^d u) - 1| <= 2 pi 2^d |u| e^(2 pi 2^d |u|) < 1e-250
            term = phase.widen(1e-250)
        else:
            term = phase * ball_e(mp.offset.scale_pow2(d))
        acc = acc + term
    return acc


def eval_F_micro(mp: MicroscopePoint, plan: TruncationPlan | None = None) -> Ball:
    n_terms = plan.terms if plan is not None else micro_default_terms(mp)
    return eval_F_micro_partial(mp, n_terms).widen(micro_tail_bound(mp, n_terms))


def micro_f_derivative(mp: MicroscopePoint, n_terms: int | None = None) -> Ball:
    """d/du F(theta + u 2^(-scale)) as a certified ball.

    Term n: e(2^n theta) * 2 pi i 2^(n-scale) * e(2^(n-scale) u).
    """
    if n_terms is None:
        n_terms = micro_default_terms(mp)
    acc = Ball(0.0)
    for n in range(n_terms):
        d = n - mp.scale
        if d < -900:
            # term magnitude <= 2 pi 2^d (1 + eps) < 1e-250
            acc = acc.widen(1e-250)
            continue
        phase = ball_e_rational(mp.base.times_pow2(n))
        factor = Ball(complex(0.0, math.ldexp(TWO_PI, d)), math.ldexp(TWO_PI, d) * 4 * EPS)
        acc = acc + phase * factor * ball_e(mp.offset.scale_pow2(d))
    # tail: magnitudes 2 pi 2^d exp(-2 pi 2^d Im u), geometric once 2^d Im u >= 2
    dtop = n_terms - mp.scale
    x = TWO_PI * math.ldexp(1.0, dtop) * mp.im_lower
    if x < 2.0 * TWO_PI:
        raise BallDomainError("derivative plan too short")
    first = math.ldexp(TWO_PI, dtop) * _safe_exp(-x)
    return acc.widen(2.0 * first)


# --------------------------------------------------------------------------
# G, H (entire companions)
# --------------------------------------------------------------------------

DEFAULT_GH_TERMS = 64


def gh_tail_bound(w_abs_hi: float, n_terms: int) -> float:
    """Tail for sum_{l > L} |e(w/2^l) - 1| with L = n_terms.

    |e(x) - 1| <= 2 pi |x| e^(2 pi |x|); summing the geometric envelope
    gives 2 pi |w| 2^(-L) e^(2 pi |w| 2^(-L-1)), doubled for safety.
    """
    u = TWO_PI * w_abs_hi * math.ldexp(1.0, -(n_terms + 1))
    return TWO_PI * w_abs_hi * math.ldexp(1.0, -n_terms) * _safe_exp(u) * 2.0


def eval_H(w, plan: TruncationPlan | None = None) -> Ball:
    """Certified enclosure of H(w) = sum_{l>=1} (e(w/2^l) - 1) (entire)."""
    wb = Ball.ensure(w)
    n_terms = plan.terms if plan is not None else DEFAULT_GH_TERMS
    acc = Ball(0.0)
    for l in range(1, n_terms + 1):
        acc = acc + (ball_e(wb.scale_pow2(-l)) - 1.0)
    return acc.widen(gh_tail_bound(wb.mag_upper, n_terms))


def eval_G(w, plan: TruncationPlan | None = None) -> Ball:
    """Certified enclosure of G(w) = sum e(-1/2^l)(e(w/2^l) - 1) (entire)."""
    wb = Ball.ensure(w)
    n_terms = plan.terms if plan is not None else DEFAULT_GH_TERMS
    acc = Ball(0.0)
    for l in range(1, n_terms + 1):
        root = ball_e_rational(RationalAngle(-1, 2 ** l))
        acc = acc + root * (ball_e(wb.scale_pow2(-l)) - 1.0)
    return acc.widen(gh_tail_bound(wb.mag_upper, n_terms))


def c_minus_1(n_terms: int = DEFAULT_GH_TERMS) -> Ball:
    """The constant sum_{l>=1} (e(-1/2^l) - 1) = H(-1)."""
    return eval_H(Ball(-1.0), TruncationPlan(n_terms))


# --------------------------------------------------------------------------
# S and its derivatives
# --------------------------------------------------------------------------


def eval_S(w, plan: TruncationPlan | None = None) -> Ball:
    """S(w) = F(w) + G(w), Im w > 0."""
    return eval_F(w, plan) + eval_G(w, None if plan is None else plan)


def eval_S1(w, plan: TruncationPlan | None = None, route: str = "shift") -> Ball:
    """S1(w) = S(w+1); the 'direct' route uses F(w) + H(w) - c_{-1}.

    The two routes must agree as enclosures; tests exercise both.
    """
    wb = Ball.ensure(w)
    if route == "shift":
        return eval_S(wb + 1.0, plan)
    if route == "direct":
        return eval_F(wb, plan) + eval_H(wb, plan) - c_minus_1()
    raise ValueError(f"unknown route {route!r}")


def _scalar_ball(c: complex, ulps: float = 8.0) -> Ball:
    return Ball(c, abs(c) * ulps * EPS)


def eval_S_deriv(w, k: int, plan: TruncationPlan | None = None) -> Ball:
    """Certified S^(k)(w) by term-wise differentiation, k >= 1.

    S^(k)(w) = sum_n (2 pi i 2^n)^k e(2^n w)
             + sum_{l>=1} (2 pi i / 2^l)^k e((w-1)/2^l).
    """
    if k < 1:
        raise ValueError("k must be >= 1 (use eval_S for k = 0)")
    wb = Ball.ensure(w)
    t_lo = _im_lower(wb)

    # first sub-series: need 2^N t >= k/pi + 8 so terms decay geometrically
    n1 = max(1, math.ceil(math.log2((k / math.pi + 8.0) / t_lo)) + 1)
    n1 = min(n1, 64)
    acc = Ball(0.0)
    for n in range(n1):
        factor = _scalar_ball((2j * math.pi) ** k, 8.0 * k).scale_pow2(n * k)
        acc = acc + factor * ball_e(_reduce_mod1(wb.scale_pow2(n)))
    x = TWO_PI * math.ldexp(1.0, n1) * t_lo
    ratio = _safe_exp(k * math.log(2.0) - x)
    if ratio >= 0.5:
        raise BallDomainError("derivative series: term count cap too small for this w")
    first = (TWO_PI ** k) * _safe_exp(k * n1 * math.log(2.0) - x)
    acc = acc.widen(first / (1.0 - ratio) * (1.0 + 4.0 * EPS))

    # second sub-series: terms (2 pi / 2^l)^k, ratio 2^(-k) <= 1/2
    n2 = plan.terms if plan is not None else DEFAULT_GH_TERMS
    shifted = wb - 1.0
    for l in range(1, n2 + 1):
        factor = _scalar_ball((2j * math.pi) ** k, 8.0 * k).scale_pow2(-l * k)
        acc = acc + factor * ball_e(shifted.scale_pow2(-l))
    first2 = (TWO_PI ** k) * math.ldexp(1.0, -(n2 + 1) * k)
    return acc.widen(2.0 * first2)


# --------------------------------------------------------------------------
# functional-equation residuals
# --------------------------------------------------------------------------


def delta_ms(m: int, s: int, w, n_terms: int = DEFAULT_GH_TERMS) -> Ball:
    """Certified Delta_{m,s}(w) = sum_{l>=1} (e(w/2^(l+s)) - 1)(e(m/2^l) - 1)."""
    wb = Ball.ensure(w)
    acc = Ball(0.0)
    for l in range(1, n_terms + 1):
        left = ball_e(wb.scale_pow2(-(l + s))) - 1.0
        right = ball_e_rational(RationalAngle(m, 2 ** l)) - 1.0
        acc = acc + left * right
    # tail: |left| <= 2 pi |w| 2^(-l-s) e^(eps_w), |right| <= 2 pi |m| 2^(-l) e^(eps_m)
    w_hi = wb.mag_upper
    ew = _safe_exp(TWO_PI * w_hi * math.ldexp(1.0, -(n_terms + 1 + s)))
    em = _safe_exp(TWO_PI * abs(m) * math.ldexp(1.0, -(n_terms + 1)))
    tail = (TWO_PI * w_hi) * (TWO_PI * abs(m)) * ew * em * math.ldexp(1.0, -s) \
        * math.ldexp(1.0, -2 * n_terms) * 2.0
    return acc.widen(tail)


def residual_functional_equation(identity: str, w, plan: TruncationPlan | None = None,
                                 m: int = 1, s: int = 0) -> Ball:
    """Enclosure of left minus right for one of the known identities.

    identity: 'F-shift'     F(w+1) - F(w)
              'F-double'    F(w) - e(w) - F(2w)
              'S1-double'   S1(2w) - S1(w) + 1
              'S1-translate' S1(w + m 2^s) - S1(w) - Delta_{m,s}(w) - c_m
    """
    wb = Ball.ensure(w)
    if identity == "F-shift":
        return eval_F(wb + 1.0, plan) - eval_F(wb, plan)
    if identity == "F-double":
        return eval_F(wb, plan) - ball_e(wb) - eval_F(wb.scale_pow2(1), plan)
    if identity == "S1-double":
        return eval_S1(wb.scale_pow2(1), plan) - eval_S1(wb, plan) + 1.0
    if identity == "S1-translate":
        shift = m * 2 ** s
        c_m = eval_H(Ball(float(m)))  # c_m = H(m)
        return (eval_S1(wb + float(shift), plan) - eval_S1(wb, plan)
                - delta_ms(m, s, wb) - c_m)
    raise ValueError(f"unknown identity {identity!r}")
