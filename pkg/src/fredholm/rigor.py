"""Self-validated complex arithmetic.

Every numeric quantity downstream is carried as a :class:`Ball`, a complex
center plus a radius that dominates all rounding and truncation error, so
that the usual operations are inclusion-monotone: if x is in A and y is in
B then x*y is in A*B, and so on.  Exact angles in Q/Z live in
:class:`RationalAngle`, which keeps arbitrary-size integers so that phases
like 2^n/3^(2^a) never touch floating point before the final cos/sin.
"""

from __future__ import annotations

import cmath
import math
import sys
from fractions import Fraction

EPS = sys.float_info.epsilon
TWO_PI = 2.0 * math.pi

__all__ = [
    "Ball",
    "BallDomainError",
    "RationalAngle",
    "ball_e",
    "ball_e_rational",
]


class BallDomainError(ValueError):
    """Raised when an operation's precondition fails (e.g. zero divisor)."""


def _check_finite(center: complex, radius: float) -> None:
    if not (math.isfinite(center.real) and math.isfinite(center.imag)):
        raise BallDomainError(f"non-finite ball center {center!r}")
    if not math.isfinite(radius) or radius < 0.0:
        raise BallDomainError(f"invalid ball radius {radius!r}")


class Ball:
    """Complex enclosure: the true value lies within `radius` of `center`.

    Radii are inflated by a conservative rounding allowance on every
    operation; all slack terms scale with operand magnitude, so exact
    integer arithmetic (radius 0, representable centers) stays exact.
    """

    __slots__ = ("center", "radius")

    def __init__(self, center: complex, radius: float = 0.0):
        center = complex(center)
        radius = float(radius)
        _check_finite(center, radius)
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "radius", radius)

    def __setattr__(self, name, value):  # immutable
        raise AttributeError("Ball is immutable")

    # ----- construction helpers ------------------------------------------

    @staticmethod
    def ensure(x) -> "Ball":
        """Coerce a complex/float/int (treated as exact) or Ball."""
        if isinstance(x, Ball):
            return x
        return Ball(complex(x))

    # ----- basic queries ---------------------------------------------------

    def abs_bounds(self) -> tuple[float, float]:
        """Certified (lower, upper) bounds for |value|."""
        m = abs(self.center)
        lo = m - self.radius - 2.0 * EPS * m
        hi = m + self.radius + 2.0 * EPS * m
        return (max(0.0, lo), hi)

    @property
    def mag_lower(self) -> float:
        return self.abs_bounds()[0]

    @property
    def mag_upper(self) -> float:
        return self.abs_bounds()[1]

    def contains_zero(self) -> bool:
        return self.mag_lower == 0.0

    def contains(self, z: complex) -> bool:
        # Small cushion: membership checks are used by tests, not proofs.
        return abs(complex(z) - self.center) <= self.radius * (1 + 8 * EPS) + 8 * EPS * abs(self.center)

    def overlaps(self, other: "Ball") -> bool:
        d = abs(self.center - other.center)
        slack = 8 * EPS * (abs(self.center) + abs(other.center) + 1.0)
        return d <= self.radius + other.radius + slack

    def real_bounds(self) -> tuple[float, float]:
        return (self.center.real - self.radius, self.center.real + self.radius)

    def imag_bounds(self) -> tuple[float, float]:
        return (self.center.imag - self.radius, self.center.imag + self.radius)

    # ----- arithmetic ------------------------------------------------------

    def __add__(self, other) -> "Ball":
        o = Ball.ensure(other)
        c = self.center + o.center
        # rounding of the center sum is at most EPS*(|a|+|b|) per component
        r = self.radius + o.radius + EPS * (abs(self.center) + abs(o.center))
        return Ball(c, r * (1.0 + 4.0 * EPS))

    __radd__ = __add__

    def __neg__(self) -> "Ball":
        return Ball(-self.center, self.radius)

    def __sub__(self, other) -> "Ball":
        return self + (-Ball.ensure(other))

    def __rsub__(self, other) -> "Ball":
        return Ball.ensure(other) + (-self)

    def __mul__(self, other) -> "Ball":
        o = Ball.ensure(other)
        a, b = self.center, o.center
        ra, rb = self.radius, o.radius
        c = a * b
        ma, mb = abs(a), abs(b)
        # |xy - ab| <= ma*rb + mb*ra + ra*rb for x in A, y in B, plus
        # complex-multiply rounding ~ sqrt(5)*EPS*ma*mb.
        r = ma * rb + mb * ra + ra * rb + 4.0 * EPS * ma * mb
        return Ball(c, r * (1.0 + 8.0 * EPS))

    __rmul__ = __mul__

    def inverse(self) -> "Ball":
        m = abs(self.center)
        lo = m - self.radius - 2.0 * EPS * m
        if lo <= 0.0:
            raise BallDomainError("division by a ball containing zero")
        c = 1.0 / self.center
        # |1/x - 1/c| = |x-c| / (|x||c|) <= r / (lo * m)
        r = self.radius / (lo * m) + 4.0 * EPS / m
        return Ball(c, r * (1.0 + 8.0 * EPS))

    def __truediv__(self, other) -> "Ball":
        return self * Ball.ensure(other).inverse()

    def __rtruediv__(self, other) -> "Ball":
        return Ball.ensure(other) * self.inverse()

    def conjugate(self) -> "Ball":
        return Ball(self.center.conjugate(), self.radius)

    def scale_pow2(self, d: int) -> "Ball":
        """Multiply by 2**d exactly (d may be negative).

        Powers of two are exact float multipliers down to the subnormal
        range; callers keep |d| < 900 so no rounding occurs.
        """
        if abs(d) > 960:
            raise BallDomainError("scale_pow2 exponent out of exact range")
        s = math.ldexp(1.0, d)
        return Ball(self.center * s, self.radius * s)

    def pow_int(self, n: int) -> "Ball":
        """Integer power by repeated ball multiplication (n >= 0)."""
        if n < 0:
            return self.pow_int(-n).inverse()
        result = Ball(1.0)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def widen(self, extra: float) -> "Ball":
        """Add `extra` (must be >= 0) to the radius; used for tail bounds."""
        if extra < 0.0:
            raise BallDomainError("widen expects a non-negative amount")
        return Ball(self.center, (self.radius + extra) * (1.0 + 4.0 * EPS))

    # ----- misc ------------------------------------------------------------

    @property
    def real_ball(self) -> "Ball":
        """Enclosure of Re(value) as a real-centered ball."""
        return Ball(complex(self.center.real, 0.0), self.radius)

    @property
    def imag_ball(self) -> "Ball":
        return Ball(complex(self.center.imag, 0.0), self.radius)

    def __repr__(self) -> str:
        return f"Ball({self.center!r}, {self.radius:.3e})"


def ball_arith(op: str, a: Ball, b: Ball) -> Ball:
    """Dispatch form of the four basic operations (kept for the API surface)."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


class RationalAngle:
    """An exact angle theta in Q/Z, stored reduced with 0 <= num < den."""

    __slots__ = ("frac",)

    def __init__(self, numerator, denominator: int = 1):
        if isinstance(numerator, Fraction) and denominator == 1:
            f = numerator
        else:
            f = Fraction(numerator, denominator)
        f = f % 1
        object.__setattr__(self, "frac", f)

    def __setattr__(self, name, value):
        raise AttributeError("RationalAngle is immutable")

    @property
    def numerator(self) -> int:
        return self.frac.numerator

    @property
    def denominator(self) -> int:
        return self.frac.denominator

    def times_pow2(self, n: int) -> "RationalAngle":
        """Exact 2**n * theta mod 1 via modular exponentiation.

        Keeps integers small even for n in the millions: only
        2**n mod denominator is ever formed.
        """
        if n < 0:
            return RationalAngle(self.frac * Fraction(1, 2 ** (-n)))
        q = self.denominator
        p = (pow(2, n, q) * self.numerator) % q
        return RationalAngle(p, q)

    def half(self) -> "RationalAngle":
        """theta/2 as an angle (choosing the representative in [0,1))."""
        return RationalAngle(self.frac / 2)

    def __add__(self, other: "RationalAngle") -> "RationalAngle":
        return RationalAngle(self.frac + other.frac)

    def __sub__(self, other: "RationalAngle") -> "RationalAngle":
        return RationalAngle(self.frac - other.frac)

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalAngle) and self.frac == other.frac

    def __hash__(self) -> int:
        return hash(("RationalAngle", self.frac))

    def to_float(self) -> float:
        return float(self.frac)

    def __repr__(self) -> str:
        return f"RationalAngle({self.numerator}/{self.denominator})"


def ball_e(z) -> Ball:
    """Certified enclosure of e(z) = exp(2*pi*i*z) for a Ball or complex z."""
    b = Ball.ensure(z)
    zc, r = b.center, b.radius
    c = cmath.exp(2j * math.pi * zc)
    mc = abs(c)
    # phase rounding: the argument 2*pi*z carries relative error ~EPS,
    # i.e. absolute phase error <= 2*pi*|z|*EPS; plus exp/cos/sin slack.
    slack = mc * (TWO_PI * abs(zc) + 8.0) * EPS
    if r == 0.0:
        return Ball(c, slack)
    # magnitude bound over the ball
    exponent = -TWO_PI * (zc.imag - r)
    if exponent > 690.0:
        raise BallDomainError("ball_e: input too far below the real axis")
    mag_hi = math.exp(exponent)
    lip = TWO_PI * r * mag_hi           # sup |d e / dz| * r over the ball
    hull = mag_hi + mc                  # |e(w)| <= mag_hi, crude fallback
    return Ball(c, min(lip, hull) * (1.0 + 8.0 * EPS) + slack)


def ball_e_rational(theta: RationalAngle) -> Ball:
    """Enclosure of the root of unity e(theta) from an exact reduced angle.

    The only float steps are one division p/q (correctly rounded), one
    multiply by 2*pi and the final cos/sin, so the radius is a flat few
    dozen ulps regardless of how large the denominator is.
    """
    x = theta.numerator / theta.denominator  # in [0, 1), correctly rounded
    ang = TWO_PI * x
    c = complex(math.cos(ang), math.sin(ang))
    return Ball(c, 32.0 * EPS)


def ball_abs_bounds(b: Ball) -> tuple[float, float]:
    """Certified bounds of |value|; a positive lower bound proves nonzero."""
    return b.abs_bounds()
