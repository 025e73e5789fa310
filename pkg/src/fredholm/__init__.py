"""Rigorous numerics for the lacunary series sum z^(2^n) and its companions:
ball arithmetic, certified evaluation on the disk and the half-plane,
vanishing Ramanujan sums, certified zero location, and transport of
zeroes/values to points accumulating at z = 1.
"""

from .rigor import Ball, BallDomainError, RationalAngle, ball_e, ball_e_rational
from .series import MicroscopePoint, TruncationPlan

__version__ = "0.1.0"

__all__ = [
    "Ball",
    "BallDomainError",
    "RationalAngle",
    "ball_e",
    "ball_e_rational",
    "MicroscopePoint",
    "TruncationPlan",
    "__version__",
]
