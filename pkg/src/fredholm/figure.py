"""Root data for partial sums of the gap series.

The N-th partial sum z + z^2 + z^4 + ... + z^(2^N) factors as z * q(z)
with q of degree 2^N - 1.  Its roots crowd toward the unit circle (the
full series has a natural boundary there), which makes a plain scatter
unreadable; the emitted data therefore carries both the modulus rho and
the boundary-stretching rescaling log((1 + rho)/(1 - rho)).

Roots come from the Aberth-Ehrlich simultaneous iteration, which only
needs p/p' -- cheap here because the polynomial is sparse -- plus the
pairwise repulsion sum, done in numpy chunks.
"""

from __future__ import annotations

import cmath
import csv
import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class FigureDatum:
    theta: float
    rho: float
    rho_rescaled: float


def _ratio_p_over_dp(z: np.ndarray, n_top: int) -> np.ndarray:
    """p(z)/p'(z) for p = sum_{n=0}^{n_top} z^(2^n), by repeated squaring.

    Iterates outside the unit circle would overflow z^(2^n_top), so they
    are evaluated through w = 1/z: dividing p by z^(2^n_top) turns every
    exponent nonpositive and the powers of w underflow harmlessly.
    """
    out = np.empty_like(z)
    inside = np.abs(z) <= 1.0

    zi = z[inside]
    p = np.zeros_like(zi)
    dp = np.zeros_like(zi)
    power = zi.copy()          # z^(2^n)
    for n in range(n_top + 1):
        p += power
        # d/dz z^(2^n) = 2^n z^(2^n - 1); keep the 1/z factored out
        dp += math.ldexp(1.0, n) * power
        if n < n_top:
            power = power * power
    out[inside] = p * zi / dp

    zo = z[~inside]
    if len(zo):
        w = 1.0 / zo
        top = 1 << n_top
        a = np.ones_like(zo)
        b = np.full_like(zo, float(top))
        for n in range(n_top):
            term = w ** (top - (1 << n))
            a += term
            b += math.ldexp(1.0, n) * term
        out[~inside] = zo * a / b
    return out


def partial_sum_roots(n_top: int = 13, max_iter: int = 400,
                      tol: float = 1e-12) -> np.ndarray:
    """All nonzero roots of sum_{n=0}^{n_top} z^(2^n) (degree 2^n_top - 1
    after removing the simple root at the origin)."""
    deg = (1 << n_top) - 1
    rng = np.random.default_rng(20210915)
    # start just inside the unit circle, where the roots accumulate
    k = np.arange(deg)
    z = (0.97 + 0.02 * rng.random(deg)) * np.exp(
        2j * math.pi * (k + rng.random(deg)) / deg)

    chunk = 1024
    for _ in range(max_iter):
        ratio = _ratio_p_over_dp(z, n_top)
        repel = np.zeros_like(z)
        for lo in range(0, deg, chunk):
            block = z[lo:lo + chunk]
            diff = block[:, None] - z[None, :]
            diff[np.arange(len(block)), lo + np.arange(len(block))] = np.inf
            repel[lo:lo + chunk] = (1.0 / diff).sum(axis=1)
        step = ratio / (1.0 - ratio * repel)
        z = z - step
        if np.abs(step).max() < tol:
            break
    else:
        raise RuntimeError("root iteration did not converge")
    return z


def rescale(rho: float) -> float:
    return math.log((1.0 + rho) / (1.0 - rho))


def figure_data(n_top: int = 13, disk_radius: float = 1.0) -> list[FigureDatum]:
    """One datum per root of the partial sum inside |z| <= disk_radius,
    sorted by angle then modulus.  The simple root at the origin counts."""
    roots = partial_sum_roots(n_top)
    out = [FigureDatum(theta=0.0, rho=0.0, rho_rescaled=0.0)]
    for z in roots:
        rho = abs(z)
        # the rescaling needs rho < 1; a root rounding onto the circle is out
        if rho <= disk_radius and rho < 1.0:
            out.append(FigureDatum(theta=math.atan2(z.imag, z.real),
                                   rho=rho, rho_rescaled=rescale(rho)))
    out.sort(key=lambda d: (d.theta, d.rho))
    return out


def write_csv(data: list[FigureDatum], path: str) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["theta", "rho", "rho_rescaled"])
        for d in data:
            writer.writerow([f"{d.theta:.12g}", f"{d.rho:.12g}",
                             f"{d.rho_rescaled:.12g}"])


def write_svg(data: list[FigureDatum], path: str, size: int = 640) -> None:
    """Plain scatter of (rho_rescaled cos theta, rho_rescaled sin theta)."""
    if data:
        r_max = max(d.rho_rescaled for d in data)
    else:
        r_max = 1.0
    half = size / 2.0
    scale = (half - 10.0) / r_max
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" '
             f'width="{size}" height="{size}" '
             f'viewBox="0 0 {size} {size}">',
             f'<rect width="{size}" height="{size}" fill="white"/>']
    for d in data:
        x = half + scale * d.rho_rescaled * math.cos(d.theta)
        y = half - scale * d.rho_rescaled * math.sin(d.theta)
        parts.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="1" fill="black"/>')
    parts.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(parts))
