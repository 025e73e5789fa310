"""Certified zero machinery.

Winding numbers are computed from certified argument increments: the
contour is split into segments until the image ball of every segment
excludes 0 and subtends less than a quarter turn; the integer winding is
then the accumulated principal argument of consecutive segment-endpoint
values.  Rouche certificates pair a partial sum with an explicit tail
bound; the half-plane companion gets the Taylor-based disk certificate;
and transport moves certified zeroes/values of S into microscope
coordinates where they become certified points of the disk series
exponentially close to z = 1.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from .numtheory import RamanujanParams, make_params
from .rigor import EPS, TWO_PI, Ball, BallDomainError
from .series import (
    MicroscopePoint,
    TruncationPlan,
    eval_F_micro,
    eval_F_micro_partial,
    eval_S,
    eval_S_deriv,
    eval_f,
    eval_f_partial,
    eval_f_prime,
    f_tail_bound,
    micro_default_terms,
    micro_f_derivative,
    micro_tail_bound,
)

__all__ = [
    "Contour",
    "ZeroCertificate",
    "TransportResult",
    "NotCertified",
    "winding_number",
    "subdivide_search",
    "newton_refine",
    "certify_taylor_S",
    "certify_rouche_f",
    "certify_rouche_f_micro",
    "approx_error",
    "transport",
    "zero_table",
]

DISK_SAFE_RADIUS = 0.999  # evaluation region cap: keeps tail bounds short
E = math.e


class NotCertified(RuntimeError):
    """A certificate condition failed; this is a result, not a crash."""


# --------------------------------------------------------------------------
# contours
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Contour:
    """A circle or axis-aligned rectangle boundary, parametrized by [0, 1)."""

    kind: str  # 'circle' | 'rect'
    params: tuple

    @staticmethod
    def circle(center: complex, radius: float) -> "Contour":
        if radius <= 0:
            raise ValueError("radius must be positive")
        return Contour("circle", (complex(center), float(radius)))

    @staticmethod
    def rect(x0: float, y0: float, x1: float, y1: float) -> "Contour":
        if not (x1 > x0 and y1 > y0):
            raise ValueError("rectangle corners must be ordered")
        return Contour("rect", (x0, y0, x1, y1))

    def point(self, t: float) -> complex:
        t %= 1.0
        if self.kind == "circle":
            c, r = self.params
            return c + r * cmath.exp(2j * math.pi * t)
        x0, y0, x1, y1 = self.params
        w, h = x1 - x0, y1 - y0
        per = 2 * (w + h)
        d = t * per
        if d < w:
            return complex(x0 + d, y0)
        d -= w
        if d < h:
            return complex(x1, y0 + d)
        d -= h
        if d < w:
            return complex(x1 - d, y1)
        d -= w
        return complex(x0, y1 - d)

    def enclosure(self, t0: float, t1: float) -> Ball:
        """Ball containing the contour piece for t in [t0, t1]."""
        tm = 0.5 * (t0 + t1)
        p = self.point(tm)
        if self.kind == "circle":
            c, r = self.params
            # arc within angle pi*(t1-t0) of the midpoint stays within
            # chord distance r * pi * (t1 - t0)
            rad = r * math.pi * (t1 - t0)
        else:
            x0, y0, x1, y1 = self.params
            per = 2 * ((x1 - x0) + (y1 - y0))
            rad = 0.5 * per * (t1 - t0)  # straight pieces; corners are fine too
        return Ball(p, rad * (1.0 + 8 * EPS) + 8 * EPS * abs(p))


# --------------------------------------------------------------------------
# certified winding numbers
# --------------------------------------------------------------------------


def _half_angle(b: Ball) -> float:
    """Half-angle of the sector (from the origin) containing the ball."""
    lo = b.mag_lower
    if lo <= 0.0:
        return math.pi
    ratio = min(1.0, (b.radius + 4 * EPS * abs(b.center)) / lo)
    return math.asin(ratio)


def winding_number(eval_ball, contour: Contour, v: complex = 0.0,
                   initial_segments: int = 16, max_segments: int = 4096):
    """Certified winding of (target - v) along the contour.

    eval_ball: Ball -> Ball certified evaluator of the target.
    Returns (winding, contour_floor).  Raises NotCertified when a segment
    cannot be refined to exclude v within the segment budget.
    """
    v = complex(v)
    stack = [(i / initial_segments, (i + 1) / initial_segments)
             for i in range(initial_segments)]
    accepted: list[tuple[float, float, Ball]] = []
    used = len(stack)
    while stack:
        t0, t1 = stack.pop()
        img = eval_ball(contour.enclosure(t0, t1)) - v
        if img.mag_lower > 0.0 and _half_angle(img) <= math.pi / 4.0:
            accepted.append((t0, t1, img))
            continue
        if used >= max_segments or (t1 - t0) < 1e-12:
            raise NotCertified(
                "contour refinement exhausted: target may vanish on or near the contour")
        tm = 0.5 * (t0 + t1)
        stack.extend([(t0, tm), (tm, t1)])
        used += 1
    accepted.sort(key=lambda seg: seg[0])

    # endpoint values (tiny balls) and accumulated principal arguments
    floor = min(seg[2].mag_lower for seg in accepted)
    endpoints = [seg[0] for seg in accepted]
    values = []
    err = 0.0
    for t in endpoints:
        pb = eval_ball(Ball(contour.point(t))) - v
        if pb.mag_lower <= 0.0:
            raise NotCertified("contour endpoint value cannot be separated from v")
        values.append(pb.center)
        err += 2.0 * _half_angle(pb)
    total = 0.0
    for i, val in enumerate(values):
        nxt = values[(i + 1) % len(values)]
        total += cmath.phase(nxt / val)
    k = round(total / TWO_PI)
    if abs(total - TWO_PI * k) + err >= math.pi / 2.0:
        raise NotCertified("winding sum too far from an integer multiple of 2 pi")
    return k, floor


# --------------------------------------------------------------------------
# certificates
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ZeroCertificate:
    """Proof record: `winding` zeroes of (function - target) lie in `disk`.

    For the rouche-partial-sum method the strict inequality
    contour_floor > tail_or_remainder transfers the winding of the
    truncated series to the full function.  winding == 0 certifies the
    absence of zeroes in the disk.
    """

    center: complex
    radius: float
    winding: int
    contour_floor: float
    tail_or_remainder: float
    method: str           # 'rouche-partial-sum' | 'taylor-appendix'
    function: str         # 'f' | 'f-micro' | 'S'
    target: complex = 0.0
    n_terms: int = 0

    def to_json(self) -> dict:
        return {
            "re": self.center.real,
            "im": self.center.imag,
            "radius": self.radius,
            "winding": self.winding,
            "contour_floor": self.contour_floor,
            "tail_bound": self.tail_or_remainder,
            "method": self.method,
            "function": self.function,
            "target_re": self.target.real,
            "target_im": self.target.imag,
            "n_terms": self.n_terms,
        }


def _default_partial_terms(r_hi: float) -> int:
    """Terms so that the partial-sum tail is far below typical floors."""
    if r_hi <= 0.0:
        return 4
    log_r = math.log(r_hi)
    for n in range(2, 40):
        if math.ldexp(1.0, n) * log_r < -60.0:  # tail < ~1e-26/(1-r)
            return n
    return 40


def certify_rouche_f(center: complex, radius: float, v: complex = 0.0,
                     n_terms: int | None = None) -> ZeroCertificate:
    """Rouche certificate for zeroes of f - v in the disk (center, radius).

    Uses the truncated series on the contour with a certified minimum,
    against the explicit geometric tail of the omitted terms.
    """
    center = complex(center)
    r_hi = abs(center) + radius
    if r_hi >= DISK_SAFE_RADIUS:
        raise BallDomainError(f"contour must stay within |z| <= {DISK_SAFE_RADIUS}")
    if n_terms is None:
        n_terms = _default_partial_terms(r_hi)
    tail = f_tail_bound(r_hi * (1 + 4 * EPS), n_terms)
    contour = Contour.circle(center, radius)
    k, floor = winding_number(lambda zb: eval_f_partial(zb, n_terms), contour, v)
    if floor <= tail:
        raise NotCertified(
            f"contour floor {floor:.3e} does not dominate the tail {tail:.3e}")
    if k < 0:
        raise NotCertified("negative winding: evaluator inconsistency")
    return ZeroCertificate(center, radius, k, floor, tail,
                           "rouche-partial-sum", "f", complex(v), n_terms)


def certify_rouche_f_micro(params: RamanujanParams, u_center: complex,
                           radius: float, v: complex = 0.0,
                           n_terms: int | None = None) -> ZeroCertificate:
    """Rouche certificate in microscope coordinates u around theta0.

    Certifies zeroes of F(theta0 + u 2^(-n0)) - v, i.e. of f - v at points
    exponentially close to z = 1, on the u-circle (u_center, radius).
    """
    offset = Ball(complex(u_center), radius)
    mp = MicroscopePoint(params.theta0, params.n0, offset)
    if n_terms is None:
        n_terms = micro_default_terms(mp)
    tail = micro_tail_bound(mp, n_terms)
    contour = Contour.circle(u_center, radius)

    def ev(ub: Ball) -> Ball:
        return eval_F_micro_partial(MicroscopePoint(params.theta0, params.n0, ub),
                                    n_terms)

    k, floor = winding_number(ev, contour, v)
    if floor <= tail:
        raise NotCertified(
            f"microscope contour floor {floor:.3e} does not dominate tail {tail:.3e}")
    return ZeroCertificate(complex(u_center), radius, k, floor, tail,
                           "rouche-partial-sum", "f-micro", complex(v), n_terms)


def certify_taylor_S(w0: complex, rho: float, v: complex = 0.0) -> ZeroCertificate:
    """Disk certificate for a zero of S - v from Taylor data at the center.

    On |w - w0| = rho the derivative bounds give
      |S(w) - v| >= |S'(w0)| rho - |S(w0) - v|
                    - 4 e^2 rho^2 / (t0 (t0 - 2 e rho))
                    - (3 e^(3 rho) - 9 rho - 3).
    If this lower bound strictly exceeds |S(w0) - v|, the minimum of
    |S - v| over the closed disk is attained in the interior, where by the
    minimum-modulus principle it must vanish.
    """
    w0 = complex(w0)
    t0 = w0.imag
    if rho <= 0.0:
        raise ValueError("rho must be positive")
    if t0 <= 2.0 * E * rho:
        raise BallDomainError(
            f"bound invalid: need Im w0 = {t0} > 2 e rho = {2 * E * rho}")
    s0 = eval_S(Ball(w0)) - complex(v)
    s1 = eval_S_deriv(Ball(w0), 1)
    s0_hi = s0.mag_upper
    s1_lo = s1.mag_lower
    # remainder of the quadratic-and-higher Taylor terms (upper bounds)
    rem_geo = 4.0 * E * E * rho * rho / (t0 * (t0 - 2.0 * E * rho)) * (1 + 1e-12)
    rem_ent = (3.0 * math.exp(3.0 * rho) * (1 + 1e-12) - 9.0 * rho - 3.0)
    rem = rem_geo + rem_ent
    lower = s1_lo * rho - s0_hi - rem
    if lower <= s0_hi:
        raise NotCertified(
            f"Taylor lower bound {lower:.3e} does not exceed the center value {s0_hi:.3e}")
    return ZeroCertificate(w0, rho, 1, lower, rem, "taylor-appendix", "S", complex(v))


# --------------------------------------------------------------------------
# fast (non-certified) float evaluation, for search and Newton
# --------------------------------------------------------------------------


def _f_float_terms(r: float) -> int:
    if r <= 0.0:
        return 2
    lr = math.log(r)
    for n in range(2, 40):
        if math.ldexp(1.0, n) * lr < -55.0:
            return n
    return 40


def f_float(z: complex, n_terms: int | None = None) -> complex:
    if n_terms is None:
        n_terms = _f_float_terms(abs(z))
    total = 0j
    p = z
    for _ in range(n_terms):
        total += p
        p *= p
    return total


def f_prime_float(z: complex, n_terms: int | None = None) -> complex:
    if n_terms is None:
        n_terms = _f_float_terms(abs(z))
    total = 0j
    power = 1 + 0j   # z^(2^n - 1)
    doubling = z
    for n in range(n_terms):
        total += math.ldexp(1.0, n) * power
        power *= doubling
        doubling *= doubling
    return total


def S_float(w: complex, gh_terms: int = 64) -> complex:
    t = w.imag
    if t <= 0:
        raise BallDomainError("Im w must be positive")
    n1 = min(64, max(1, math.ceil(math.log2(8.0 / t)) + 1))
    total = 0j
    for n in range(n1):
        total += cmath.exp(2j * math.pi * (w * math.ldexp(1.0, n)))
    for l in range(1, gh_terms + 1):
        s = math.ldexp(1.0, -l)
        total += cmath.exp(-2j * math.pi * s) * (cmath.exp(2j * math.pi * w * s) - 1.0)
    return total


def S_prime_float(w: complex, gh_terms: int = 64) -> complex:
    t = w.imag
    n1 = min(64, max(1, math.ceil(math.log2(10.0 / t)) + 1))
    total = 0j
    for n in range(n1):
        total += (2j * math.pi * math.ldexp(1.0, n)) * cmath.exp(
            2j * math.pi * (w * math.ldexp(1.0, n)))
    for l in range(1, gh_terms + 1):
        s = math.ldexp(1.0, -l)
        total += (2j * math.pi * s) * cmath.exp(2j * math.pi * (w - 1.0) * s)
    return total


def micro_F_float(params: RamanujanParams, u: complex, guard: int = 12) -> complex:
    """Float microscope evaluation of F(theta0 + u 2^(-n0)); phases exact."""
    q, n0 = params.q, params.n0
    total = 0j
    x = 1 % q
    for n in range(n0 + guard):
        d = n - n0
        phase = cmath.exp(2j * math.pi * (x / q))
        if d >= -900:
            phase *= cmath.exp(2j * math.pi * (u * math.ldexp(1.0, d)))
        total += phase
        x = (x * 2) % q
    return total


def micro_F_prime_float(params: RamanujanParams, u: complex, guard: int = 12) -> complex:
    q, n0 = params.q, params.n0
    total = 0j
    x = 1 % q
    for n in range(n0 + guard):
        d = n - n0
        if d >= -900:
            s = math.ldexp(1.0, d)
            total += (cmath.exp(2j * math.pi * (x / q))
                      * (2j * math.pi * s)
                      * cmath.exp(2j * math.pi * (u * s)))
        x = (x * 2) % q
    return total


def _micro_seed_grid(params: RamanujanParams, v: complex, guard: int = 12) -> complex:
    """Grid start minimizing |F_micro - v| over the offset plane.

    Terms with 2^(n - n0) below 2^-30 barely feel the offset, so their
    phases are summed once as a scalar; only the last few dozen terms get
    the offset factor.  Good to ~1e-6, plenty for a Newton start.
    """
    import numpy as np

    q, n0 = params.q, params.n0
    re = np.linspace(-40.0, 40.0, 3201)
    t = np.geomspace(1e-4, 2.0, 60)
    W = re[None, :] + 1j * t[:, None]
    depth = min(n0, 30)
    head = 0j
    x = 1 % q
    for n in range(n0 - depth):
        head += cmath.exp(2j * math.pi * (x / q))
        x = (x * 2) % q
    total = np.full_like(W, head, dtype=complex)
    for n in range(n0 - depth, n0 + guard):
        d = n - n0
        phase = cmath.exp(2j * math.pi * (x / q))
        total += phase * np.exp(2j * math.pi * (W * math.ldexp(1.0, d)))
        x = (x * 2) % q
    i, j = np.unravel_index(np.argmin(np.abs(total - v)), W.shape)
    return complex(W[i, j])


def newton_refine(func, dfunc, guess: complex, tol: float = 1e-12,
                  max_iter: int = 50, keep_upper: bool = False) -> complex:
    """Newton iteration with step-size stopping; certification is separate."""
    z = complex(guess)
    for _ in range(max_iter):
        d = dfunc(z)
        if abs(d) < 1e-30:
            raise NotCertified(f"derivative vanished near {z}")
        step = func(z) / d
        znew = z - step
        if keep_upper:
            shrink = 0
            while znew.imag <= 0 and shrink < 60:
                step *= 0.5
                znew = z - step
                shrink += 1
            if znew.imag <= 0:
                raise NotCertified("Newton step left the upper half-plane")
        z = znew
        if abs(step) < tol * max(1.0, abs(z)):
            return z
    raise NotCertified(f"Newton did not converge (last iterate {z})")


# --------------------------------------------------------------------------
# subdivision search on the disk
# --------------------------------------------------------------------------


def _region_contains(region, x: float, y: float) -> bool:
    if region[0] == "disk":
        _, cx, cy, r = region
        return (x - cx) ** 2 + (y - cy) ** 2 <= r * r
    _, x0, y0, x1, y1 = region
    return x0 <= x <= x1 and y0 <= y <= y1


def _region_bbox(region) -> tuple[float, float, float, float]:
    if region[0] == "disk":
        _, cx, cy, r = region
        return (cx - r, cy - r, cx + r, cy + r)
    return region[1:]


def _cell_intersects_region(region, cell) -> bool:
    x0, y0, x1, y1 = cell
    if region[0] == "rect":
        _, rx0, ry0, rx1, ry1 = region
        return not (x1 < rx0 or x0 > rx1 or y1 < ry0 or y0 > ry1)
    _, cx, cy, r = region
    nx = min(max(cx, x0), x1)
    ny = min(max(cy, y0), y1)
    return (nx - cx) ** 2 + (ny - cy) ** 2 <= r * r


def _cell_min_abs(cell) -> float:
    x0, y0, x1, y1 = cell
    nx = min(max(0.0, x0), x1)
    ny = min(max(0.0, y0), y1)
    return math.hypot(nx, ny)


@dataclass
class SearchResult:
    candidates: list = field(default_factory=list)  # (center, radius, winding)
    unresolved: list = field(default_factory=list)  # cells or cluster disks


def subdivide_search(region, min_cell: float = 1e-4, v: complex = 0.0,
                     plan: TruncationPlan | None = None) -> SearchResult:
    """Exhaustive certified search for zeroes of f - v in the region.

    Splits cells on the longer side until the full-series ball evaluation
    excludes v; surviving minimum-size cells are clustered, and each
    cluster gets a certified winding count on an enclosing circle.
    Clusters whose winding cannot be certified are reported unresolved,
    never dropped.
    """
    bx0, by0, bx1, by1 = _region_bbox(region)
    if math.hypot(max(abs(bx0), abs(bx1)), max(abs(by0), abs(by1))) >= DISK_SAFE_RADIUS:
        # clip rectangles against the evaluation cap; disks must fit outright
        if region[0] == "disk":
            raise ValueError(f"region must stay within |z| < {DISK_SAFE_RADIUS}")
    v = complex(v)
    cells = [(bx0, by0, bx1, by1)]
    survivors = []
    result = SearchResult()
    while cells:
        cell = cells.pop()
        if not _cell_intersects_region(region, cell):
            continue
        if _cell_min_abs(cell) >= DISK_SAFE_RADIUS:
            continue  # outside the evaluation domain (and outside any valid region)
        x0, y0, x1, y1 = cell
        cx, cy = 0.5 * (x0 + x1), 0.5 * (y0 + y1)
        half_diag = 0.5 * math.hypot(x1 - x0, y1 - y0)
        zball = Ball(complex(cx, cy), half_diag * (1 + 8 * EPS))
        if zball.mag_upper < DISK_SAFE_RADIUS:
            img = eval_f(zball, plan) - v
            if img.mag_lower > 0.0:
                continue
        if max(x1 - x0, y1 - y0) <= min_cell:
            survivors.append(cell)
            continue
        if (x1 - x0) >= (y1 - y0):
            xm = 0.5 * (x0 + x1)
            cells.extend([(x0, y0, xm, y1), (xm, y0, x1, y1)])
        else:
            ym = 0.5 * (y0 + y1)
            cells.extend([(x0, y0, x1, ym), (x0, ym, x1, y1)])

    for cluster in _cluster_cells(survivors, min_cell):
        x0, y0, x1, y1 = cluster
        center = complex(0.5 * (x0 + x1), 0.5 * (y0 + y1))
        radius = 0.5 * math.hypot(x1 - x0, y1 - y0) + 0.5 * min_cell
        placed = False
        for factor in (1.6, 2.4, 1.2, 3.5):
            r = radius * factor
            if abs(center) + r >= DISK_SAFE_RADIUS:
                continue
            try:
                k, _floor = winding_number(lambda zb: eval_f(zb, plan),
                                           Contour.circle(center, r), v)
            except NotCertified:
                continue
            if k >= 1:
                result.candidates.append((center, r, k))
            placed = True
            break
        if not placed:
            result.unresolved.append(cluster)
    result.candidates.sort(key=lambda c: (c[0].real, c[0].imag))
    return result


def _cluster_cells(cells, min_cell):
    """Merge adjacent cells into bounding boxes (union-find on overlap)."""
    n = len(cells)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    eps = 0.26 * min_cell
    for i in range(n):
        xi0, yi0, xi1, yi1 = cells[i]
        for j in range(i + 1, n):
            xj0, yj0, xj1, yj1 = cells[j]
            if not (xi1 + eps < xj0 or xj1 + eps < xi0
                    or yi1 + eps < yj0 or yj1 + eps < yi0):
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    groups: dict[int, list] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(cells[i])
    out = []
    for members in groups.values():
        out.append((min(c[0] for c in members), min(c[1] for c in members),
                    max(c[2] for c in members), max(c[3] for c in members)))
    out.sort()
    return out


# --------------------------------------------------------------------------
# zero tables
# --------------------------------------------------------------------------

DEDUP_TOL = 1e-9


def zero_table(region, min_cell: float = 1e-4, tol: float = 1e-12,
               v: complex = 0.0, cert_radius: float = 1e-6) -> dict:
    """All certified zeroes of f - v in the region, sorted and deduplicated.

    Returns {'zeros': [record...], 'unresolved': [...]}; each record is the
    JSON form of a ZeroCertificate centered at the refined zero.
    """
    search = subdivide_search(region, min_cell=min_cell, v=v)
    records = []
    unresolved = [list(c) for c in search.unresolved]
    for center, radius, k in search.candidates:
        if k > 1:
            # more than one zero in the cluster disk: retry at finer scale
            finer = subdivide_search(("disk", center.real, center.imag, radius),
                                     min_cell=min_cell / 8, v=v)
            sub = finer.candidates or [(center, radius, k)]
        else:
            sub = [(center, radius, k)]
        for c2, r2, k2 in sub:
            try:
                z = newton_refine(lambda z: f_float(z) - v, f_prime_float, c2, tol=tol)
            except NotCertified:
                unresolved.append([c2.real - r2, c2.imag - r2, c2.real + r2, c2.imag + r2])
                continue
            cert = None
            for rr in (cert_radius, cert_radius * 10, cert_radius * 100, cert_radius / 10):
                try:
                    attempt = certify_rouche_f(z, rr, v)
                except (NotCertified, BallDomainError):
                    continue
                if attempt.winding >= 1:
                    cert = attempt
                    break
            if cert is None:
                unresolved.append([c2.real - r2, c2.imag - r2, c2.real + r2, c2.imag + r2])
                continue
            records.append(cert)
    # dedup and deterministic order
    kept: list[ZeroCertificate] = []
    for cert in sorted(records, key=lambda c: (c.center.real, c.center.imag)):
        if all(abs(cert.center - other.center) > DEDUP_TOL for other in kept):
            kept.append(cert)
    return {"zeros": [c.to_json() for c in kept], "unresolved": unresolved}


DEFAULT_TABLE_RADIUS = 0.9958


def zero_table_newton(radius: float = DEFAULT_TABLE_RADIUS, v: complex = 0.0,
                      tol: float = 1e-12, cert_radius: float = 1e-6) -> dict:
    """Certified table of zeroes of f - v in |z| <= radius via dense seeding.

    Newton runs vectorized from a polar seed grid (dense near the circle,
    where the zeroes accumulate); every surviving point gets its own Rouche
    certificate, so the records are rigorous even though the sweep itself
    is heuristic.  Seeds that converge but resist certification are
    reported unresolved.
    """
    import numpy as np

    if radius >= DISK_SAFE_RADIUS:
        raise ValueError(f"radius must stay below {DISK_SAFE_RADIUS}")
    v = complex(v)
    n_top = 14
    radii = 1.0 - np.geomspace(1.0 - 0.3, 1.0 - radius, 64)
    angles = np.linspace(0.0, 2.0 * math.pi, 720, endpoint=False)
    z = (radii[:, None] * np.exp(1j * angles[None, :])).ravel()
    with np.errstate(all="ignore"):
        for _ in range(60):
            p = np.zeros_like(z)
            dp = np.zeros_like(z)
            power = z.copy()
            for n in range(n_top + 1):
                p += power
                dp += math.ldexp(1.0, n) * power
                if n < n_top:
                    power = power * power
            step = (p - v) * z / dp
            step = np.where(np.isfinite(step), step, 0.0)
            z = np.where(np.abs(z) < 1.02, z - step, z)

        p = np.zeros_like(z)
        power = z.copy()
        for n in range(n_top + 1):
            p += power
            if n < n_top:
                power = power * power
        resid = np.abs(p - v)
    good = z[(np.abs(z) <= radius) & (resid < 1e-10) & np.isfinite(z)]
    # dedupe converged seeds before the expensive certification pass
    seen: list[complex] = []
    for zz in sorted(map(complex, good), key=lambda c: (c.real, c.imag)):
        if all(abs(zz - s) > DEDUP_TOL for s in seen):
            seen.append(zz)

    records = []
    unresolved = []
    for zz in seen:
        cert = None
        for rr in (cert_radius, cert_radius * 10, cert_radius * 100):
            try:
                attempt = certify_rouche_f(zz, rr, v)
            except (NotCertified, BallDomainError):
                continue
            if attempt.winding >= 1:
                cert = attempt
                break
        if cert is None:
            unresolved.append([zz.real - cert_radius, zz.imag - cert_radius,
                               zz.real + cert_radius, zz.imag + cert_radius])
        else:
            records.append(cert)
    return {"zeros": [c.to_json() for c in records], "unresolved": unresolved}


# --------------------------------------------------------------------------
# boundary transport
# --------------------------------------------------------------------------


def approx_error(a: int, w, plan: TruncationPlan | None = None) -> float:
    """Certified upper bound of |F(w 2^(-n0) + theta0) - S(w)|."""
    params = make_params(a)
    mp = MicroscopePoint(params.theta0, params.n0, Ball.ensure(w))
    diff = eval_F_micro(mp, plan) - eval_S(Ball.ensure(w))
    return diff.mag_upper


@dataclass
class TransportResult:
    params: RamanujanParams
    s_certificate: ZeroCertificate          # zero of S - v near the seed
    micro_offset: complex                   # refined u with F(theta0 + u 2^-n0) = v
    f_certificate: ZeroCertificate          # Rouche certificate in u coordinates
    ln_boundary_distance: float             # ln(1 - |e(w)|) at the certified point

    def to_json(self) -> dict:
        return {
            "a": self.params.a,
            "q": self.params.q,
            "n0": self.params.n0,
            "theta0": f"1/{self.params.q}",
            "s_zero": self.s_certificate.to_json(),
            "micro_offset_re": self.micro_offset.real,
            "micro_offset_im": self.micro_offset.imag,
            "f_certificate": self.f_certificate.to_json(),
            "ln_boundary_distance": self.ln_boundary_distance,
            "boundary_distance_exponent_log2": self.ln_boundary_distance / math.log(2.0),
        }


def _seed_grid(v: complex) -> complex:
    """Coarse grid start minimizing |S - v|."""
    import numpy as np

    re = np.linspace(-40.0, 40.0, 3201)
    t = np.geomspace(0.02, 2.0, 50)
    W = re[None, :] + 1j * t[:, None]
    S = np.zeros_like(W, dtype=complex)
    for n in range(14):
        S += np.exp(2j * math.pi * (W * math.ldexp(1.0, n)))
    for l in range(1, 64):
        s = math.ldexp(1.0, -l)
        S += cmath.exp(-2j * math.pi * s) * (np.exp(2j * math.pi * W * s) - 1.0)
    i, j = np.unravel_index(np.argmin(np.abs(S - v)), W.shape)
    return complex(W[i, j])


# first dyadic translation constant: S(w + m 2^s) - S(w) -> (m/|m|) * C1.conj
# ... for m = -1 (and C1 itself for m = +1) as s grows.
_C1 = complex(-3.3946498021251648, 2.481049919333724)


def _locate_value(v: complex, tol: float, depth: int = 0) -> complex | None:
    """Find any upper half-plane solution of S(w) = v, at whatever height.

    Direct grid + Newton first.  Values with |Im v| beyond the reach of the
    base window are built up through the dyadic translation identity: a
    shift by +-2^s (s large) changes S by C1 (or its conjugate) up to a
    correction that Newton absorbs, so we solve for v -+ C1 recursively and
    translate the solution.
    """
    w0 = _seed_grid(v)
    try:
        y = newton_refine(lambda w: S_float(w) - v, S_prime_float, w0,
                          tol=tol, keep_upper=True)
        if abs(S_float(y) - v) < 1e-9:
            return y
    except NotCertified:
        pass
    if depth < 6 and abs(v.imag) > 2.4:
        m = -1 if v.imag < 0 else 1
        shift = _C1.conjugate() if m == -1 else _C1
        base = _locate_value(v - shift, tol, depth + 1)
        if base is not None:
            try:
                y = newton_refine(lambda w: S_float(w) - v, S_prime_float,
                                  base + m * 1024.0, tol=tol, keep_upper=True)
                if abs(S_float(y) - v) < 1e-9:
                    return y
            except NotCertified:
                pass
    return None


def find_S_value_point(v: complex, seed: complex | None = None,
                       tol: float = 1e-12) -> complex:
    """Solve S(w) = v at a comfortable height above the real axis.

    Newton tends to converge at a tiny Im w where no disk certificate
    fits, so we exploit the exact ladder S(2y - 1) = S(y) - 1: locate
    S = v + k for some small k >= 0 at whatever height comes out, then
    lift k times (each lift doubles the height, lowering the value by 1)
    with a Newton polish after every lift.
    """
    if seed is not None:
        try:
            w = newton_refine(lambda w: S_float(w) - v, S_prime_float,
                              complex(seed), tol=tol, keep_upper=True)
            if abs(S_float(w) - v) < 1e-8 and 0.04 < w.imag <= 4.0:
                return w
        except NotCertified:
            pass
    fallback: complex | None = None
    for k in range(0, 14):
        y = _locate_value(v + k, tol)
        if y is None:
            continue
        if k > 0 and not 0.03 <= y.imag * math.ldexp(1.0, k) <= 6.0:
            continue
        ok = True
        for j in range(k):
            y = 2.0 * y - 1.0
            target = v + k - j - 1
            try:
                y = newton_refine(lambda w, t=target: S_float(w) - t,
                                  S_prime_float, y, tol=tol, keep_upper=True)
            except NotCertified:
                ok = False
                break
        if not ok or abs(S_float(y) - v) >= 1e-8:
            continue
        if 0.05 <= y.imag <= 4.0:
            return y
        if fallback is None and y.imag > 1e-5:
            fallback = y
    # Some values are only reachable very close to the real axis; a point
    # there is still fine -- the disk certificate just has to shrink with it.
    if fallback is not None:
        return fallback
    raise NotCertified(f"could not locate S = {v} at a usable height")


# the S = v search does not depend on the microscope level a
_value_point_cache: dict = {}


def _certify_s_zero(w: complex, v: complex) -> ZeroCertificate:
    for rho in (2e-3, 1e-3, 5e-3, 5e-4, 1e-2, 2e-4, 1e-5, 1e-6):
        if w.imag <= 2 * E * rho:
            continue
        try:
            return certify_taylor_S(w, rho, v)
        except (NotCertified, BallDomainError):
            continue
    raise NotCertified(f"no Taylor certificate found for S = {v} near {w}")


def transport(a: int, v: complex = 0.0, seed: complex | None = None) -> TransportResult:
    """Carry a certified S = v point to a certified f = v point near z = 1.

    Pipeline: certify a zero of S - v near the seed, Newton-refine the
    microscope offset u for F(theta0 + u 2^(-n0)) = v, check the residual
    independently, then issue a Rouche certificate in u coordinates.
    """
    v = complex(v)
    params = make_params(a)
    key = (v, None if seed is None else complex(seed))
    w_star = _value_point_cache.get(key)
    if w_star is None:
        w_star = find_S_value_point(v, seed)
        _value_point_cache[key] = w_star
    s_cert = _certify_s_zero(w_star, v)

    def micro_newton(start: complex) -> tuple[complex, float]:
        # enough terms that the omitted tail is negligible at this height
        g = max(12, int(math.log2(40.0 / start.imag)) + 1)
        u = newton_refine(lambda u: micro_F_float(params, u, guard=g) - v,
                          lambda u: micro_F_prime_float(params, u, guard=g),
                          start, tol=1e-13, keep_upper=True)
        # independent residual check before certification
        mp = MicroscopePoint(params.theta0, params.n0, Ball(u))
        return u, (eval_F_micro(mp) - v).mag_upper

    try:
        u, residual = micro_newton(w_star)
    except NotCertified:
        u, residual = w_star, math.inf
    if residual > 1e-9:
        # far from the cusp the microscope no longer shadows S closely;
        # reseed on the microscope landscape itself
        u, residual = micro_newton(_micro_seed_grid(params, v))
    if residual > 1e-9:
        raise NotCertified(
            f"refined microscope point has residual {residual:.3e} > 1e-9")

    f_cert = None
    last = None
    for rr in (1e-6, 1e-5, 1e-4, 1e-7, 1e-3):
        try:
            attempt = certify_rouche_f_micro(params, u, rr, v)
        except (NotCertified, BallDomainError) as exc:
            last = exc
            continue
        if attempt.winding >= 1:
            f_cert = attempt
            break
    if f_cert is None:
        raise NotCertified(f"microscope Rouche certification failed: {last}")

    ln_dist = math.log(TWO_PI * u.imag) - params.n0 * math.log(2.0)
    return TransportResult(params, s_cert, u, f_cert, ln_dist)
