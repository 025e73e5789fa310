"""Named verification suites over the library's checkable claims.

Each suite returns a list of Check records (name, pass/fail, enclosure
radius, detail) so callers -- service endpoints, the command line, tests --
can render or aggregate them uniformly.  Suites are deterministic: random
sampling uses a fixed seed.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from . import constants, expsums
from .numtheory import make_params, ramanujan_sum
from .rigor import Ball
from .series import (
    eval_F,
    eval_H,
    eval_S,
    eval_S1,
    residual_functional_equation,
)
from .zeros import certify_taylor_S

SUITES = ("identities", "ramanujan", "constants", "appendix", "expsums")


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    radius: float | None = None
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok,
                "radius": self.radius, "detail": self.detail}


@dataclass
class SuiteReport:
    suite: str
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_json(self) -> dict:
        return {"suite": self.suite, "ok": self.ok,
                "checks": [c.to_json() for c in self.checks]}


def _zero_check(name: str, ball: Ball) -> Check:
    return Check(name, ball.contains(0.0), ball.mag_upper)


def suite_identities(n_points: int = 40, seed: int = 7) -> SuiteReport:
    rng = random.Random(seed)
    report = SuiteReport("identities")
    names = ("F-shift", "F-double", "S1-double")
    for i in range(n_points):
        w = complex(rng.uniform(-2.0, 2.0), rng.uniform(0.05, 2.0))
        for ident in names:
            r = residual_functional_equation(ident, Ball(w))
            report.checks.append(_zero_check(f"{ident}@{i}", r))
    for i, (m, s) in enumerate(((1, 10), (-1, 12), (3, 11))):
        w = complex(rng.uniform(-1.0, 1.0), rng.uniform(0.1, 1.0))
        r = residual_functional_equation("S1-translate", Ball(w), m=m, s=s)
        report.checks.append(_zero_check(f"S1-translate(m={m},s={s})@{i}", r))
    for t in (0.1, 0.5, 1.0, 5.0):
        im = (eval_F(Ball(1j * t)) + eval_H(Ball(1j * t))).imag_ball
        report.checks.append(_zero_check(f"Im(F+H)(i*{t})", im))
    return report


def suite_ramanujan(samples: int = 20, seed: int = 11) -> SuiteReport:
    rng = random.Random(seed)
    report = SuiteReport("ramanujan")
    for q in (9, 81, 729):
        coprime = [s for s in range(1, q) if math.gcd(s, q) == 1]
        for s in rng.sample(coprime, min(samples, len(coprime))):
            ball = ramanujan_sum(q, s)
            ok = ball.contains(0.0) and ball.mag_upper < 1e-9
            report.checks.append(Check(f"sum(q={q},s={s})", ok, ball.mag_upper))
    return report


def suite_constants() -> SuiteReport:
    report = SuiteReport("constants")
    for m in range(1, 17):
        a, b = constants.c_m(2 * m), constants.c_m(m)
        report.checks.append(Check(f"c_2m=c_m@{m}", a.overlaps(b),
                                   a.radius + b.radius))
    for m in range(1, 9):
        r = constants.binomial_c_paren_from_c(m) - constants.c_paren(m)
        report.checks.append(_zero_check(f"binom-roundtrip-paren@{m}", r))
        r = constants.binomial_c_from_c_paren(m) - constants.c_m(m)
        report.checks.append(_zero_check(f"binom-roundtrip-c@{m}", r))
    for m in range(1, 7):
        report.checks.append(
            _zero_check(f"recurrence@{m}", constants.verify_c_recurrence(m)))
    for m in range(1, 9):
        report.checks.append(
            _zero_check(f"chebyshev@{m}", constants.sigma_chebyshev_residual(m)))
    for m in range(5, 16):
        tail = constants.sigma_paren_tail(m)
        bound = 2.0 * (2.0 - math.sqrt(2.0 + math.sqrt(2.0))) ** m
        ok = tail.mag_upper <= bound
        report.checks.append(Check(f"asymptotic@{m}", ok, tail.mag_upper,
                                   f"bound {bound:.3e}"))
    return report


def suite_appendix() -> SuiteReport:
    report = SuiteReport("appendix")
    w0 = complex(-0.177323882, 0.144626388)
    s0 = eval_S(Ball(w0))
    report.checks.append(Check("S(w0) small", s0.mag_upper < 1e-2, s0.mag_upper))
    two_routes = eval_S1(Ball(w0), route="shift") - eval_S1(Ball(w0), route="direct")
    report.checks.append(_zero_check("S1 two-route agreement", two_routes))
    try:
        cert = certify_taylor_S(w0, 0.002, 0.0)
        report.checks.append(Check("taylor-disk (w0, 0.002)", cert.winding >= 1,
                                   cert.radius, f"floor {cert.contour_floor:.3e}"))
    except Exception as exc:  # report, never raise: the suite is a survey
        report.checks.append(Check("taylor-disk (w0, 0.002)", False, None, str(exc)))
    return report


def suite_expsums() -> SuiteReport:
    report = SuiteReport("expsums")
    for n in range(1, 65):
        m2 = expsums.moment(n, 2)
        m4 = expsums.moment(n, 4)
        report.checks.append(Check(f"M2(n={n})", m2 == n, detail=str(m2)))
        report.checks.append(Check(f"M4(n={n})", m4 == 2 * n * n - n, detail=str(m4)))
    for n in range(1, 17):
        for p in (2, 4):
            exact = expsums.moment(n, p)
            quad = expsums.moment_quadrature(n, p)
            ok = abs(quad - exact) <= 1e-6 * max(1.0, abs(exact))
            report.checks.append(Check(f"quadrature(n={n},p={p})", ok,
                                       detail=f"{quad:.9g} vs {exact}"))
    for n in range(2, 13):
        got = expsums.measure_A(n)
        want = expsums.measure_bound(n)
        report.checks.append(Check(f"measure(n={n})", got >= want - 0.01,
                                   detail=f"{got:.4f} >= {want:.4f} - 0.01"))
    return report


_SUITE_FNS = {
    "identities": suite_identities,
    "ramanujan": suite_ramanujan,
    "constants": suite_constants,
    "appendix": suite_appendix,
    "expsums": suite_expsums,
}


def run_suite(name: str) -> SuiteReport:
    try:
        fn = _SUITE_FNS[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITES}") from None
    return fn()
