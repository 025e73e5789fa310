import math

import pytest

from fredholm.rigor import Ball
from fredholm.zeros import (
    Contour,
    NotCertified,
    certify_rouche_f,
    certify_taylor_S,
    f_float,
    f_prime_float,
    newton_refine,
    transport,
    winding_number,
    zero_table,
    zero_table_newton,
)

REAL_ZERO = -0.65862675


class TestWinding:
    def test_linear_map_inside(self):
        k, floor = winding_number(lambda zb: zb - 0.2, Contour.circle(0.2, 0.1), 0.0)
        assert k == 1 and floor > 0.05

    def test_linear_map_outside(self):
        k, _ = winding_number(lambda zb: zb - 0.2, Contour.circle(0.6, 0.1), 0.0)
        assert k == 0

    def test_double_zero(self):
        k, _ = winding_number(lambda zb: (zb - 0.1) * (zb - 0.1),
                              Contour.circle(0.1, 0.05), 0.0)
        assert k == 2

    def test_zero_on_contour_refused(self):
        with pytest.raises(NotCertified):
            winding_number(lambda zb: zb, Contour.circle(0.1, 0.1), 0.0)


class TestNewton:
    def test_square_root(self):
        z = newton_refine(lambda z: z * z - 2.0, lambda z: 2.0 * z, 1.0)
        assert abs(z - math.sqrt(2.0)) < 1e-12

    def test_derivative_vanishing_rejected(self):
        with pytest.raises(NotCertified):
            newton_refine(lambda z: z * z + 1.0, lambda z: 0.0, 1.0)

    def test_half_plane_guard(self):
        z = newton_refine(lambda w: w - (1 + 1e-6j), lambda w: 1.0,
                          2.0 + 1.0j, keep_upper=True)
        assert z.imag > 0


class TestRoucheCertificates:
    def test_real_zero_certified(self):
        z = newton_refine(f_float, f_prime_float, -0.66)
        assert abs(z - REAL_ZERO) < 1e-7
        cert = certify_rouche_f(z, 1e-6)
        assert cert.winding == 1
        assert cert.contour_floor > cert.tail_or_remainder

    def test_origin_zero_certified(self):
        cert = certify_rouche_f(0.0, 1e-3)
        assert cert.winding == 1

    def test_zero_free_disk_certified_empty(self):
        cert = certify_rouche_f(0.4, 1e-3)   # f(0.4) is comfortably nonzero
        assert cert.winding == 0

    def test_value_certificates(self):
        # certify f = v solves near a Newton-refined point
        v = 0.25
        z = newton_refine(lambda z: f_float(z) - v, f_prime_float, 0.2)
        cert = certify_rouche_f(z, 1e-6, v)
        assert cert.winding == 1
        rec = cert.to_json()
        assert rec["target_re"] == v and rec["function"] == "f"

    def test_contour_must_fit_in_disk(self):
        with pytest.raises(Exception):
            certify_rouche_f(0.9995, 1e-3)


class TestTaylorCertificate:
    W0 = complex(-0.177323882, 0.144626388)

    def test_appendix_disk(self):
        cert = certify_taylor_S(self.W0, 0.002, 0.0)
        assert cert.winding >= 1

    def test_radius_too_big_rejected(self):
        with pytest.raises((NotCertified, Exception)):
            certify_taylor_S(self.W0, 0.1, 0.0)

    def test_wrong_center_rejected(self):
        with pytest.raises(NotCertified):
            certify_taylor_S(complex(-0.3, 0.3), 0.002, 0.0)


class TestTables:
    def test_subdivision_inner_disk(self):
        table = zero_table(("disk", 0.0, 0.0, 0.7), min_cell=1e-3)
        zs = sorted((complex(r["re"], r["im"]) for r in table["zeros"]),
                    key=lambda z: z.real)
        assert len(zs) == 2
        assert abs(zs[0] - REAL_ZERO) < 1e-7
        assert abs(zs[1]) < 1e-9
        assert not table["unresolved"]

    def test_empty_region(self):
        table = zero_table(("disk", 0.35, 0.0, 0.05))
        assert table["zeros"] == [] and not table["unresolved"]

    def test_region_outside_domain_rejected(self):
        with pytest.raises(ValueError):
            zero_table(("disk", 0.0, 0.0, 1.5))

    def test_newton_table_full(self):
        table = zero_table_newton()
        zs = [complex(r["re"], r["im"]) for r in table["zeros"]]
        assert len(zs) == 26
        # conjugate pairing: the table is closed under conjugation
        for z in zs:
            assert any(abs(z.conjugate() - w) < 1e-9 for w in zs)
        assert all(r["winding"] == 1 for r in table["zeros"])


class TestTransport:
    def test_zero_value_level_two(self):
        result = transport(2, 0.0)
        assert result.f_certificate.winding == 1
        exponent = result.ln_boundary_distance / math.log(2.0)
        assert abs(exponent + 54) < 12

    def test_bad_level_rejected(self):
        with pytest.raises(ValueError):
            transport(9, 0.0)
