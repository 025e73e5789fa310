import pytest
from fastapi.testclient import TestClient

from fredholm.service import app, parse_region

client = TestClient(app)


class TestParseRegion:
    def test_disk(self):
        assert parse_region("disk:0,0,0.5") == ("disk", 0.0, 0.0, 0.5)

    def test_rect_normalized(self):
        assert parse_region("rect:1,1,-1,-1") == ("rect", -1.0, -1.0, 1.0, 1.0)

    def test_garbage_rejected(self):
        for bad in ("disk:1,2", "rect:1,2,3", "blob:0,0,1", "disk:a,b,c",
                    "disk:0,0,-1"):
            with pytest.raises(ValueError):
                parse_region(bad)


class TestHealth:
    def test_ok(self):
        resp = client.get("/health")
        assert resp.status_code == 200
        assert resp.json() == {"status": "ok"}


class TestVerifyEndpoint:
    def test_known_suite(self):
        resp = client.post("/verify", json={"suite": "ramanujan"})
        assert resp.status_code == 200
        body = resp.json()
        assert body["suite"] == "ramanujan" and body["ok"] is True
        assert all("name" in c and "ok" in c for c in body["checks"])

    def test_unknown_suite(self):
        resp = client.post("/verify", json={"suite": "nope"})
        assert resp.status_code == 422


class TestZerosEndpoint:
    def test_small_region(self):
        resp = client.post("/zeros", json={"region": "disk:-0.66,0,0.02"})
        assert resp.status_code == 200
        body = resp.json()
        assert len(body["zeros"]) == 1
        rec = body["zeros"][0]
        assert abs(rec["re"] - (-0.65862675)) < 1e-6
        assert rec["winding"] == 1

    def test_bad_region(self):
        resp = client.post("/zeros", json={"region": "disk:0,0"})
        assert resp.status_code == 422

    def test_region_outside_domain(self):
        resp = client.post("/zeros", json={"region": "disk:0,0,2"})
        assert resp.status_code == 422

    def test_empty_region(self):
        resp = client.post("/zeros", json={"region": "rect:0.3,0.1,0.35,0.15"})
        assert resp.status_code == 200
        assert resp.json()["zeros"] == []


class TestFigureEndpoint:
    def test_small_partial_sum(self):
        resp = client.post("/figure", json={"n_terms": 5})
        assert resp.status_code == 200
        body = resp.json()
        assert body["count"] == len(body["data"])
        assert all(set(d) == {"theta", "rho", "rho_rescaled"} for d in body["data"])


class TestAttainEndpoint:
    def test_attain_zero(self):
        resp = client.post("/attain", json={"v": {"re": 0.0, "im": 0.0}, "a": 2})
        assert resp.status_code == 200
        body = resp.json()
        assert body["ok"] is True
        assert body["f_certificate"]["winding"] == 1

    def test_attain_bad_level_reports_failure(self):
        resp = client.post("/attain", json={"v": {"re": 0.0, "im": 0.0}, "a": 9})
        assert resp.status_code == 200
        body = resp.json()
        assert body["ok"] is False and "error" in body


class TestTables:
    def test_constants(self):
        resp = client.get("/constants", params={"m_max": 4})
        assert resp.status_code == 200
        body = resp.json()
        assert body["m_max"] == 4
        assert "1" in body["c_m"]

    def test_moments(self):
        resp = client.get("/moments", params={"n_max": 5})
        assert resp.status_code == 200
        rows = resp.json()["rows"]
        assert [r["M2"] for r in rows] == [1, 2, 3, 4, 5]

    def test_determinism(self):
        a = client.get("/constants", params={"m_max": 3}).text
        b = client.get("/constants", params={"m_max": 3}).text
        assert a == b
