"""HTTP service exposing the library: verification suites, zero tables,
figure data, value attainment, constants and moments.

Every endpoint is a deterministic wrapper over library calls; request and
response shapes are pydantic models so the command-line client and tests
share one schema.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from .constants import build_table
from .expsums import make_report
from .figure import figure_data
from .verify import SUITES, run_suite
from .zeros import NotCertified, transport, zero_table, zero_table_newton

app = FastAPI(title="fredholm", version="0.1.0")


class ComplexIn(BaseModel):
    re: float = 0.0
    im: float = 0.0

    def value(self) -> complex:
        return complex(self.re, self.im)


class VerifyRequest(BaseModel):
    suite: str


class ZerosRequest(BaseModel):
    region: str | None = None     # "disk:cx,cy,r" | "rect:x0,y0,x1,y1"
    v: ComplexIn = Field(default_factory=ComplexIn)
    tol: float = 1e-12
    min_cell: float = 1e-4


class FigureRequest(BaseModel):
    n_terms: int = 13             # top dyadic exponent of the partial sum
    disk_radius: float = 1.0


class AttainRequest(BaseModel):
    v: ComplexIn = Field(default_factory=ComplexIn)
    a: int = 2
    seed: ComplexIn | None = None


def parse_region(text: str):
    kind, _, rest = text.partition(":")
    parts = rest.split(",")
    try:
        nums = [float(p) for p in parts]
    except ValueError:
        nums = []
    if kind == "disk" and len(nums) == 3 and nums[2] > 0:
        return ("disk", nums[0], nums[1], nums[2])
    if kind == "rect" and len(nums) == 4:
        x0, y0, x1, y1 = nums
        return ("rect", min(x0, x1), min(y0, y1), max(x0, x1), max(y0, y1))
    raise ValueError(f"bad region {text!r}; use disk:cx,cy,r or rect:x0,y0,x1,y1")


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/verify")
def verify(req: VerifyRequest) -> dict:
    if req.suite not in SUITES:
        raise HTTPException(status_code=422,
                            detail=f"unknown suite {req.suite!r}; choose from {list(SUITES)}")
    return run_suite(req.suite).to_json()


@app.post("/zeros")
def zeros(req: ZerosRequest) -> dict:
    if req.region is None:
        return zero_table_newton(v=req.v.value(), tol=req.tol)
    try:
        region = parse_region(req.region)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    try:
        return zero_table(region, min_cell=req.min_cell, tol=req.tol,
                          v=req.v.value())
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc))


@app.post("/figure")
def figure(req: FigureRequest) -> dict:
    data = figure_data(req.n_terms, req.disk_radius)
    return {"count": len(data),
            "data": [{"theta": d.theta, "rho": d.rho,
                      "rho_rescaled": d.rho_rescaled} for d in data]}


@app.post("/attain")
def attain(req: AttainRequest) -> dict:
    seed = None if req.seed is None else req.seed.value()
    try:
        result = transport(req.a, req.v.value(), seed)
    except (NotCertified, ValueError) as exc:
        return {"ok": False, "error": str(exc),
                "v": {"re": req.v.re, "im": req.v.im}, "a": req.a}
    out = result.to_json()
    out["ok"] = True
    return out


@app.get("/constants")
def constants_table(m_max: int = 16) -> dict:
    return build_table(m_max).to_json()


@app.get("/moments")
def moments(n_max: int = 16) -> dict:
    rows = []
    for n in range(1, n_max + 1):
        rows.append(make_report(n).to_json())
    return {"rows": rows}
