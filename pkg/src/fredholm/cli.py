"""Command-line client for the service.

By default every command talks to an in-process instance of the HTTP app
(no sockets involved); `--server URL` points the same commands at a
remote deployment, and `serve` starts one.

Exit codes: 0 success, 1 check/pipeline failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import asyncio
import csv
import io
import json
import os
import sys

import httpx

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def parse_complex(text: str) -> complex:
    """Accept 'a+bi' as well as Python's 'a+bj' spelling."""
    cleaned = text.strip().replace(" ", "")
    try:
        return complex(cleaned.replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}")


def _call(server: str | None, method: str, path: str, **kwargs) -> httpx.Response:
    if server:
        with httpx.Client(base_url=server, timeout=600.0) as client:
            return client.request(method, path, **kwargs)

    from .service import app

    async def go():
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(transport=transport, timeout=None,
                                     base_url="http://app.internal") as client:
            return await client.request(method, path, **kwargs)

    return asyncio.run(go())


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _threads(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get("FREDHOLM_THREADS")
    return max(1, int(env)) if env and env.isdigit() else 4


def cmd_verify(args) -> int:
    from .verify import SUITES

    suites = list(SUITES) if args.suite == "all" else [args.suite]
    reports = []
    if len(suites) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=_threads(args)) as pool:
            futures = [pool.submit(_call, args.server, "POST", "/verify",
                                   json={"suite": s}) for s in suites]
            responses = [f.result() for f in futures]
    else:
        responses = [_call(args.server, "POST", "/verify", json={"suite": suites[0]})]
    for resp in responses:
        if resp.status_code != 200:
            sys.stderr.write(f"error: {resp.text}\n")
            return EXIT_USAGE
        reports.append(resp.json())
    payload = reports[0] if len(reports) == 1 else {"suites": reports}
    _emit(json.dumps(payload, indent=2), args.out)
    ok = all(r["ok"] for r in reports)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_zeros(args) -> int:
    body = {"tol": args.tol, "min_cell": args.min_cell,
            "v": {"re": args.v.real, "im": args.v.imag}}
    if args.region:
        body["region"] = args.region
    resp = _call(args.server, "POST", "/zeros", json=body)
    if resp.status_code != 200:
        sys.stderr.write(f"error: {resp.text}\n")
        return EXIT_USAGE
    table = resp.json()
    if args.format == "csv":
        buf = io.StringIO()
        cols = ["re", "im", "radius", "winding", "contour_floor", "tail_bound",
                "method", "function", "target_re", "target_im", "n_terms"]
        writer = csv.DictWriter(buf, fieldnames=cols)
        writer.writeheader()
        for rec in table["zeros"]:
            writer.writerow({k: rec[k] for k in cols})
        _emit(buf.getvalue(), args.out)
    else:
        lines = [json.dumps(rec) for rec in table["zeros"]]
        _emit("\n".join(lines) + ("\n" if lines else ""), args.out)
    if table["unresolved"]:
        sys.stderr.write(f"warning: {len(table['unresolved'])} unresolved regions\n")
    return EXIT_OK


def cmd_figure(args) -> int:
    resp = _call(args.server, "POST", "/figure",
                 json={"n_terms": args.terms, "disk_radius": args.disk_radius})
    if resp.status_code != 200:
        sys.stderr.write(f"error: {resp.text}\n")
        return EXIT_USAGE
    payload = resp.json()
    if args.format == "json":
        _emit(json.dumps(payload, indent=2), args.out)
    else:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["theta", "rho", "rho_rescaled"])
        for d in payload["data"]:
            writer.writerow([f"{d['theta']:.12g}", f"{d['rho']:.12g}",
                             f"{d['rho_rescaled']:.12g}"])
        _emit(buf.getvalue(), args.out)
    if args.svg:
        from .figure import FigureDatum, write_svg

        data = [FigureDatum(d["theta"], d["rho"], d["rho_rescaled"])
                for d in payload["data"]]
        write_svg(data, args.svg)
    return EXIT_OK


def cmd_attain(args) -> int:
    body = {"v": {"re": args.v.real, "im": args.v.imag}, "a": args.a}
    if args.seed is not None:
        body["seed"] = {"re": args.seed.real, "im": args.seed.imag}
    resp = _call(args.server, "POST", "/attain", json=body)
    if resp.status_code != 200:
        sys.stderr.write(f"error: {resp.text}\n")
        return EXIT_USAGE
    payload = resp.json()
    _emit(json.dumps(payload, indent=2), args.out)
    return EXIT_OK if payload.get("ok") else EXIT_FAIL


def cmd_constants(args) -> int:
    resp = _call(args.server, "GET", "/constants",
                 params={"m_max": args.m_max})
    if resp.status_code != 200:
        sys.stderr.write(f"error: {resp.text}\n")
        return EXIT_USAGE
    _emit(json.dumps(resp.json(), indent=2), args.out)
    return EXIT_OK


def cmd_moments(args) -> int:
    resp = _call(args.server, "GET", "/moments", params={"n_max": args.n_max})
    if resp.status_code != 200:
        sys.stderr.write(f"error: {resp.text}\n")
        return EXIT_USAGE
    payload = resp.json()
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["n", "M2", "M4", "measure_estimate",
                         "measure_lower_bound", "grid"])
        for row in payload["rows"]:
            writer.writerow([row["n"], row["M2"], row["M4"],
                             row["measure_estimate"],
                             row["measure_lower_bound"], row["grid"]])
        _emit(buf.getvalue(), args.out)
    else:
        _emit(json.dumps(payload, indent=2), args.out)
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fredholm",
        description="Certified analysis of the dyadic-gap series and friends.")
    parser.add_argument("--server", default=None,
                        help="URL of a running service (default: in-process)")
    parser.add_argument("--threads", type=int, default=None,
                        help="worker cap (or env FREDHOLM_THREADS)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=["identities", "ramanujan", "constants",
                                     "appendix", "expsums", "all"])
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("zeros", help="certified zero table")
    p.add_argument("--region", default=None,
                   help="disk:cx,cy,r or rect:x0,y0,x1,y1 (default: full table)")
    p.add_argument("--v", type=parse_complex, default=0j,
                   help="target value (zeroes of f - v)")
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--min-cell", type=float, default=1e-4)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_zeros)

    p = sub.add_parser("figure", help="partial-sum root scatter data")
    p.add_argument("--terms", type=int, default=13,
                   help="top dyadic exponent of the partial sum")
    p.add_argument("--disk-radius", type=float, default=1.0)
    p.add_argument("--format", choices=["json", "csv"], default="csv")
    p.add_argument("--svg", default=None, help="also write an SVG scatter")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_figure)

    p = sub.add_parser("attain", help="certified point with f = v near z = 1")
    p.add_argument("--v", type=parse_complex, required=True)
    p.add_argument("--a", type=int, default=2)
    p.add_argument("--seed", type=parse_complex, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_attain)

    p = sub.add_parser("constants", help="dump the constants table")
    p.add_argument("--m-max", type=int, default=16)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_constants)

    p = sub.add_parser("moments", help="exponential-sum moment table")
    p.add_argument("--n-max", type=int, default=16)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_moments)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8642)
    p.set_defaults(fn=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
