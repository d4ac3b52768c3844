"""Command-line client for the geometry service.

The CLI never computes geometry itself: it posts the scene to the HTTP
service (an in-process instance by default, or a remote one via --server)
and formats the response.  Exit codes: 0 success, 1 configuration errors,
2 degenerate frame, 3 validation failure (report still printed), 4 output
I/O failure.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys
from pathlib import Path

import httpx

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DEGENERATE = 2
EXIT_VALIDATION = 3
EXIT_IO = 4

_TIMEOUT = 120.0


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _post(server: str | None, path: str, payload: dict) -> httpx.Response:
    if server:
        return httpx.post(server.rstrip("/") + path, json=payload, timeout=_TIMEOUT)

    async def go() -> httpx.Response:
        from .service import app
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(transport=transport,
                                     base_url="http://galsurf",
                                     timeout=_TIMEOUT) as client:
            return await client.post(path, json=payload)

    return asyncio.run(go())


def _load_config(path: str) -> dict:
    raw = Path(path).read_text(encoding="utf-8")
    data = json.loads(raw)
    if not isinstance(data, dict):
        raise json.JSONDecodeError("top-level value must be an object", raw, 0)
    return data


def _error_exit(resp: httpx.Response) -> int:
    try:
        detail = resp.json().get("detail")
    except json.JSONDecodeError:
        detail = None
    if isinstance(detail, dict):
        kind = detail.get("kind", "config")
        message = detail.get("message", resp.text)
        code = EXIT_DEGENERATE if kind == "degenerate-frame" else EXIT_CONFIG
        return _fail(message, code)
    # pydantic request validation (422) and anything else unforeseen
    return _fail(f"request rejected ({resp.status_code}): {resp.text}", EXIT_CONFIG)


def _parse_s_list(text: str) -> list[float]:
    from .exprcalc import evaluate_constant
    return [evaluate_constant(chunk) for chunk in text.replace(",", " ").split()]


def _vec(components: list[float]) -> str:
    return "(" + ", ".join(f"{c:.12g}" for c in components) + ")"


def cmd_frenet(args: argparse.Namespace) -> int:
    payload: dict = {"scene": _load_config(args.config)}
    if args.s is not None:
        payload["s_values"] = _parse_s_list(args.s)
    resp = _post(args.server, "/frenet", payload)
    if resp.status_code != 200:
        return _error_exit(resp)
    if args.json:
        print(resp.text)
        return EXIT_OK
    for f in resp.json()["frames"]:
        print(f"s = {f['s']:.12g}")
        for axis in ("t", "n", "b", "e"):
            print(f"  {axis} = {_vec(f[axis])}")
        print(f"  kappa = {f['kappa']:.12g}  tau = {f['tau']:.12g}"
              f"  sigma = {f['sigma']:.12g}  mu = {f['mu']:+d}"
              f"  det = {f['det']:.12g}")
    return EXIT_OK


def _print_clauses(clauses: list[dict], indent: str = "  ") -> None:
    for c in clauses:
        mark = "PASS" if c["passed"] else "FAIL"
        line = f"{indent}[{mark}] {c['name']} (residual {c['residual']:.3g})"
        if c.get("detail"):
            line += f" - {c['detail']}"
        print(line)


def cmd_validate(args: argparse.Namespace) -> int:
    resp = _post(args.server, "/validate", {"scene": _load_config(args.config)})
    if resp.status_code != 200:
        return _error_exit(resp)
    body = resp.json()
    if args.json:
        print(resp.text)
    else:
        report = body["report"]
        print(f"isogeodesic: {'PASS' if body['passed'] else 'FAIL'}")
        print(f"anchor max |coeff| = {report['anchor_max']:.3g}, "
              f"min |normal.n| = {report['normal_n_min']:.3g}, "
              f"max |normal.b| = {report['normal_b_max']:.3g}, "
              f"max |normal.e| = {report['normal_e_max']:.3g}, "
              f"max parallel residual = {report['parallel_max']:.3g}")
        _print_clauses(report["clauses"])
        if body.get("checker"):
            checker = body["checker"]
            print(f"{checker['variant']} checker: "
                  f"{'PASS' if checker['passed'] else 'FAIL'} "
                  f"(witness {checker['witness']:.6g})")
            _print_clauses(checker["clauses"])
    return EXIT_OK if body["passed"] else EXIT_VALIDATION


def _write_output(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(text)


def cmd_project(args: argparse.Namespace) -> int:
    if args.out is None:
        return _fail("project needs --out <path>", EXIT_CONFIG)
    payload = {"scene": _load_config(args.config), "format": args.format}
    resp = _post(args.server, "/project", payload)
    if resp.status_code != 200:
        return _error_exit(resp)
    try:
        _write_output(args.out, resp.text)
    except OSError as exc:
        return _fail(f"cannot write {args.out}: {exc}", EXIT_IO)
    print(f"wrote {args.out}: {resp.headers.get('x-vertex-count', '?')} vertices, "
          f"{resp.headers.get('x-face-count', '?')} faces")
    return EXIT_OK


def cmd_sample(args: argparse.Namespace) -> int:
    if args.out is None:
        return _fail("sample needs --out <path>", EXIT_CONFIG)
    resp = _post(args.server, "/sample", {"scene": _load_config(args.config)})
    if resp.status_code != 200:
        return _error_exit(resp)
    try:
        _write_output(args.out, resp.text)
    except OSError as exc:
        return _fail(f"cannot write {args.out}: {exc}", EXIT_IO)
    print(f"wrote {args.out}: {resp.headers.get('x-vertex-count', '?')} points")
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import app
    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="galsurf",
        description="Hypersurface families through a common isogeodesic "
                    "curve in 4D Galilean space.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", required=True, help="scene JSON file")
        p.add_argument("--server", default=None,
                       help="base URL of a running service (default: in-process)")

    p = sub.add_parser("frenet", help="print the moving frame at chosen s values")
    common(p)
    p.add_argument("--s", default=None,
                   help="comma/space separated s values (constant expressions allowed)")
    p.add_argument("--json", action="store_true", help="emit raw JSON")
    p.set_defaults(func=cmd_frenet)

    p = sub.add_parser("validate", help="run the isogeodesic validation")
    common(p)
    p.add_argument("--json", action="store_true", help="emit raw JSON")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("project", help="export the projected surface mesh")
    common(p)
    p.add_argument("--out", default=None, help="output file path")
    p.add_argument("--format", choices=("obj", "csv"), default="obj")
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("sample", help="export raw 4D surface samples as CSV")
    common(p)
    p.add_argument("--out", default=None, help="output file path")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    from .exprcalc import ExprError

    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        return _fail(str(exc), EXIT_CONFIG)
    except json.JSONDecodeError as exc:
        return _fail(f"config is not valid JSON: {exc}", EXIT_CONFIG)
    except (ValueError, ExprError) as exc:
        return _fail(str(exc), EXIT_CONFIG)
    except httpx.HTTPError as exc:
        return _fail(f"service request failed: {exc}", EXIT_CONFIG)


if __name__ == "__main__":
    sys.exit(main())
