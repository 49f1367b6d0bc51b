"""Command-line client for the evaluation service.

Every subcommand except serve drives the HTTP application in-process
through an ASGI transport: the payloads are byte-identical to what a
deployed service would see, but no socket is opened and nothing leaves
the process. serve is the explicit opt-in that binds the same app to a
real port.

Exit codes:

    0  success
    1  verification ran and at least one check failed
    2  usage errors: bad flags, invalid payloads, out-of-domain or
       out-of-range inputs, inconsistent observations
    3  convergence or integration failure
    4  the observed average was exactly zero (no spectral information)
    5  a second observation at a smaller radius is required; the
       admissible radius is printed
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys

import httpx

__all__ = ["main"]

_EXIT_BY_CODE = {
    "usage": 2,
    "value_out_of_range": 2,
    "inconsistent_observations": 2,
    "convergence": 3,
    "integration": 3,
    "zero_observation": 4,
    "second_radius_required": 5,
}


def _request(path: str, payload: dict) -> httpx.Response:
    from .service import create_app

    async def go() -> httpx.Response:
        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(transport=transport,
                                     base_url="http://hypereig.local",
                                     timeout=None) as client:
            return await client.post(path, json=payload)

    return asyncio.run(go())


def _fail(resp: httpx.Response) -> int:
    """Print the service error to stderr and return the exit code for it."""
    try:
        body = resp.json()
    except ValueError:
        print(f"error: HTTP {resp.status_code}", file=sys.stderr)
        return 3
    if resp.status_code == 422:
        # Request-validation failure: surface the offending locations.
        for item in body.get("detail", []):
            loc = ".".join(str(p) for p in item.get("loc", []) if p != "body")
            print(f"error: {loc}: {item.get('msg', 'invalid')}", file=sys.stderr)
        return 2
    error = body.get("error", {})
    code = error.get("code", "internal")
    print(f"error: {error.get('message', 'internal error')}", file=sys.stderr)
    if code == "second_radius_required" and "required_r0" in error:
        print(f"second observation required at radius r0 = "
              f"{error['required_r0']:.12g} or smaller", file=sys.stderr)
    return _EXIT_BY_CODE.get(code, 3)


def _parse_obs(text: str) -> dict:
    r_part, sep, v_part = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError(
            f"expected r:value, got {text!r}")
    try:
        return {"r": float(r_part), "value": float(v_part)}
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected numeric r:value, got {text!r}") from None


def _space_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--rho", type=float, required=True,
                   help="curvature radius of the ball model")
    p.add_argument("--k", type=int, required=True,
                   help="dimension of the boundary sphere")


def _quad_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--abs-tol", type=float, default=1e-12,
                   help="absolute quadrature tolerance")
    p.add_argument("--rel-tol", type=float, default=1e-10,
                   help="relative quadrature tolerance")


def _quad_payload(args: argparse.Namespace) -> dict:
    return {"abs_tol": args.abs_tol, "rel_tol": args.rel_tol}


def _cmd_eval(args: argparse.Namespace) -> int:
    payload = {
        "space": {"rho": args.rho, "k": args.k},
        "lambda": args.lam,
        "r_min": args.r_min,
        "r_max": args.r_max,
        "steps": args.steps,
        "quadrature": _quad_payload(args),
    }
    resp = _request("/eval", payload)
    if resp.status_code != 200:
        return _fail(resp)
    rows = resp.json()["rows"]
    if args.format == "json":
        print(json.dumps({"rows": rows}, indent=2))
        return 0
    print("r,phi,branch,V")
    for row in rows:
        print(f"{row['r']:.16e},{row['phi']:.16e},{row['branch']},"
              f"{row['V']:.16e}")
    return 0


def _cmd_invert(args: argparse.Namespace) -> int:
    payload = {
        "space": {"rho": args.rho, "k": args.k},
        "obs": args.obs,
        "auto_sample": args.auto_sample,
        "quadrature": _quad_payload(args),
    }
    if args.obs2 is not None:
        payload["obs2"] = args.obs2
    if args.lam is not None:
        payload["lambda"] = args.lam
    resp = _request("/invert", payload)
    if resp.status_code != 200:
        return _fail(resp)
    print(json.dumps(resp.json(), indent=2))
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    payload = {"suites": args.suite, "seed": args.seed}
    resp = _request("/verify", payload)
    if resp.status_code != 200:
        return _fail(resp)
    body = resp.json()
    for check in body["results"]:
        status = "PASS" if check["passed"] else "FAIL"
        print(f"{status} {check['name']} worst={check['worst']:.6e} "
              f"tol={check['tol']:.6e}")
    return 0 if body["all_passed"] else 1


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypereig",
        description="Radial eigenfunctions of the hyperbolic Laplacian: "
                    "evaluate them, and recover the eigenvalue from one or "
                    "two sphere averages.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate phi on a radius grid")
    _space_args(p)
    p.add_argument("--lambda", dest="lam", type=float, required=True,
                   help="eigenvalue")
    p.add_argument("--r-min", type=float, required=True)
    p.add_argument("--r-max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True,
                   help="number of grid points (endpoints included)")
    _quad_args(p)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser(
        "invert",
        help="recover the eigenvalue from sphere-average observations")
    _space_args(p)
    p.add_argument("--obs", type=_parse_obs, required=True, metavar="R:VALUE",
                   help="observed sphere average, written r:value")
    p.add_argument("--obs2", type=_parse_obs, default=None, metavar="R:VALUE",
                   help="optional second observation")
    p.add_argument("--auto-sample", action="store_true",
                   help="demo oracle: synthesize the second observation from "
                        "the known eigenfunction of --lambda instead of "
                        "measuring one (excludes --obs2)")
    p.add_argument("--lambda", dest="lam", type=float, default=None,
                   help="true eigenvalue used only with --auto-sample")
    _quad_args(p)
    p.set_defaults(func=_cmd_invert)

    p = sub.add_parser("verify", help="run the self-verification suites")
    p.add_argument("--suite", action="append",
                   choices=("all", "identity", "oracle", "zeros", "limits",
                            "mc"),
                   help="suite to run; repeatable; default all")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for the Monte Carlo suite")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("serve", help="bind the HTTP service to a port")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8711)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "verify" and not args.suite:
        args.suite = ["all"]
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
