"""Command-line client.

Each verb builds a request model, executes it (in-process by default, or
against a running service when --server is given), and formats the
response as CSV or JSON.  Exit codes: 0 when all checks pass, 1 when a
verification found a violation, 2 for usage, configuration or I/O errors.
The `pinch` verb exits 0 whether or not a pinching radius was found;
absence is a reported value, not a failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable

from pydantic import BaseModel, ValidationError

from .reports import csv_text, fmt, json_text
from .service import handlers
from .service import schemas as sm

_PATHS = {
    "tensor": "/tensor",
    "operator": "/operator",
    "eigen": "/eigen",
    "sweep": "/sweep",
    "pinch": "/pinch",
    "pipeline": "/pipeline/certify",
    "perturb": "/perturb",
}


def _execute(verb: str, req: BaseModel, server: str | None, resp_type):
    if server is None:
        local: dict[str, Callable] = {
            "tensor": handlers.compute_tensor,
            "operator": handlers.compute_operator,
            "eigen": handlers.compute_eigen,
            "verify": handlers.run_verify,
            "sweep": handlers.run_sweep,
            "pinch": handlers.run_pinch,
            "pipeline": handlers.run_certify,
            "perturb": handlers.run_perturb,
        }
        return local[verb](req)
    import httpx

    path = f"/verify/{req.check}" if verb == "verify" else _PATHS[verb]
    try:
        resp = httpx.post(server.rstrip("/") + path, json=req.model_dump(), timeout=300.0)
    except httpx.HTTPError as exc:
        raise RuntimeError(f"request to {server} failed: {exc}") from exc
    if resp.status_code != 200:
        raise RuntimeError(f"server returned {resp.status_code}: {resp.text}")
    return resp_type.model_validate(resp.json())


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError:
        # leave a marker beside any partially written file before propagating
        import os

        if os.path.isfile(out):
            try:
                with open(out + ".partial", "w", encoding="utf-8") as marker:
                    marker.write("output interrupted by an I/O error\n")
            except OSError:
                pass
        raise


def _parse_c(text: str | None):
    if text is None:
        return None
    values = [float(x) for x in text.split(",") if x.strip() != ""]
    if not values:
        return None
    return values[0] if len(values) == 1 else values


def _parse_float_list(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x.strip() != ""]


def _parse_int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip() != ""]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curvops",
        description="Curvature tensors and operator spectra of a warped-product "
        "metric family, with verification sweeps and certificates.",
    )
    parser.add_argument("--server", default=None,
                        help="base URL of a running service; default runs in-process")
    sub = parser.add_subparsers(dest="verb", required=True)

    def add_point_flags(p, with_mode=True):
        p.add_argument("--n", type=int, default=2, help="complex dimension (frame is 2n)")
        p.add_argument("--r", type=float, default=1.0, help="radius")
        p.add_argument("--c", default=None,
                       help="comma list of structure constants, or one value to broadcast")
        if with_mode:
            p.add_argument("--mode", choices=("exact", "asymptotic"), default="exact")

    def add_out_flags(p, default_format):
        p.add_argument("--out", default=None, help="output file (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), default=default_format)

    p = sub.add_parser("tensor", help="dump curvature components on canonical tuples")
    add_point_flags(p)
    add_out_flags(p, "csv")

    p = sub.add_parser("operator", help="dump the operator matrix in the wedge basis")
    add_point_flags(p)
    add_out_flags(p, "csv")

    p = sub.add_parser("eigen", help="operator eigenvalues and clustered spectrum")
    add_point_flags(p)
    p.add_argument("--tol", type=float, default=1e-13, help="eigensolver tolerance")
    p.add_argument("--cluster-tol", type=float, default=1e-6)
    add_out_flags(p, "csv")

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("check", choices=("oracle", "thm13", "det", "blocks", "definiteness"))
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--r", type=float, default=None)
    p.add_argument("--c", default=None)
    p.add_argument("--seed", type=int, default=0)
    add_out_flags(p, "json")

    p = sub.add_parser("sweep", help="spectrum/pinching sweep over a parameter grid")
    p.add_argument("--n", default="2", help="comma list of dimensions")
    p.add_argument("--r", default="2.0", help="comma list of radii")
    p.add_argument("--c", default="2.0",
                   help="comma list of structure-constant levels (grid of combinations)")
    p.add_argument("--c-random", type=int, default=0,
                   help="replace the level grid with this many seeded random draws")
    p.add_argument("--mode", choices=("exact", "asymptotic"), default="exact")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=128, help="sampled planes per row")
    p.add_argument("--tol", type=float, default=1e-8)
    add_out_flags(p, "csv")

    p = sub.add_parser("pinch", help="estimate the pinching radius by plane sampling")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--c", default="0")
    p.add_argument("--eps", type=float, default=0.25)
    p.add_argument("--samples", type=int, default=512)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--r-max", type=float, default=12.0)
    p.add_argument("--r-count", type=int, default=49)
    add_out_flags(p, "json")

    p = sub.add_parser("pipeline", help="staged-profile tools")
    p.add_argument("--config", default=None, help="JSON file with profile fields")
    p.add_argument("--certify", action="store_true",
                   help="run the nonpositivity certificate")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--r-samples", type=int, default=200)
    p.add_argument("--tol", type=float, default=1e-8)
    add_out_flags(p, "json")

    p = sub.add_parser("perturb", help="overshoot demonstration at c = 2 + delta")
    p.add_argument("--delta", type=float, default=0.1)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--r", type=float, default=6.0)
    p.add_argument("--samples", type=int, default=4096)
    p.add_argument("--seed", type=int, default=0)
    add_out_flags(p, "json")

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def _run_tensor(args) -> int:
    req = sm.TensorRequest(n=args.n, r=args.r, c=_parse_c(args.c), mode=args.mode)
    resp = _execute("tensor", req, args.server, sm.TensorResponse)
    if args.format == "json":
        _emit(json_text(resp.model_dump()), args.out)
    else:
        rows = [(c.i, c.j, c.k, c.l, c.value) for c in resp.components]
        _emit(csv_text(("i", "j", "k", "l", "value"), rows), args.out)
    return 0


def _run_operator(args) -> int:
    req = sm.OperatorRequest(n=args.n, r=args.r, c=_parse_c(args.c), mode=args.mode)
    resp = _execute("operator", req, args.server, sm.OperatorResponse)
    if args.format == "json":
        _emit(json_text(resp.model_dump()), args.out)
    else:
        labels = [f"{i}^{j}" for i, j in resp.basis]
        rows = [[labels[p]] + resp.matrix[p] for p in range(resp.order)]
        _emit(csv_text(["bivector"] + labels, rows), args.out)
    return 0


def _run_eigen(args) -> int:
    req = sm.EigenRequest(n=args.n, r=args.r, c=_parse_c(args.c), mode=args.mode,
                          tol=args.tol, cluster_tol=args.cluster_tol)
    resp = _execute("eigen", req, args.server, sm.EigenResponse)
    if args.format == "json":
        _emit(json_text(resp.model_dump()), args.out)
    else:
        rows = list(enumerate(resp.eigenvalues))
        _emit(csv_text(("index", "eigenvalue"), rows), args.out)
    return 0


def _run_verify(args) -> int:
    req = sm.VerifyRequest(check=args.check, seed=args.seed, n=args.n, r=args.r,
                           c=_parse_c(args.c))
    resp = _execute("verify", req, args.server, sm.VerifyResponse)
    if args.format == "json":
        _emit(json_text(resp.model_dump()), args.out)
    else:
        rows = [(k, json.dumps(v, sort_keys=True)) for k, v in sorted(resp.summary.items())]
        _emit(csv_text(("key", "value"), [("check", resp.check), ("passed", resp.passed)] + rows),
              args.out)
    return 0 if resp.passed else 1


def _run_sweep(args) -> int:
    req = sm.SweepRequest(
        ns=_parse_int_list(args.n), rs=_parse_float_list(args.r),
        c_levels=_parse_float_list(args.c), c_random=args.c_random,
        seed=args.seed, samples=args.samples, tol=args.tol, mode=args.mode,
    )
    resp = _execute("sweep", req, args.server, sm.SweepResponse)
    if args.format == "json":
        _emit(json_text(resp.model_dump()), args.out)
    else:
        width = max((len(r.c) for r in resp.rows), default=0)
        header = ["n", "r"] + [f"c{2 * k + 1}" for k in range(width)] + [
            "max_op_eig", "min_K", "max_K", "spectrum", "pass",
        ]
        rows = []
        for row in resp.rows:
            cs = [fmt(x) for x in row.c] + [""] * (width - len(row.c))
            rows.append([row.n, row.r] + cs + [row.max_op_eig, row.min_k, row.max_k,
                                               row.spectrum, row.passed])
        _emit(csv_text(header, rows), args.out)
    return 0 if resp.passed else 1


def _run_pinch(args) -> int:
    req = sm.PinchRequest(n=args.n, eps=args.eps, c=_parse_c(args.c),
                          samples=args.samples, seed=args.seed,
                          r_max=args.r_max, r_count=args.r_count)
    resp = _execute("pinch", req, args.server, sm.PinchResponse)
    if args.format == "json":
        _emit(json_text(resp.model_dump()), args.out)
    else:
        rows = [(w.r, w.min_k, w.max_k, w.ok) for w in resp.rows]
        _emit(csv_text(("r", "min_K", "max_K", "ok"), rows), args.out)
    return 0


def _run_pipeline(args) -> int:
    cfg = sm.ProfileConfig()
    if args.config is not None:
        with open(args.config, "r", encoding="utf-8") as fh:
            cfg = sm.ProfileConfig.model_validate(json.load(fh))
    req = sm.PipelineRequest(profile=cfg, n=args.n, r_samples=args.r_samples, tol=args.tol)
    if not args.certify:
        from .pipeline import StageProfile, Blend
        import numpy as np

        prof = StageProfile(r1=cfg.r1, r2=cfg.r2, r3=cfg.r3, r_end=cfg.r_end,
                            d=cfg.d, delta=cfg.delta, blend=Blend(cfg.blend))
        radii = np.linspace(1e-3, prof.r_end + 1.0, args.r_samples)
        rows = [
            (float(r), prof.stage_of(float(r)), prof.structure_value(float(r)),
             prof.stretch(float(r)))
            for r in radii
        ]
        _emit(csv_text(("r", "stage", "c", "s"), rows), args.out)
        return 0
    resp = _execute("pipeline", req, args.server, sm.CertificateResponse)
    if args.format == "json":
        _emit(json_text(resp.model_dump()), args.out)
    else:
        rows = [(w.r, w.stage, w.max_eigenvalue, w.passed, w.detail) for w in resp.rows]
        _emit(csv_text(("r", "stage", "max_eigenvalue", "pass", "detail"), rows), args.out)
    return 0 if resp.passed else 1


def _run_perturb(args) -> int:
    req = sm.PerturbRequest(delta=args.delta, n=args.n, r=args.r,
                            samples=args.samples, seed=args.seed)
    resp = _execute("perturb", req, args.server, sm.PerturbResponse)
    _emit(json_text(resp.model_dump()), args.out)
    return 0 if resp.passed else 1


def _run_serve(args) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=args.host, port=args.port)
    return 0


_RUNNERS = {
    "tensor": _run_tensor,
    "operator": _run_operator,
    "eigen": _run_eigen,
    "verify": _run_verify,
    "sweep": _run_sweep,
    "pinch": _run_pinch,
    "pipeline": _run_pipeline,
    "perturb": _run_perturb,
    "serve": _run_serve,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _RUNNERS[args.verb](args)
    except (ValidationError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
