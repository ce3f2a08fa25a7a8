"""Request handlers: pure functions from request models to response models.

The FastAPI app routes to these, and the CLI calls them directly when no
server is configured, so both transports share one implementation.
Domain violations raise ValueError; the app maps that to HTTP 400 and the
CLI to a usage error.
"""

from __future__ import annotations

from dataclasses import asdict

from ..frame import ModelPoint, StructureConstants, build_wedge_basis
from ..operators import assemble_operator, cluster_spectrum, eigen_sym
from ..pipeline import (
    Blend,
    StageProfile,
    SweepGrid,
    certify_nonpositive,
    perturbation_demo,
    pinching_scan,
    sweep,
)
from ..reports import spectrum_string
from ..tensor import curvature_table
from ..verify import (
    blocks_report,
    definiteness_report,
    det_report,
    oracle_point_report,
    oracle_report,
    spectrum_law_report,
)
from . import schemas as sm


def _point(n: int, r: float, c) -> ModelPoint:
    return ModelPoint(n=n, r=float(r), c=StructureConstants.resolve(n, c))


def compute_tensor(req: sm.TensorRequest) -> sm.TensorResponse:
    point = _point(req.n, req.r, req.c)
    tensor = curvature_table(point, req.mode)
    from ..reports import tensor_rows

    rows = [
        sm.TensorComponentRow(i=i, j=j, k=k, l=l, value=v)
        for (i, j, k, l, v) in tensor_rows(tensor)
    ]
    return sm.TensorResponse(
        n=point.n, r=point.r, c=list(point.c.values), mode=req.mode,
        dim=tensor.dim, components=rows,
    )


def compute_operator(req: sm.OperatorRequest) -> sm.OperatorResponse:
    point = _point(req.n, req.r, req.c)
    basis = build_wedge_basis(point.n)
    op = assemble_operator(curvature_table(point, req.mode), basis)
    return sm.OperatorResponse(
        n=point.n, r=point.r, c=list(point.c.values), mode=req.mode,
        order=op.order, basis=[list(p) for p in basis.pairs],
        block_sizes=[len(b) for b in basis.blocks],
        matrix=[[float(x) for x in row] for row in op.data],
    )


def compute_eigen(req: sm.EigenRequest) -> sm.EigenResponse:
    point = _point(req.n, req.r, req.c)
    basis = build_wedge_basis(point.n)
    dec = eigen_sym(assemble_operator(curvature_table(point, req.mode), basis), req.tol)
    spectrum = cluster_spectrum(dec.eigenvalues, req.cluster_tol)
    return sm.EigenResponse(
        n=point.n, r=point.r, c=list(point.c.values), mode=req.mode,
        order=len(basis), eigenvalues=[float(x) for x in dec.eigenvalues],
        spectrum=[
            sm.SpectrumEntryModel(value=v, multiplicity=m) for v, m in spectrum.entries
        ],
        max_eigenvalue=float(dec.eigenvalues[-1]), residual=dec.residual,
    )


def run_verify(req: sm.VerifyRequest) -> sm.VerifyResponse:
    if req.check == "oracle":
        if req.n is not None and req.r is not None:
            case = oracle_point_report(_point(req.n, req.r, req.c))
            return sm.VerifyResponse(
                check="oracle", passed=case.max_diff < 1e-9,
                summary={"max_diff": case.max_diff,
                         "worst_tuple": list(case.worst_tuple),
                         "point": {"n": case.n, "r": case.r, "c": list(case.c)}},
            )
        rep = oracle_report()
        return sm.VerifyResponse(
            check="oracle", passed=rep.passed,
            summary={
                "max_diff": rep.max_diff, "tol": rep.tol,
                "worst_tuple": list(rep.worst.worst_tuple),
                "point": {"n": rep.worst.n, "r": rep.worst.r, "c": list(rep.worst.c)},
                "cases": len(rep.cases),
            },
            rows=[
                {"point": {"n": c.n, "r": c.r, "c": list(c.c)},
                 "max_diff": c.max_diff, "worst_tuple": list(c.worst_tuple)}
                for c in rep.cases
            ],
        )
    if req.check == "thm13":
        rep = spectrum_law_report()
        return sm.VerifyResponse(
            check="thm13", passed=rep.passed,
            summary={"cluster_tol": rep.cluster_tol, "cosine_tol": rep.cosine_tol,
                     "bookkeeping_ok": rep.bookkeeping_ok},
            rows=[asdict(case) | {"spectrum": [list(e) for e in case.spectrum]}
                  for case in rep.cases],
        )
    if req.check == "det":
        rep = det_report(seed=req.seed)
        return sm.VerifyResponse(
            check="det", passed=rep.passed,
            summary={"rel_tol": rep.rel_tol,
                     "exact_value_max_err": rep.exact_value_max_err,
                     "det_at_c2": [list(t) for t in rep.reference_det_at_2]},
            rows=[asdict(c) for c in rep.cases],
            notes=list(rep.notes),
        )
    if req.check == "blocks":
        rep = blocks_report()
        return sm.VerifyResponse(check="blocks", passed=rep.passed, summary=asdict(rep))
    if req.check == "definiteness":
        rep = definiteness_report(seed=req.seed)
        return sm.VerifyResponse(check="definiteness", passed=rep.passed, summary=asdict(rep))
    raise ValueError(f"unknown check {req.check!r}")


def run_sweep(req: sm.SweepRequest) -> sm.SweepResponse:
    grid = SweepGrid(
        ns=tuple(req.ns), rs=tuple(req.rs), c_levels=tuple(req.c_levels),
        c_random=req.c_random, seed=req.seed, samples=req.samples,
        tol=req.tol, mode=req.mode,
    )
    rows = sweep(grid)
    return sm.SweepResponse(
        rows=[
            sm.SweepRowModel(
                n=row.n, r=row.r, c=list(row.c), max_op_eig=row.max_op_eig,
                min_k=row.min_k, max_k=row.max_k,
                spectrum=spectrum_string(row.spectrum), passed=row.passed,
            )
            for row in rows
        ],
        passed=all(row.passed for row in rows),
    )


def run_pinch(req: sm.PinchRequest) -> sm.PinchResponse:
    import numpy as np

    scan = pinching_scan(
        n=req.n, c_values=(req.c,), eps=req.eps, samples=req.samples, seed=req.seed,
        r_values=np.linspace(1e-3, req.r_max, req.r_count),
    )
    return sm.PinchResponse(
        n=scan.n, eps=scan.eps, found=scan.found, r_est=scan.r_est,
        rows=[sm.PinchRowModel(r=w.r, min_k=w.min_k, max_k=w.max_k, ok=w.ok)
              for w in scan.rows],
    )


def _stage_profile(cfg: sm.ProfileConfig) -> StageProfile:
    return StageProfile(
        r1=cfg.r1, r2=cfg.r2, r3=cfg.r3, r_end=cfg.r_end,
        d=cfg.d, delta=cfg.delta, blend=Blend(cfg.blend),
    )


def run_certify(req: sm.PipelineRequest) -> sm.CertificateResponse:
    cert = certify_nonpositive(
        _stage_profile(req.profile), r_samples=req.r_samples, tol=req.tol, n=req.n
    )
    return sm.CertificateResponse(
        profile_hash=cert.profile_hash, n=cert.n, tol=cert.tol, passed=cert.passed,
        caveats=list(cert.caveats),
        rows=[
            sm.CertificateRowModel(
                r=row.r, stage=row.stage, max_eigenvalue=row.max_eigenvalue,
                passed=row.passed, detail=row.detail,
            )
            for row in cert.rows
        ],
    )


def run_perturb(req: sm.PerturbRequest) -> sm.PerturbResponse:
    rep = perturbation_demo(req.delta, req.n, req.r, samples=req.samples, seed=req.seed)
    return sm.PerturbResponse(**asdict(rep))
