"""FastAPI application exposing the package over HTTP."""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import handlers
from . import schemas as sm


def create_app() -> FastAPI:
    app = FastAPI(
        title="curvops",
        description=(
            "Curvature tensors, curvature-operator spectra and verification "
            "sweeps for a warped-product metric family"
        ),
        version="0.1.0",
    )

    @app.exception_handler(ValueError)
    async def value_error_handler(_: Request, exc: ValueError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.post("/tensor", response_model=sm.TensorResponse)
    def tensor(req: sm.TensorRequest) -> sm.TensorResponse:
        return handlers.compute_tensor(req)

    @app.post("/operator", response_model=sm.OperatorResponse)
    def operator(req: sm.OperatorRequest) -> sm.OperatorResponse:
        return handlers.compute_operator(req)

    @app.post("/eigen", response_model=sm.EigenResponse)
    def eigen(req: sm.EigenRequest) -> sm.EigenResponse:
        return handlers.compute_eigen(req)

    @app.post("/verify/{check}", response_model=sm.VerifyResponse)
    def verify(check: str, req: sm.VerifyRequest | None = None) -> sm.VerifyResponse:
        base = req.model_dump(exclude={"check"}) if req is not None else {}
        return handlers.run_verify(sm.VerifyRequest(check=check, **base))

    @app.post("/sweep", response_model=sm.SweepResponse)
    def sweep(req: sm.SweepRequest) -> sm.SweepResponse:
        return handlers.run_sweep(req)

    @app.post("/pinch", response_model=sm.PinchResponse)
    def pinch(req: sm.PinchRequest) -> sm.PinchResponse:
        return handlers.run_pinch(req)

    @app.post("/pipeline/certify", response_model=sm.CertificateResponse)
    def certify(req: sm.PipelineRequest) -> sm.CertificateResponse:
        return handlers.run_certify(req)

    @app.post("/perturb", response_model=sm.PerturbResponse)
    def perturb(req: sm.PerturbRequest) -> sm.PerturbResponse:
        return handlers.run_perturb(req)

    return app


app = create_app()
