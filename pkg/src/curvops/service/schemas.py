"""Pydantic request/response models for the service and the CLI client."""

from __future__ import annotations

from typing import Any, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field


class PointParams(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n: int = Field(default=2, ge=2, le=16)
    r: float = Field(default=1.0, gt=0.0)
    c: Union[float, list[float], None] = None


class TensorRequest(PointParams):
    mode: Literal["exact", "asymptotic"] = "exact"


class TensorComponentRow(BaseModel):
    i: int
    j: int
    k: int
    l: int
    value: float


class TensorResponse(BaseModel):
    n: int
    r: float
    c: list[float]
    mode: str
    dim: int
    components: list[TensorComponentRow]


class OperatorRequest(TensorRequest):
    pass


class OperatorResponse(BaseModel):
    n: int
    r: float
    c: list[float]
    mode: str
    order: int
    basis: list[list[int]]
    block_sizes: list[int]
    matrix: list[list[float]]


class EigenRequest(TensorRequest):
    tol: float = Field(default=1e-13, gt=0.0, le=1e-6)
    cluster_tol: float = Field(default=1e-6, gt=0.0)


class SpectrumEntryModel(BaseModel):
    value: float
    multiplicity: int


class EigenResponse(BaseModel):
    n: int
    r: float
    c: list[float]
    mode: str
    order: int
    eigenvalues: list[float]
    spectrum: list[SpectrumEntryModel]
    max_eigenvalue: float
    residual: float


class VerifyRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    check: Literal["oracle", "thm13", "det", "blocks", "definiteness"]
    seed: int = 0
    n: Optional[int] = Field(default=None, ge=2, le=16)
    r: Optional[float] = Field(default=None, gt=0.0)
    c: Union[float, list[float], None] = None


class VerifyResponse(BaseModel):
    check: str
    passed: bool
    summary: dict[str, Any]
    rows: list[dict[str, Any]] = []
    notes: list[str] = []


class SweepRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    ns: list[int] = Field(default_factory=list)
    rs: list[float] = Field(default_factory=list)
    c_levels: list[float] = [2.0]
    c_random: int = Field(default=0, ge=0)
    seed: int = 0
    samples: int = Field(default=128, ge=1)
    tol: float = 1e-8
    mode: Literal["exact", "asymptotic"] = "exact"


class SweepRowModel(BaseModel):
    n: int
    r: float
    c: list[float]
    max_op_eig: float
    min_k: float
    max_k: float
    spectrum: str
    passed: bool


class SweepResponse(BaseModel):
    rows: list[SweepRowModel]
    passed: bool


class PinchRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n: int = Field(default=3, ge=2, le=16)
    eps: float = Field(default=0.25, gt=0.0)
    c: Union[float, list[float], None] = None
    samples: int = Field(default=512, ge=1)
    seed: int = 0
    r_max: float = 12.0
    r_count: int = Field(default=49, ge=2)


class PinchRowModel(BaseModel):
    r: float
    min_k: float
    max_k: float
    ok: bool


class PinchResponse(BaseModel):
    n: int
    eps: float
    found: bool
    r_est: Optional[float]
    rows: list[PinchRowModel]


class ProfileConfig(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    r1: float = 3.0
    r2: float = 8.0
    r3: float = 14.0
    r_end: float = Field(default=19.0, alias="R")
    d: int = 3
    delta: float = Field(default=0.0, ge=0.0)
    blend: Literal["smoothstep5", "linear"] = "smoothstep5"


class PipelineRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    profile: ProfileConfig = ProfileConfig()
    n: int = Field(default=3, ge=2, le=16)
    r_samples: int = Field(default=200, ge=10)
    tol: float = 1e-8


class CertificateRowModel(BaseModel):
    r: float
    stage: int
    max_eigenvalue: float
    passed: bool
    detail: str


class CertificateResponse(BaseModel):
    profile_hash: str
    n: int
    tol: float
    passed: bool
    caveats: list[str]
    rows: list[CertificateRowModel]


class PerturbRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    delta: float = Field(default=0.1, ge=0.0)
    n: int = Field(default=3, ge=2, le=16)
    r: float = Field(default=6.0, gt=0.0)
    samples: int = Field(default=4096, ge=1)
    seed: int = 0


class PerturbResponse(BaseModel):
    delta: float
    n: int
    r: float
    block_max_eigenvalue: float
    expected_block_eigenvalue: float
    operator_max_eigenvalue: float
    min_k: float
    max_k: float
    positive_eigenvalue_found: bool
    all_k_negative: bool
    passed: bool
