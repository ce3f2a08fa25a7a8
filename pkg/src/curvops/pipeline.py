"""Staged radial profiles, plane sampling, sweeps and certificates.

A stage profile models a tube construction over [0, R]: the reference
metric (c == 2) up to r_1, an unwinding of the bracket constants from 2
to 0 over [r_1, r_2], an angular stretch of the v warp by a factor
growing from 1 to the branching degree d over [r_2, r_3], a rewind from
0 back to 2 over [r_3, R], and the reference metric again beyond R.

Curvature checks along a profile freeze the structure constants at each
sampled radius (quasi-static model); certificates carry that caveat.
During the unwind/rewind stages the verdict follows the proof-style
decomposition: asymptotic holomorphic block plus exact 2x2 blocks.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .frame import (
    COSH_SINH2,
    ModelPoint,
    R_MIN,
    StructureConstants,
    WarpProfile,
    build_wedge_basis,
)
from .jets import Jet2, jcosh, jsinh
from .operators import (
    Spectrum,
    assemble_operator,
    block_matrices,
    cluster_spectrum,
    eigen_sym,
    holomorphic_block,
)
from .tensor import CurvatureTensor, component_table, curvature_table, plane_curvatures


class Blend(Enum):
    SMOOTHSTEP5 = "smoothstep5"  # C^2 quintic
    LINEAR = "linear"


def _smoothstep5(t: float) -> float:
    if t <= 0.0:
        return 0.0
    if t >= 1.0:
        return 1.0
    return t * t * t * (10.0 + t * (-15.0 + 6.0 * t))


def _smoothstep5_jet(t: Jet2) -> Jet2:
    if t.f <= 0.0:
        return Jet2.const(0.0)
    if t.f >= 1.0:
        return Jet2.const(1.0)
    return t * t * t * (10.0 + t * (-15.0 + 6.0 * t))


def _ramp(t: float, shape: Blend) -> float:
    if shape is Blend.LINEAR:
        return min(1.0, max(0.0, t))
    return _smoothstep5(t)


def _ramp_jet(t: Jet2, shape: Blend) -> Jet2:
    if shape is Blend.LINEAR:
        if t.f <= 0.0:
            return Jet2.const(0.0)
        if t.f >= 1.0:
            return Jet2.const(1.0)
        return t
    return _smoothstep5_jet(t)


@dataclass(frozen=True)
class StageProfile:
    """Stage boundaries 0 < r1 < r2 < r3 < r_end, branching degree d > 2,
    optional overshoot delta for the unwind stage, and the blend shape."""

    r1: float = 3.0
    r2: float = 8.0
    r3: float = 14.0
    r_end: float = 19.0
    d: int = 3
    delta: float = 0.0
    blend: Blend = Blend.SMOOTHSTEP5

    def __post_init__(self):
        if not (0.0 < self.r1 < self.r2 < self.r3 < self.r_end):
            raise ValueError("stage boundaries must satisfy 0 < r1 < r2 < r3 < R")
        if not isinstance(self.d, int) or self.d <= 2:
            raise ValueError(f"branching degree must be an integer > 2, got {self.d}")
        if self.delta < 0.0:
            raise ValueError(f"delta must be nonnegative, got {self.delta}")

    def stage_of(self, r: float) -> int:
        if r < self.r1:
            return 1
        if r < self.r2:
            return 2
        if r <= self.r3:
            return 3
        if r < self.r_end:
            return 4
        return 5

    def structure_value(self, r: float) -> float:
        """Common value of every structure constant at radius r."""
        if r <= self.r1 or r >= self.r_end:
            return 2.0
        if self.r2 <= r <= self.r3:
            return 0.0
        if r < self.r2:
            if self.delta == 0.0:
                t = (r - self.r1) / (self.r2 - self.r1)
                return 2.0 - 2.0 * _ramp(t, self.blend)
            mid = 0.5 * (self.r1 + self.r2)
            if r <= mid:
                t = (r - self.r1) / (mid - self.r1)
                return 2.0 + self.delta * _ramp(t, self.blend)
            t = (r - mid) / (self.r2 - mid)
            return (2.0 + self.delta) * (1.0 - _ramp(t, self.blend))
        t = (r - self.r3) / (self.r_end - self.r3)
        return 2.0 * _ramp(t, self.blend)

    def stretch(self, r: float) -> float:
        """Angular stretch factor s(r): 1 off [r2, r3], reaching d at r3."""
        return self.stretch_jet(Jet2.variable(r)).f

    def stretch_jet(self, rj: Jet2) -> Jet2:
        if rj.f < self.r2 or rj.f > self.r3:
            return Jet2.const(1.0)
        t = (rj - self.r2) / (self.r3 - self.r2)
        return 1.0 + (self.d - 1.0) * _ramp_jet(t, self.blend)

    def to_config(self) -> dict:
        return {
            "r1": self.r1, "r2": self.r2, "r3": self.r3, "R": self.r_end,
            "d": self.d, "delta": self.delta, "blend": self.blend.value,
        }

    @classmethod
    def from_config(cls, cfg: dict) -> "StageProfile":
        known = {"r1", "r2", "r3", "R", "d", "delta", "blend"}
        unknown = set(cfg) - known
        if unknown:
            raise ValueError(f"unknown profile config keys: {sorted(unknown)}")
        return cls(
            r1=float(cfg.get("r1", 3.0)),
            r2=float(cfg.get("r2", 8.0)),
            r3=float(cfg.get("r3", 14.0)),
            r_end=float(cfg.get("R", 19.0)),
            d=int(cfg.get("d", 3)),
            delta=float(cfg.get("delta", 0.0)),
            blend=Blend(cfg.get("blend", "smoothstep5")),
        )

    def config_hash(self) -> str:
        text = json.dumps(self.to_config(), sort_keys=True)
        return hashlib.sha256(text.encode()).hexdigest()[:16]


#: stage_profile accepts radii up to profile.R + this margin by default.
STAGE_MARGIN_DEFAULT = 2.0


def stage_profile(profile: StageProfile, r: float, n: int = 3,
                  margin: float = STAGE_MARGIN_DEFAULT) -> ModelPoint:
    """Model point of the staged metric at radius r.

    During the stretch stage the v warp is scaled by s(r); whenever the
    stretch jet is exactly the identity the shared reference profile is
    reused so downstream tables are bit-identical to direct construction.
    """
    if not (R_MIN <= r <= profile.r_end + margin):
        raise ValueError(f"radius {r} outside [{R_MIN}, {profile.r_end + margin}]")
    c = StructureConstants.constant(n - 1, profile.structure_value(r))
    warp = COSH_SINH2
    if profile.stage_of(r) == 3:
        sj = profile.stretch_jet(Jet2.variable(r))
        if (sj.f, sj.f1, sj.f2) != (1.0, 0.0, 0.0):
            def stretched(rj: Jet2, _profile=profile):
                return jcosh(rj), _profile.stretch_jet(rj) * jsinh(rj * 2)
            warp = WarpProfile.custom(stretched, label=f"cosh_sinh2 stretched (d={profile.d})")
    return ModelPoint(n=n, r=float(r), c=c, warp=warp)


def sample_planes(n: int, count: int, seed: int) -> np.ndarray:
    """Deterministic orthonormal 2-frames, shape (count, 2, 2n); the
    coordinate planes come first (in lexicographic pair order) while count
    allows, then Gaussian-orthonormalized draws."""
    if count < 1:
        raise ValueError(f"plane count must be >= 1, got {count}")
    dim = 2 * n
    frames = np.zeros((count, 2, dim))
    coords = [(i, j) for i in range(dim) for j in range(i + 1, dim)]
    k = 0
    for (i, j) in coords[:count]:
        frames[k, 0, i] = 1.0
        frames[k, 1, j] = 1.0
        k += 1
    rng = np.random.default_rng(seed)
    while k < count:
        u = rng.standard_normal(dim)
        w = rng.standard_normal(dim)
        nu = np.linalg.norm(u)
        if nu < 1e-8:
            continue
        u = u / nu
        w = w - (w @ u) * u
        nw = np.linalg.norm(w)
        if nw < 1e-8:
            continue
        frames[k, 0] = u
        frames[k, 1] = w / nw
        k += 1
    return frames


REFINE_STEPS_DEFAULT = 50


def _plane_value_and_grad(dense: np.ndarray, u: np.ndarray, w: np.ndarray):
    val = float(np.einsum("ijkl,i,j,k,l->", dense, u, w, u, w))
    gu = np.einsum("ajkl,j,k,l->a", dense, w, u, w) + np.einsum("ijal,i,j,l->a", dense, u, w, w)
    gw = np.einsum("ibkl,i,k,l->b", dense, u, u, w) + np.einsum("ijkb,i,j,k->b", dense, u, w, u)
    return val, gu, gw


def _refine_extreme(dense: np.ndarray, frame: np.ndarray, direction: float,
                    steps: int = REFINE_STEPS_DEFAULT) -> float:
    """Projected local ascent (direction +1) or descent (-1) of the plane
    curvature from a starting orthonormal frame; returns the best value seen."""
    u, w = frame[0].copy(), frame[1].copy()
    best, _, _ = _plane_value_and_grad(dense, u, w)
    step = 0.1
    for _ in range(steps):
        _, gu, gw = _plane_value_and_grad(dense, u, w)
        gu = gu - (gu @ u) * u - (gu @ w) * w
        gw = gw - (gw @ u) * u - (gw @ w) * w
        norm = math.sqrt(float(gu @ gu + gw @ gw))
        if norm < 1e-14:
            break
        u = u + direction * step * gu / norm
        w = w + direction * step * gw / norm
        u = u / np.linalg.norm(u)
        w = w - (w @ u) * u
        nw = np.linalg.norm(w)
        if nw < 1e-12:
            break
        w = w / nw
        val, _, _ = _plane_value_and_grad(dense, u, w)
        best = max(best, val) if direction > 0 else min(best, val)
        step *= 0.9
    return best


def curvature_extremes(tensor: CurvatureTensor, frames: np.ndarray,
                       refine_steps: int = REFINE_STEPS_DEFAULT) -> tuple[float, float]:
    """(min K, max K) over the sampled planes, widened by projected local
    descent/ascent from the extreme samples."""
    ks = plane_curvatures(tensor, frames)
    lo_i, hi_i = int(np.argmin(ks)), int(np.argmax(ks))
    lo = _refine_extreme(tensor.dense, frames[lo_i], -1.0, refine_steps)
    hi = _refine_extreme(tensor.dense, frames[hi_i], +1.0, refine_steps)
    return min(float(ks[lo_i]), lo), max(float(ks[hi_i]), hi)


@dataclass(frozen=True)
class PinchRow:
    r: float
    min_k: float
    max_k: float
    ok: bool


@dataclass(frozen=True)
class PinchScan:
    n: int
    eps: float
    r_est: float | None
    rows: tuple[PinchRow, ...]

    @property
    def found(self) -> bool:
        return self.r_est is not None


PINCH_SAMPLES_DEFAULT = 512
PINCH_R_MAX_DEFAULT = 12.0
PINCH_R_COUNT_DEFAULT = 49


def pinching_scan(n: int, c_values=None, eps: float = 0.25,
                  samples: int = PINCH_SAMPLES_DEFAULT, seed: int = 0,
                  r_values=None) -> PinchScan:
    """Scan a radius grid for the smallest radius beyond which every sampled
    plane curvature stays inside the open window (-4-eps, -1+eps), across all
    requested structure-constant choices.  Absence is reported, not raised."""
    if eps <= 0.0:
        raise ValueError(f"eps must be positive, got {eps}")
    if c_values is None:
        c_values = (2.0,)
    constants = [StructureConstants.resolve(n, spec) for spec in c_values]
    if r_values is None:
        r_values = np.linspace(R_MIN, PINCH_R_MAX_DEFAULT, PINCH_R_COUNT_DEFAULT)
    frames = sample_planes(n, samples, seed)
    rows = []
    for r in r_values:
        lo, hi = math.inf, -math.inf
        for c in constants:
            tensor = component_table(ModelPoint(n=n, r=float(r), c=c))
            rlo, rhi = curvature_extremes(tensor, frames)
            lo, hi = min(lo, rlo), max(hi, rhi)
        ok = (-4.0 - eps < lo) and (hi < -1.0 + eps)
        rows.append(PinchRow(r=float(r), min_k=lo, max_k=hi, ok=ok))
    r_est = None
    for row in reversed(rows):
        if not row.ok:
            break
        r_est = row.r
    return PinchScan(n=n, eps=eps, r_est=r_est, rows=tuple(rows))


def pinching_radius(n: int, c_values=None, eps: float = 0.25,
                    samples: int = PINCH_SAMPLES_DEFAULT, seed: int = 0,
                    r_values=None) -> float | None:
    return pinching_scan(n, c_values, eps, samples, seed, r_values).r_est


@dataclass(frozen=True)
class SweepGrid:
    """Grid spec: n and r lists plus a structure-constant sampling rule --
    either all (n-1)-fold combinations of `c_levels`, or `c_random` seeded
    uniform draws from [0, 2]^(n-1)."""

    ns: tuple[int, ...]
    rs: tuple[float, ...]
    c_levels: tuple[float, ...] = (2.0,)
    c_random: int = 0
    seed: int = 0
    samples: int = 128
    tol: float = 1e-8
    mode: str = "exact"

    def __post_init__(self):
        if self.c_random < 0:
            raise ValueError("c_random must be nonnegative")
        if self.c_random == 0 and not self.c_levels:
            raise ValueError("either c_levels or c_random must be provided")
        if self.mode not in ("exact", "asymptotic"):
            raise ValueError(f"unknown mode {self.mode!r}")


MAX_GRID_COMBINATIONS = 4096


def _grid_constants(grid: SweepGrid, n: int, rng: np.random.Generator) -> list[StructureConstants]:
    if grid.c_random > 0:
        draws = rng.uniform(0.0, 2.0, size=(grid.c_random, n - 1))
        return [StructureConstants(tuple(row)) for row in draws]
    total = len(grid.c_levels) ** (n - 1)
    if total > MAX_GRID_COMBINATIONS:
        raise ValueError(f"c-level grid too large for n={n}: {total} combinations")
    import itertools

    return [
        StructureConstants(combo) for combo in itertools.product(grid.c_levels, repeat=n - 1)
    ]


@dataclass(frozen=True)
class ReportRow:
    n: int
    r: float
    c: tuple[float, ...]
    max_op_eig: float
    min_k: float
    max_k: float
    spectrum: Spectrum
    passed: bool


def sweep(grid: SweepGrid) -> list[ReportRow]:
    """One row per (n, r, c) in deterministic order: operator spectrum plus
    sampled sectional-curvature extremes; a row passes when the largest
    operator eigenvalue does not exceed the grid tolerance."""
    rng = np.random.default_rng(grid.seed)
    rows: list[ReportRow] = []
    for n in grid.ns:
        basis = build_wedge_basis(n)
        frames = sample_planes(n, grid.samples, grid.seed)
        constants = _grid_constants(grid, n, rng)
        for r in grid.rs:
            for c in constants:
                point = ModelPoint(n=n, r=float(r), c=c)
                tensor = curvature_table(point, grid.mode)
                dec = eigen_sym(assemble_operator(tensor, basis))
                max_eig = float(dec.eigenvalues[-1])
                lo, hi = curvature_extremes(tensor, frames)
                rows.append(
                    ReportRow(
                        n=n, r=float(r), c=c.values,
                        max_op_eig=max_eig, min_k=lo, max_k=hi,
                        spectrum=cluster_spectrum(dec.eigenvalues),
                        passed=max_eig <= grid.tol,
                    )
                )
    return rows


QUASI_STATIC_CAVEAT = (
    "unwind/rewind verdicts evaluate the constant-bracket curvature formulas "
    "with the structure constants frozen at each sampled radius (quasi-static model)"
)
STRETCH_CAVEAT = (
    "the angular stretch is modeled as a smooth monotone scaling of the v warp; "
    "its exact profile is configuration, not derivation"
)
SAMPLING_CAVEAT = "verdicts are pointwise spectral checks at the sampled radii only"


@dataclass(frozen=True)
class CertificateRow:
    r: float
    stage: int
    max_eigenvalue: float
    passed: bool
    detail: str


@dataclass(frozen=True)
class Certificate:
    profile_hash: str
    n: int
    tol: float
    rows: tuple[CertificateRow, ...]
    passed: bool
    caveats: tuple[str, ...]


def certify_nonpositive(profile: StageProfile, r_samples: int = 200, tol: float = 1e-8,
                        n: int = 3, r_values=None) -> Certificate:
    """Nonpositivity certificate across the profile stages.

    Reference stages use the full exact operator; unwind/rewind stages use
    the asymptotic holomorphic block plus the exact 2x2 blocks at the frozen
    constants; the stretch stage uses the full exact operator with the
    stretched warp.
    """
    if r_values is None:
        if r_samples < 10:
            raise ValueError(f"need at least 10 radius samples, got {r_samples}")
        r_values = np.linspace(R_MIN, profile.r_end + 1.0, r_samples)
    basis = build_wedge_basis(n)
    rows: list[CertificateRow] = []
    for r in r_values:
        r = float(r)
        stage = profile.stage_of(r)
        point = stage_profile(profile, r, n=n)
        if stage in (2, 4):
            hol = holomorphic_block(point, "asymptotic")
            worst = float(eigen_sym(hol).eigenvalues[-1])
            detail = "asymptotic holomorphic block"
            exact_op = assemble_operator(component_table(point), basis)
            for b, block in enumerate(block_matrices(exact_op, basis)[1:], start=1):
                eig = float(eigen_sym(block).eigenvalues[-1])
                if eig > worst:
                    members = basis.blocks[b]
                    worst = eig
                    detail = f"exact block {basis.pairs[members[0]]}x{basis.pairs[members[1]]}"
        else:
            dec = eigen_sym(assemble_operator(component_table(point), basis))
            worst = float(dec.eigenvalues[-1])
            detail = f"spectrum {cluster_spectrum(dec.eigenvalues)}"
            if stage == 3:
                detail = "stretched warp; " + detail
        rows.append(
            CertificateRow(r=r, stage=stage, max_eigenvalue=worst,
                           passed=worst <= tol, detail=detail)
        )
    return Certificate(
        profile_hash=profile.config_hash(), n=n, tol=tol, rows=tuple(rows),
        passed=all(row.passed for row in rows),
        caveats=(QUASI_STATIC_CAVEAT, STRETCH_CAVEAT, SAMPLING_CAVEAT),
    )


PERTURB_SAMPLES_DEFAULT = 4096


@dataclass(frozen=True)
class PerturbationReport:
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


def perturbation_demo(delta: float, n: int, r: float,
                      samples: int = PERTURB_SAMPLES_DEFAULT, seed: int = 0) -> PerturbationReport:
    """Overshoot demonstration at c = 2 + delta: the asymptotic
    horizontal-vertical block gains the eigenvalue -1 + (2+delta)^2/4 (positive
    for delta > 0) while sampled plane curvatures stay negative for small
    delta and large radius.  The report states what was actually observed."""
    if delta < 0.0:
        raise ValueError(f"delta must be nonnegative, got {delta}")
    point = ModelPoint.at(n, r, 2.0 + delta)
    basis = build_wedge_basis(n)
    asym_op = assemble_operator(curvature_table(point, "asymptotic"), basis)
    hv = basis.block_of_pairs((1, 2 * n - 1), (2, 2 * n))
    block_eig = float(eigen_sym(asym_op.submatrix(basis.blocks[hv])).eigenvalues[-1])
    op_eig = float(eigen_sym(asym_op).eigenvalues[-1])
    tensor = component_table(point)
    lo, hi = curvature_extremes(tensor, sample_planes(n, samples, seed))
    expected = -1.0 + (2.0 + delta) ** 2 / 4.0
    positive_found = block_eig > 1e-12
    all_negative = hi < 0.0
    return PerturbationReport(
        delta=delta, n=n, r=r,
        block_max_eigenvalue=block_eig, expected_block_eigenvalue=expected,
        operator_max_eigenvalue=op_eig, min_k=lo, max_k=hi,
        positive_eigenvalue_found=positive_found, all_k_negative=all_negative,
        passed=(positive_found == (delta > 0.0)) and all_negative,
    )
