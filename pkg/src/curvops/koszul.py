"""Independent curvature recomputation from the Koszul formula.

The frame {X_1..X_{2n-2}, d/dtheta, d/dr} has inner products depending on
r alone (h^2 on horizontal indices, v^2/4 on theta, 1 on r) and constant
brackets [X_i, X_{i+1}] = c_i d/dtheta.  The Koszul formula

    2 <nabla_X Y, Z> = X<Y,Z> + Y<X,Z> - Z<X,Y>
                       + <[X,Y],Z> - <[X,Z],Y> - <[Y,Z],X>

then reduces to a form that is linear in the metric diagonal and its
radial derivative, so first-derivative jets of the connection
coefficients are obtained by evaluating the same form on (G', G'') --
no numerical differentiation on the main path.  A finite-difference
fallback (step 1e-5) exists for profiles whose second derivatives are
not trusted.

Curvature is assembled as R(X,Y)Z = nabla_X nabla_Y Z
- nabla_Y nabla_X Z - nabla_[X,Y] Z, lowered by the metric and
normalized to the orthonormal frame.  Slot and sign conventions are
pinned by one physical value: the overall sign is chosen so that
diagonal components equal plane curvatures, K(Y_1, Y_2) = -4 for the
reference c == 2 profile (a test asserts this pin).

The bracket-and-warp data alone describe a model whose horizontal slice
is flat, which reproduces every vertical, radial and bracket-twist term
but not the curvature carried by the horizontal base geometry.  That
contribution is a constant J-adapted space-form tensor (plane curvatures
in [-4, -1], holomorphic pairs at -4) scaled by 1/h^2, added on purely
horizontal indices at the final step.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .frame import ModelPoint, eval_warp
from .tensor import CurvatureTensor, Quad, canonical_quads

#: Step for the finite-difference fallback of the connection derivative.
FD_STEP = 1e-5


@dataclass(frozen=True, eq=False)
class BracketTable:
    """Frame bracket coefficients: coeffs[i-1, j-1, m-1] is the X_m
    component of [X_i, X_j].  Antisymmetric; theta is central."""

    n: int
    coeffs: np.ndarray

    def bracket(self, i: int, j: int) -> dict[int, float]:
        """Nonzero expansion of [X_i, X_j], as {frame index: coefficient}."""
        d = 2 * self.n
        if not (1 <= i <= d and 1 <= j <= d):
            raise ValueError(f"frame index out of range 1..{d}")
        row = self.coeffs[i - 1, j - 1]
        return {m + 1: float(row[m]) for m in np.nonzero(row)[0]}


def bracket_table(point: ModelPoint) -> BracketTable:
    n = point.n
    d = 2 * n
    th = 2 * n - 1
    b = np.zeros((d, d, d))
    for i in range(1, 2 * n - 2, 2):
        ci = point.c.for_odd(i)
        b[i - 1, i, th - 1] = ci
        b[i, i - 1, th - 1] = -ci
    b.setflags(write=False)
    return BracketTable(n=n, coeffs=b)


def _metric_diagonals(point: ModelPoint) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(G, G', G'') for the diagonal frame metric at the point's radius."""
    jet = point.warp_jet()
    if jet.v <= 0.0:
        raise ValueError(f"warp v({point.r}) = {jet.v} is not positive")
    d = 2 * point.n
    g = np.full(d, jet.h * jet.h)
    gp = np.full(d, 2.0 * jet.h * jet.hp)
    gpp = np.full(d, 2.0 * (jet.hp * jet.hp + jet.h * jet.hpp))
    g[d - 2] = jet.v * jet.v / 4.0
    gp[d - 2] = jet.v * jet.vp / 2.0
    gpp[d - 2] = (jet.vp * jet.vp + jet.v * jet.vpp) / 2.0
    g[d - 1], gp[d - 1], gpp[d - 1] = 1.0, 0.0, 0.0
    return g, gp, gpp


def _koszul_form(g: np.ndarray, gp: np.ndarray, b: np.ndarray) -> np.ndarray:
    """2<nabla_{E_i}E_j, E_k> as a function of the metric diagonal g and its
    derivative gp; linear in (g, gp), so the same form on (G', G'') is the
    radial derivative."""
    d = len(g)
    rho = d - 1
    k = np.zeros((d, d, d))
    idx = np.arange(d)
    k[rho, idx, idx] += gp
    k[idx, rho, idx] += gp
    k[idx, idx, rho] -= gp
    k += b * g[None, None, :]
    k -= np.einsum("ikj,j->ijk", b, g)
    k -= np.einsum("jki,i->ijk", b, g)
    return k


@dataclass(frozen=True, eq=False)
class ConnectionCoefficients:
    """Frame connection at one radius: gamma[i-1, j-1, l-1] is the X_l
    component of nabla_{X_i} X_j, gamma_r its radial derivative."""

    n: int
    gamma: np.ndarray
    gamma_r: np.ndarray
    metric_diag: np.ndarray
    metric_diag_r: np.ndarray

    def coefficient(self, i: int, j: int, l: int) -> float:
        d = 2 * self.n
        if not all(1 <= x <= d for x in (i, j, l)):
            raise ValueError(f"frame index out of range 1..{d}")
        return float(self.gamma[i - 1, j - 1, l - 1])

    def compatibility_residual(self) -> float:
        """max deviation of E_i<E_j,E_k> = <nabla_i E_j, E_k> + <E_j, nabla_i E_k>."""
        d = 2 * self.n
        rho = d - 1
        lhs = np.zeros((d, d, d))
        lhs[rho, np.arange(d), np.arange(d)] = self.metric_diag_r
        rhs = self.gamma * self.metric_diag[None, None, :]
        rhs = rhs + np.einsum("ikj->ijk", rhs)
        return float(np.abs(lhs - rhs).max())

    def torsion_residual(self, brackets: BracketTable) -> float:
        """max |nabla_i X_j - nabla_j X_i - [X_i, X_j]| over components."""
        skew = self.gamma - np.einsum("jil->ijl", self.gamma)
        return float(np.abs(skew - brackets.coeffs).max())


def connection(point: ModelPoint, derivative_mode: str = "jet") -> ConnectionCoefficients:
    """Levi-Civita connection coefficients of the frame at the point's radius,
    with their radial derivatives (order-1 jets of Gamma(r))."""
    g, gp, gpp = _metric_diagonals(point)
    b = bracket_table(point).coeffs
    denom = 2.0 * g[None, None, :]
    kval = _koszul_form(g, gp, b)
    gamma = kval / denom
    if derivative_mode == "jet":
        kder = _koszul_form(gp, gpp, b)
        gamma_r = kder / denom - kval * gp[None, None, :] / (denom * g[None, None, :])
    elif derivative_mode == "fd":
        lo = ModelPoint(point.n, point.r - FD_STEP, point.c, point.warp)
        hi = ModelPoint(point.n, point.r + FD_STEP, point.c, point.warp)
        gamma_r = (connection(hi, "jet").gamma - connection(lo, "jet").gamma) / (2.0 * FD_STEP)
    else:
        raise ValueError(f"unknown derivative mode {derivative_mode!r}")
    gamma.setflags(write=False)
    gamma_r.setflags(write=False)
    return ConnectionCoefficients(
        n=point.n, gamma=gamma, gamma_r=gamma_r, metric_diag=g, metric_diag_r=gp
    )


def space_form_tensor(n: int) -> np.ndarray:
    """Curvature tensor of the horizontal base geometry in a J-adapted
    orthonormal basis (dimension 2n-2, plane curvatures in [-4, -1])."""
    dh = 2 * n - 2
    eye = np.eye(dh)
    jmat = np.zeros((dh, dh))
    for k in range(0, dh, 2):
        jmat[k, k + 1] = 1.0
        jmat[k + 1, k] = -1.0
    t = np.einsum("ik,jl->ijkl", eye, eye) - np.einsum("il,jk->ijkl", eye, eye)
    t += np.einsum("ik,jl->ijkl", jmat, jmat) - np.einsum("il,jk->ijkl", jmat, jmat)
    t += 2.0 * np.einsum("ij,kl->ijkl", jmat, jmat)
    return -t


def oracle_tensor(point: ModelPoint, derivative_mode: str = "jet") -> CurvatureTensor:
    """Curvature tensor recomputed from the connection, independent of the
    closed-form component table."""
    n = point.n
    d = 2 * n
    conn = connection(point, derivative_mode)
    gamma, gamma_r, g = conn.gamma, conn.gamma_r, conn.metric_diag
    b = bracket_table(point).coeffs

    ind = np.zeros(d)
    ind[d - 1] = 1.0
    r_up = np.einsum("i,jkl->ijkl", ind, gamma_r)
    r_up -= np.einsum("j,ikl->ijkl", ind, gamma_r)
    r_up += np.einsum("jkm,iml->ijkl", gamma, gamma)
    r_up -= np.einsum("ikm,jml->ijkl", gamma, gamma)
    r_up -= np.einsum("ijm,mkl->ijkl", b, gamma)

    r_low = r_up * g[None, None, None, :]
    norms = np.sqrt(g)
    r_frame = r_low / np.einsum("i,j,k,l->ijkl", norms, norms, norms, norms)
    # Sign pinned so diagonal components are plane curvatures (K(Y1,Y2) = -4
    # at the reference point); see the module docstring.
    r_frame = -r_frame

    jet = eval_warp(point.warp, point.r)
    dh = d - 2
    r_frame[:dh, :dh, :dh, :dh] += space_form_tensor(n) / (jet.h * jet.h)

    comp: dict[Quad, float] = {}
    for (i, j, k, l) in canonical_quads(d):
        val = float(r_frame[i - 1, j - 1, k - 1, l - 1])
        if val != 0.0:
            comp[(i, j, k, l)] = val
    return CurvatureTensor(dim=d, components=comp)


@dataclass(frozen=True)
class TensorComparison:
    max_abs_diff: float
    worst_tuple: Quad


def compare_tensors(a: CurvatureTensor, b: CurvatureTensor) -> TensorComparison:
    """Exhaustive comparison over canonical tuples; reports the worst offender
    (the first tuple on ties, so equal tensors report (1,2,1,2))."""
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    worst: Quad = (1, 2, 1, 2)
    worst_diff = -1.0
    for quad in canonical_quads(a.dim):
        diff = abs(a.component(*quad) - b.component(*quad))
        if diff > worst_diff:
            worst, worst_diff = quad, diff
    return TensorComparison(max_abs_diff=worst_diff, worst_tuple=worst)
