"""Curvature operator assembly, block extraction and symmetric spectra.

The operator matrix in the wedge basis has entry <R(Y_i ^ Y_j), Y_k ^ Y_l>
= R_{ijkl} and is exactly block diagonal in the basis block order: one
n x n holomorphic block followed by 2 x 2 blocks.  The eigensolver is a
cyclic Jacobi rotation scheme; determinants come from symmetric-pivoted
elimination, with a closed-form subset polynomial for the negated
holomorphic block as the second route.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Sequence

import numpy as np

from .frame import ModelPoint, StructureConstants, WedgeBasis, build_wedge_basis
from .tensor import CurvatureTensor, curvature_table


class EigenConvergenceError(RuntimeError):
    """Jacobi sweeps exhausted before reaching the target off-diagonal norm."""


class BlockLeakError(RuntimeError):
    """A cross-block operator entry was not exactly zero."""


@dataclass(frozen=True, eq=False)
class SymmetricMatrix:
    """Dense real symmetric matrix; the lower triangle is mirrored from the
    upper one at construction, so symmetry is exact."""

    order: int
    data: np.ndarray

    @classmethod
    def from_upper(cls, order: int, entry) -> "SymmetricMatrix":
        a = np.zeros((order, order))
        for p in range(order):
            for q in range(p, order):
                a[p, q] = entry(p, q)
                a[q, p] = a[p, q]
        a.setflags(write=False)
        return cls(order=order, data=a)

    @classmethod
    def from_array(cls, a) -> "SymmetricMatrix":
        a = np.asarray(a, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("symmetric matrix needs a square array")
        return cls.from_upper(a.shape[0], lambda p, q: a[p, q])

    def submatrix(self, positions: Sequence[int]) -> "SymmetricMatrix":
        idx = np.asarray(positions, dtype=int)
        sub = self.data[np.ix_(idx, idx)].copy()
        sub.setflags(write=False)
        return SymmetricMatrix(order=len(idx), data=sub)

    def negated(self) -> "SymmetricMatrix":
        a = -self.data
        a.setflags(write=False)
        return SymmetricMatrix(order=self.order, data=a)


def assemble_operator(tensor: CurvatureTensor, basis: WedgeBasis) -> SymmetricMatrix:
    """Operator matrix [R]_beta; entry ((i,j),(k,l)) = R_{ijkl}."""
    if tensor.dim != 2 * basis.n:
        raise ValueError(f"tensor dimension {tensor.dim} does not match basis (n={basis.n})")
    pairs = basis.pairs

    def entry(p: int, q: int) -> float:
        (i, j), (k, l) = pairs[p], pairs[q]
        return tensor.component(i, j, k, l)

    return SymmetricMatrix.from_upper(len(pairs), entry)


def block_matrices(matrix: SymmetricMatrix, basis: WedgeBasis) -> list[SymmetricMatrix]:
    """Diagonal blocks per the basis descriptor.  Any nonzero entry outside
    the blocks is a hard failure: the component table says such entries
    vanish identically, so leakage means a symmetry bug."""
    if matrix.order != len(basis.pairs):
        raise ValueError("matrix order does not match basis length")
    mask = np.zeros((matrix.order, matrix.order), dtype=bool)
    for members in basis.blocks:
        idx = np.asarray(members)
        mask[np.ix_(idx, idx)] = True
    leak = np.abs(np.where(mask, 0.0, matrix.data)).max()
    if leak != 0.0:
        p, q = np.unravel_index(np.abs(np.where(mask, 0.0, matrix.data)).argmax(), mask.shape)
        raise BlockLeakError(
            f"cross-block entry ({basis.pairs[p]}, {basis.pairs[q]}) = {matrix.data[p, q]!r}"
        )
    return [matrix.submatrix(members) for members in basis.blocks]


def holomorphic_block(point: ModelPoint, mode: str = "exact") -> SymmetricMatrix:
    """The n x n block on holomorphic-pair bivectors."""
    basis = build_wedge_basis(point.n)
    op = assemble_operator(curvature_table(point, mode), basis)
    return op.submatrix(basis.blocks[0])


def mixed_block(point: ModelPoint, block_id, mode: str = "exact") -> SymmetricMatrix:
    """One 2 x 2 block, identified by its two bivector index pairs."""
    basis = build_wedge_basis(point.n)
    first, second = (tuple(p) for p in block_id)
    b = basis.block_of_pairs(first, second)  # raises for non-blocks
    op = assemble_operator(curvature_table(point, mode), basis)
    return op.submatrix(basis.blocks[b])


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    """Ascending eigenvalues with an orthonormal eigenvector matrix (columns
    aligned with the eigenvalues) and the worst per-pair residual |Av - lv|."""

    eigenvalues: np.ndarray
    vectors: np.ndarray
    residual: float
    matrix_norm: float
    sweeps: int


#: Jacobi stops once the off-diagonal Frobenius norm drops below tol * |A|_F.
EIGEN_TOL_DEFAULT = 1e-13
EIGEN_TOL_MAX = 1e-6
EIGEN_MAX_SWEEPS = 100


def eigen_sym(matrix: SymmetricMatrix, tol: float = EIGEN_TOL_DEFAULT) -> EigenDecomposition:
    """Cyclic Jacobi diagonalization of a symmetric matrix."""
    if not (0.0 < tol <= EIGEN_TOL_MAX):
        raise ValueError(f"tolerance {tol} outside (0, {EIGEN_TOL_MAX}]")
    m = matrix.order
    a = matrix.data.copy()
    v = np.eye(m)
    anorm = float(np.linalg.norm(a))
    sweeps = 0
    if anorm > 0.0:
        while True:
            # off-diagonal Frobenius norm, summed directly (a subtraction of
            # |A|^2 - |diag|^2 would drown a converged matrix in cancellation)
            off = a.copy()
            np.fill_diagonal(off, 0.0)
            if math.sqrt(float(np.sum(off * off))) <= tol * anorm:
                break
            if sweeps >= EIGEN_MAX_SWEEPS:
                raise EigenConvergenceError(f"no convergence after {EIGEN_MAX_SWEEPS} sweeps")
            sweeps += 1
            for p in range(m - 1):
                for q in range(p + 1, m):
                    apq = a[p, q]
                    if apq == 0.0:
                        continue
                    diff = a[q, q] - a[p, p]
                    if abs(apq) < abs(diff) * 1e-151:
                        t = apq / diff  # limit of 1/(2 tau); tau^2 would overflow
                    else:
                        tau = diff / (2.0 * apq)
                        if tau >= 0.0:
                            t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                        else:
                            t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                    c = 1.0 / math.sqrt(1.0 + t * t)
                    s = t * c
                    rp, rq = a[p, :].copy(), a[q, :].copy()
                    a[p, :] = c * rp - s * rq
                    a[q, :] = s * rp + c * rq
                    cp, cq = a[:, p].copy(), a[:, q].copy()
                    a[:, p] = c * cp - s * cq
                    a[:, q] = s * cp + c * cq
                    a[p, q] = a[q, p] = 0.0
                    vp, vq = v[:, p].copy(), v[:, q].copy()
                    v[:, p] = c * vp - s * vq
                    v[:, q] = s * vp + c * vq
    order = np.argsort(np.diag(a), kind="stable")
    eigenvalues = np.diag(a)[order].copy()
    vectors = v[:, order].copy()
    residual = 0.0
    if m > 0:
        residual = float(
            np.linalg.norm(matrix.data @ vectors - vectors * eigenvalues[None, :], axis=0).max()
        )
    eigenvalues.setflags(write=False)
    vectors.setflags(write=False)
    return EigenDecomposition(
        eigenvalues=eigenvalues, vectors=vectors, residual=residual,
        matrix_norm=anorm, sweeps=sweeps,
    )


@dataclass(frozen=True)
class Spectrum:
    """Clustered eigenvalues: (representative value, multiplicity) pairs in
    ascending order; the representative is the cluster mean."""

    entries: tuple[tuple[float, int], ...]

    @property
    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.entries)

    def __str__(self) -> str:
        return ";".join(f"{val!r}:{mult}" for val, mult in self.entries)


CLUSTER_TOL_DEFAULT = 1e-6


def cluster_spectrum(eigs, cluster_tol: float = CLUSTER_TOL_DEFAULT) -> Spectrum:
    """Greedy clustering of a sorted eigenvalue list: a value joins the
    current cluster when it sits within cluster_tol * max(1, |value|) of the
    cluster's last member."""
    vals = [float(x) for x in eigs]
    if any(b < a for a, b in zip(vals, vals[1:])):
        raise ValueError("cluster_spectrum expects ascending input")
    if not vals:
        return Spectrum(entries=())
    clusters: list[list[float]] = [[vals[0]]]
    for x in vals[1:]:
        if x - clusters[-1][-1] <= cluster_tol * max(1.0, abs(x)):
            clusters[-1].append(x)
        else:
            clusters.append([x])
    return Spectrum(entries=tuple((sum(c) / len(c), len(c)) for c in clusters))


class Definiteness(Enum):
    NEGATIVE_DEFINITE = "negative definite"
    NEGATIVE_SEMIDEFINITE = "negative semidefinite"
    INDEFINITE = "indefinite"
    POSITIVE_SEMIDEFINITE = "positive semidefinite"
    POSITIVE_DEFINITE = "positive definite"
    ZERO = "zero"


@dataclass(frozen=True)
class DefinitenessReport:
    classification: Definiteness
    max_eigenvalue: float
    min_eigenvalue: float
    margin: float
    tol: float


def definiteness(matrix: SymmetricMatrix, tol: float = 1e-10) -> DefinitenessReport:
    """Classify via extreme eigenvalues against a tolerance band of +-tol.

    The margin is the smallest slack among the inequalities that decide the
    class (how far the extreme eigenvalues clear the band)."""
    dec = eigen_sym(matrix)
    lo = float(dec.eigenvalues[0]) if matrix.order else 0.0
    hi = float(dec.eigenvalues[-1]) if matrix.order else 0.0
    if hi < -tol:
        cls, margin = Definiteness.NEGATIVE_DEFINITE, -tol - hi
    elif lo > tol:
        cls, margin = Definiteness.POSITIVE_DEFINITE, lo - tol
    elif abs(lo) <= tol and abs(hi) <= tol:
        cls, margin = Definiteness.ZERO, tol - max(abs(lo), abs(hi))
    elif hi <= tol:
        cls, margin = Definiteness.NEGATIVE_SEMIDEFINITE, min(tol - hi, -tol - lo)
    elif lo >= -tol:
        cls, margin = Definiteness.POSITIVE_SEMIDEFINITE, min(tol + lo, hi - tol)
    else:
        cls, margin = Definiteness.INDEFINITE, min(-lo - tol, hi - tol)
    return DefinitenessReport(
        classification=cls, max_eigenvalue=hi, min_eigenvalue=lo, margin=margin, tol=tol
    )


def det_sym(matrix: SymmetricMatrix) -> float:
    """Determinant by symmetric-pivoted elimination (diagonal pivoting with
    symmetric row/column swaps, which leave the determinant unchanged).

    Diagonal pivoting is exact for the semidefinite matrices this package
    compares (a vanishing pivot then means a vanishing block); it is not a
    general-purpose factorization for indefinite zero-diagonal input."""
    a = matrix.data.copy()
    m = matrix.order
    det = 1.0
    for k in range(m):
        pivot_at = k + int(np.argmax(np.abs(np.diag(a)[k:])))
        if pivot_at != k:
            a[[k, pivot_at], :] = a[[pivot_at, k], :]
            a[:, [k, pivot_at]] = a[:, [pivot_at, k]]
        pivot = a[k, k]
        if pivot == 0.0:
            return 0.0
        det *= pivot
        if k + 1 < m:
            col = a[k + 1 :, k].copy()
            a[k + 1 :, k + 1 :] -= np.outer(col, col) / pivot
    return float(det)


def leading_principal_minors(matrix: SymmetricMatrix) -> np.ndarray:
    """Determinants of the leading k x k submatrices, k = 1..order."""
    return np.array(
        [det_sym(matrix.submatrix(range(k + 1))) for k in range(matrix.order)]
    )


MAX_CLOSED_FORM_CONSTANTS = 19  # 2^19 subset terms; above this the sum is not desk scale


def det_holomorphic_closed_form(c) -> float:
    """det(-H_n) from the subset polynomial: a degree-k term (a product of k
    squared structure constants) carries the coefficient 4(k+1)/4^k."""
    values = c.values if isinstance(c, StructureConstants) else tuple(float(x) for x in c)
    if len(values) > MAX_CLOSED_FORM_CONSTANTS:
        raise ValueError(f"subset polynomial limited to {MAX_CLOSED_FORM_CONSTANTS} constants")
    squares = [x * x for x in values]
    total = 0.0
    for k in range(len(squares) + 1):
        coeff = 4.0 * (k + 1) / 4.0**k
        for subset in combinations(squares, k):
            total += coeff * math.prod(subset)
    return total
