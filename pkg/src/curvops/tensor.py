"""Exact (4,0) curvature tensor of the warped-product model.

Components are stored on canonical symmetry representatives (i<j, k<l,
(i,j) <= (k,l) lexicographically); every other index order is resolved
through the antisymmetries and the pair symmetry.  The diagonal
convention is K(span(Y_i, Y_j)) = R_{ijij}.

Nonzero components, with th = 2n-1 (theta), ra = 2n (radial), i, j, k
horizontal, i, k odd, j not in the pair of i:

    R_{i,j,i,j}        = -1/h^2 - (h'/h)^2
    R_{i,i+1,i,i+1}    = -(h'/h)^2 - 4/h^2 - 3 c_i^2 v^2 / (16 h^4)
    R_{i,th,i,th}      = -h'v'/(hv) + chat_i^2 v^2 / (16 h^4)
    R_{i,ra,i,ra}      = -h''/h
    R_{th,ra,th,ra}    = -v''/v
    R_{i,i+1,th,ra}    = 2 R_{i,th,i+1,ra} = -2 R_{i,ra,i+1,th}
                       = -c_i (v / 2h^2) (v'/v - h'/h)
    R_{i,i+1,k,k+1}    = 2 R_{i,k,i+1,k+1} = -2 R_{i,k+1,i+1,k}
                       = -2/h^2 - c_i c_k v^2 / (8 h^4)

where chat_i is the constant of the pair containing i.  The asymptotic
table applies the formal large-radius substitution 1/h^2 -> 0,
(h'/h)^2 -> 1, h'v'/(hv) -> 2, v^2/(16h^4) -> 1/4, h''/h -> 1,
v''/v -> 4, (v/2h^2)(ln v/h)' -> 1; it depends on n and c only.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Mapping

import numpy as np

from .frame import ModelPoint, holomorphic_partner


class DegeneratePlaneError(ValueError):
    """Raised when two vectors fail to span a 2-plane."""


Quad = tuple[int, int, int, int]


def canonical_tuple(i: int, j: int, k: int, l: int, dim: int) -> tuple[Quad | None, int]:
    """Canonical representative and sign of (i,j,k,l); sign 0 for a repeated
    index within one slot pair."""
    for x in (i, j, k, l):
        if not (1 <= x <= dim):
            raise ValueError(f"frame index {x} out of range 1..{dim}")
    if i == j or k == l:
        return None, 0
    sign = 1
    if i > j:
        i, j, sign = j, i, -sign
    if k > l:
        k, l, sign = l, k, -sign
    if (i, j) > (k, l):
        i, j, k, l = k, l, i, j
    return (i, j, k, l), sign


def canonical_pairs(dim: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, dim + 1) for j in range(i + 1, dim + 1)]


def canonical_quads(dim: int) -> Iterator[Quad]:
    """All canonical representatives in lexicographic pair order."""
    pairs = canonical_pairs(dim)
    for a, p in enumerate(pairs):
        for q in pairs[a:]:
            yield p + q


@dataclass(frozen=True, eq=False)
class CurvatureTensor:
    """Curvature components on canonical representatives; the accessor
    resolves arbitrary index orders, returning 0 for anything not stored."""

    dim: int
    components: Mapping[Quad, float]

    def __post_init__(self):
        for key in self.components:
            canonical, sign = canonical_tuple(*key, self.dim)
            if sign != 1 or canonical != key:
                raise ValueError(f"non-canonical component key {key}")

    def component(self, i: int, j: int, k: int, l: int) -> float:
        key, sign = canonical_tuple(i, j, k, l, self.dim)
        if sign == 0:
            return 0.0
        return sign * self.components.get(key, 0.0)

    @cached_property
    def dense(self) -> np.ndarray:
        """Dense 0-based array with all symmetric images filled in."""
        d = self.dim
        out = np.zeros((d, d, d, d))
        for (i, j, k, l), val in self.components.items():
            a, b, c, e = i - 1, j - 1, k - 1, l - 1
            for (p, q, s1) in ((a, b, 1.0), (b, a, -1.0)):
                for (u, w, s2) in ((c, e, 1.0), (e, c, -1.0)):
                    s = s1 * s2 * val
                    out[p, q, u, w] = s
                    out[u, w, p, q] = s
        out.setflags(write=False)
        return out


def canonical_component(tensor: CurvatureTensor, i: int, j: int, k: int, l: int) -> float:
    """Component for an arbitrary index order, via the tensor symmetries."""
    return tensor.component(i, j, k, l)


def component_table(point: ModelPoint) -> CurvatureTensor:
    """Exact curvature components at a model point."""
    n = point.n
    jet = point.warp_jet()
    if jet.v <= 0.0:
        raise ValueError(f"warp v({point.r}) = {jet.v} is not positive")
    h, hp, hpp, v, vp, vpp = jet.h, jet.hp, jet.hpp, jet.v, jet.vp, jet.vpp
    th, ra = 2 * n - 1, 2 * n

    inv_h2 = 1.0 / (h * h)
    slope2 = (hp / h) ** 2
    v2_16h4 = v * v / (16.0 * h ** 4)
    mixed_scale = (v / (2.0 * h * h)) * (vp / v - hp / h)

    comp: dict[Quad, float] = {}
    horiz = range(1, 2 * n - 1)
    for i in horiz:
        for j in range(i + 1, 2 * n - 1):
            if j == holomorphic_partner(i, n):
                ci = point.c.for_odd(i)
                comp[(i, j, i, j)] = -slope2 - 4.0 * inv_h2 - 3.0 * ci * ci * v2_16h4
            else:
                comp[(i, j, i, j)] = -inv_h2 - slope2
        chat = point.c.pair_value(i)
        comp[(i, th, i, th)] = -(hp * vp) / (h * v) + chat * chat * v2_16h4
        comp[(i, ra, i, ra)] = -hpp / h
    comp[(th, ra, th, ra)] = -vpp / v

    for i in range(1, 2 * n - 2, 2):
        ci = point.c.for_odd(i)
        m = -ci * mixed_scale
        comp[(i, i + 1, th, ra)] = m
        comp[(i, th, i + 1, ra)] = m / 2.0
        comp[(i, ra, i + 1, th)] = -m / 2.0
        for k in range(i + 2, 2 * n - 2, 2):
            q = -2.0 * inv_h2 - ci * point.c.for_odd(k) * v * v / (8.0 * h ** 4)
            comp[(i, i + 1, k, k + 1)] = q
            comp[(i, k, i + 1, k + 1)] = q / 2.0
            comp[(i, k + 1, i + 1, k)] = -q / 2.0
    return CurvatureTensor(dim=2 * n, components=comp)


def asymptotic_component_table(point: ModelPoint) -> CurvatureTensor:
    """Formal large-radius table; a function of n and c only."""
    n = point.n
    th, ra = 2 * n - 1, 2 * n
    comp: dict[Quad, float] = {}
    for i in range(1, 2 * n - 1):
        for j in range(i + 1, 2 * n - 1):
            if j == holomorphic_partner(i, n):
                ci = point.c.for_odd(i)
                comp[(i, j, i, j)] = -1.0 - 0.75 * ci * ci
            else:
                comp[(i, j, i, j)] = -1.0
        chat = point.c.pair_value(i)
        comp[(i, th, i, th)] = -2.0 + 0.25 * chat * chat
        comp[(i, ra, i, ra)] = -1.0
    comp[(th, ra, th, ra)] = -4.0
    for i in range(1, 2 * n - 2, 2):
        ci = point.c.for_odd(i)
        comp[(i, i + 1, th, ra)] = -ci
        comp[(i, th, i + 1, ra)] = -ci / 2.0
        comp[(i, ra, i + 1, th)] = ci / 2.0
        for k in range(i + 2, 2 * n - 2, 2):
            q = -0.5 * ci * point.c.for_odd(k)
            comp[(i, i + 1, k, k + 1)] = q
            comp[(i, k, i + 1, k + 1)] = q / 2.0
            comp[(i, k + 1, i + 1, k)] = -q / 2.0
    return CurvatureTensor(dim=2 * n, components=comp)


def curvature_table(point: ModelPoint, mode: str = "exact") -> CurvatureTensor:
    if mode == "exact":
        return component_table(point)
    if mode == "asymptotic":
        return asymptotic_component_table(point)
    raise ValueError(f"unknown mode {mode!r} (expected 'exact' or 'asymptotic')")


#: Gram-determinant floor below which a pair of vectors is rejected as a plane.
PLANE_GRAM_FLOOR = 1e-12


def sectional_curvature(tensor: CurvatureTensor, u, w) -> float:
    """Curvature of span(u, w), for u, w expressed in the orthonormal frame.

    The plane is orthonormalized first, so the value is invariant under any
    basis change of the plane.  Near-dependent inputs (Gram determinant
    below the floor, for unit-scale vectors) raise DegeneratePlaneError.
    """
    u = np.asarray(u, dtype=float)
    w = np.asarray(w, dtype=float)
    if u.shape != (tensor.dim,) or w.shape != (tensor.dim,):
        raise ValueError(f"plane vectors must have length {tensor.dim}")
    g11, g22, g12 = u @ u, w @ w, u @ w
    if g11 * g22 - g12 * g12 < PLANE_GRAM_FLOOR:
        raise DegeneratePlaneError("vectors do not span a 2-plane")
    e1 = u / np.sqrt(g11)
    w_perp = w - (w @ e1) * e1
    e2 = w_perp / np.linalg.norm(w_perp)
    return float(np.einsum("ijkl,i,j,k,l->", tensor.dense, e1, e2, e1, e2))


def plane_curvatures(tensor: CurvatureTensor, frames: np.ndarray) -> np.ndarray:
    """Vectorized K over a batch of orthonormal 2-frames, shape (m, 2, dim)."""
    u, w = frames[:, 0, :], frames[:, 1, :]
    return np.einsum("ijkl,pi,pj,pk,pl->p", tensor.dense, u, w, u, w)


def first_bianchi_residual(tensor: CurvatureTensor) -> float:
    """max |R_{ijkl} + R_{iklj} + R_{iljk}| over all index tuples."""
    d = tensor.dense
    cyc = d + np.einsum("iklj->ijkl", d) + np.einsum("iljk->ijkl", d)
    return float(np.abs(cyc).max())
