"""Frame combinatorics and warp data for the polar warped-product model.

The model lives on R^(2n-2) x S^1 x (0, inf).  An orthonormal frame
Y_1..Y_{2n} consists of 2n-2 *horizontal* directions grouped into
holomorphic pairs (2k-1, 2k), the angular direction theta at index 2n-1
and the radial direction at index 2n.  All metric coefficients depend on
the radius r alone through a warp pair (h, v):

    horizontal block  h(r)^2 * (base metric),
    angular block     (1/4) v(r)^2 dtheta^2,
    radial block      dr^2.

The reference profile is h = cosh(r), v = sinh(2r).  Structure constants
c_i (i odd) give the only nonzero frame brackets, [X_i, X_{i+1}] = c_i
d/dtheta; c == 2 is the reference complex-hyperbolic model and c == 0 the
integrable model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Callable, Sequence

from .jets import Jet2, jcosh, jsinh

#: Smallest admissible radius; v(0) = 0 collapses the angular direction,
#: so every consumer of a model point rejects anything below this.
R_MIN = 1e-3


class FrameRole(Enum):
    HORIZONTAL = "horizontal"
    THETA = "theta"
    RADIAL = "radial"


def _check_index(i: int, n: int) -> None:
    if not (1 <= i <= 2 * n):
        raise ValueError(f"frame index {i} out of range 1..{2 * n} (n={n})")


def frame_role(i: int, n: int) -> FrameRole:
    """Role of frame index i in a 2n-dimensional model."""
    _check_index(i, n)
    if i <= 2 * n - 2:
        return FrameRole.HORIZONTAL
    return FrameRole.THETA if i == 2 * n - 1 else FrameRole.RADIAL


def theta_index(n: int) -> int:
    return 2 * n - 1


def radial_index(n: int) -> int:
    return 2 * n


def holomorphic_partner(i: int, n: int) -> int:
    """Partner of i under the pairing (1,2), (3,4), ..., (2n-1,2n).

    Involutive: the partner of the partner is i.  The pair (2n-1, 2n)
    plays the same role for the theta and radial directions.
    """
    _check_index(i, n)
    return i + 1 if i % 2 == 1 else i - 1


class WarpName(Enum):
    COSH_SINH2 = "cosh_sinh2"
    CUSTOM = "custom"


@dataclass(frozen=True)
class WarpJet:
    """h, v and their first two radial derivatives at one radius."""

    h: float
    hp: float
    hpp: float
    v: float
    vp: float
    vpp: float

    def __post_init__(self):
        if not (self.h > 0.0) or self.v < 0.0:
            raise ValueError(f"warp values out of domain: h={self.h}, v={self.v}")


#: Jet evaluator signature for custom profiles: r-jet -> (h-jet, v-jet).
WarpEvaluator = Callable[[Jet2], tuple[Jet2, Jet2]]


@dataclass(frozen=True)
class WarpProfile:
    name: WarpName
    evaluator: WarpEvaluator | None = None
    label: str = ""

    @staticmethod
    def custom(evaluator: WarpEvaluator, label: str = "custom") -> "WarpProfile":
        return WarpProfile(WarpName.CUSTOM, evaluator, label)


COSH_SINH2 = WarpProfile(WarpName.COSH_SINH2, label="cosh_sinh2")


def cosh_sinh2_evaluator(rj: Jet2) -> tuple[Jet2, Jet2]:
    """Jet-arithmetic coding of the reference profile (tests pin that it is
    bit-identical to the closed forms in :func:`eval_warp`)."""
    return jcosh(rj), jsinh(rj * 2)


def eval_warp(profile: WarpProfile, r: float) -> WarpJet:
    """Evaluate a warp profile as an order-2 jet at radius r.

    The reference profile uses closed forms; custom profiles are evaluated
    through jet arithmetic, never finite differences.
    """
    if profile.name is WarpName.COSH_SINH2:
        h, hp = math.cosh(r), math.sinh(r)
        v, vp = math.sinh(2 * r), 2 * math.cosh(2 * r)
        return WarpJet(h=h, hp=hp, hpp=h, v=v, vp=vp, vpp=4 * v)
    if profile.evaluator is None:
        raise ValueError("custom warp profile without an evaluator")
    hj, vj = profile.evaluator(Jet2.variable(r))
    return WarpJet(h=hj.f, hp=hj.f1, hpp=hj.f2, v=vj.f, vp=vj.f1, vpp=vj.f2)


@dataclass(frozen=True)
class StructureConstants:
    """Bracket constants stored densely: entry k holds c_{2k+1} (0-based k),
    i.e. the constant of the k-th holomorphic pair."""

    values: tuple[float, ...]

    def __post_init__(self):
        vals = tuple(float(x) for x in self.values)
        object.__setattr__(self, "values", vals)
        if any(not math.isfinite(x) for x in vals):
            raise ValueError("structure constants must be finite")

    def __len__(self) -> int:
        return len(self.values)

    @classmethod
    def constant(cls, count: int, value: float) -> "StructureConstants":
        return cls(tuple(float(value) for _ in range(count)))

    @classmethod
    def resolve(cls, n: int, spec: "float | Sequence[float] | StructureConstants | None") -> "StructureConstants":
        """Normalize a user-facing spec: None -> all 2, a scalar broadcasts,
        a sequence must have exactly n-1 entries."""
        if isinstance(spec, StructureConstants):
            values = spec.values
        elif spec is None:
            values = tuple(2.0 for _ in range(n - 1))
        elif isinstance(spec, (int, float)):
            values = tuple(float(spec) for _ in range(n - 1))
        else:
            values = tuple(float(x) for x in spec)
        if len(values) != n - 1:
            raise ValueError(f"expected {n - 1} structure constants for n={n}, got {len(values)}")
        return cls(values)

    def for_odd(self, i: int) -> float:
        """c_i for odd horizontal index i."""
        if i % 2 == 0 or i < 1 or (i - 1) // 2 >= len(self.values):
            raise ValueError(f"no structure constant for index {i}")
        return self.values[(i - 1) // 2]

    def pair_value(self, i: int) -> float:
        """Constant of the holomorphic pair containing horizontal index i."""
        k = (i - 1) // 2
        if i < 1 or k >= len(self.values):
            raise ValueError(f"horizontal index {i} outside the stored pairs")
        return self.values[k]


@dataclass(frozen=True)
class ModelPoint:
    """One evaluation site of the metric family.

    n is the complex dimension (frame dimension 2n), r the radius, c the
    n-1 structure constants and warp the (h, v) profile.
    """

    n: int
    r: float
    c: StructureConstants
    warp: WarpProfile = COSH_SINH2

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise ValueError(f"complex dimension must be an integer >= 2, got {self.n}")
        if not (self.r >= R_MIN):
            raise ValueError(f"radius {self.r} below r_min={R_MIN} (degenerate angular direction)")
        if len(self.c) != self.n - 1:
            raise ValueError(f"need {self.n - 1} structure constants, got {len(self.c)}")

    @property
    def dim(self) -> int:
        return 2 * self.n

    @classmethod
    def at(cls, n: int, r: float, c=None, warp: WarpProfile = COSH_SINH2) -> "ModelPoint":
        return cls(n=n, r=float(r), c=StructureConstants.resolve(n, c), warp=warp)

    @classmethod
    def complex_hyperbolic(cls, n: int, r: float) -> "ModelPoint":
        """Reference point: c == 2 with the cosh/sinh(2r) profile."""
        return cls.at(n, r, 2.0)

    @classmethod
    def integrable(cls, n: int, r: float) -> "ModelPoint":
        """Integrable model: c == 0 with the cosh/sinh(2r) profile."""
        return cls.at(n, r, 0.0)

    def warp_jet(self) -> WarpJet:
        return eval_warp(self.warp, self.r)


Pair = tuple[int, int]


@dataclass(frozen=True)
class WedgeBasis:
    """Ordered bivector basis: first the n holomorphic pairs, then the
    remaining pairs grouped in 2-element blocks {(i,j), (i',j')} where
    {i,i'} and {j,j'} are holomorphic pairs."""

    n: int
    pairs: tuple[Pair, ...]
    blocks: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.pairs)

    @cached_property
    def position(self) -> dict[Pair, int]:
        return {p: k for k, p in enumerate(self.pairs)}

    def block_kind(self, block_index: int) -> str:
        """'holomorphic' for block 0, otherwise 'horizontal_vertical' when the
        leading pair touches the theta or radial index, else 'double_horizontal'."""
        if block_index == 0:
            return "holomorphic"
        lead = self.pairs[self.blocks[block_index][0]]
        return "horizontal_vertical" if lead[1] >= 2 * self.n - 1 else "double_horizontal"

    def block_of_pairs(self, first: Pair, second: Pair) -> int:
        """Index of the 2-element block formed by the two given pairs."""
        want = {tuple(first), tuple(second)}
        for b, members in enumerate(self.blocks[1:], start=1):
            if {self.pairs[k] for k in members} == want:
                return b
        raise ValueError(f"{first} and {second} do not form a basis block")


def build_wedge_basis(n: int) -> WedgeBasis:
    """Basis of the 2n(2n-1)/2 bivectors in block order.

    After the holomorphic block, each 2-element block is led by the unique
    member whose first index is odd; blocks follow the lexicographic order
    of their leaders and the follower is the partner pair sorted ascending.
    """
    if not isinstance(n, int) or n < 2:
        raise ValueError(f"wedge basis needs integer n >= 2, got {n}")
    pairs: list[Pair] = [(2 * k - 1, 2 * k) for k in range(1, n + 1)]
    blocks: list[tuple[int, ...]] = [tuple(range(n))]
    for i in range(1, 2 * n, 2):
        for j in range(i + 2, 2 * n + 1):
            a, b = sorted((holomorphic_partner(i, n), holomorphic_partner(j, n)))
            pos = len(pairs)
            pairs.append((i, j))
            pairs.append((a, b))
            blocks.append((pos, pos + 1))
    basis = WedgeBasis(n=n, pairs=tuple(pairs), blocks=tuple(blocks))
    assert len(basis.pairs) == 2 * n * n - n
    return basis
