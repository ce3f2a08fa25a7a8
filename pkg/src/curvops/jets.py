"""Order-2 truncated Taylor (jet) arithmetic in one variable.

Used to obtain exact-to-rounding first and second derivatives of warp
profiles and blend curves without numerical differentiation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class Jet2:
    """Value `f` together with df/dr and d2f/dr2 at one radius."""

    f: float
    f1: float = 0.0
    f2: float = 0.0

    @staticmethod
    def variable(x: float) -> "Jet2":
        return Jet2(float(x), 1.0, 0.0)

    @staticmethod
    def const(a: float) -> "Jet2":
        return Jet2(float(a), 0.0, 0.0)

    @staticmethod
    def _coerce(other) -> "Jet2":
        if isinstance(other, Jet2):
            return other
        if isinstance(other, (int, float)):
            return Jet2.const(other)
        return NotImplemented

    def __add__(self, other):
        o = Jet2._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Jet2(self.f + o.f, self.f1 + o.f1, self.f2 + o.f2)

    __radd__ = __add__

    def __neg__(self):
        return Jet2(-self.f, -self.f1, -self.f2)

    def __sub__(self, other):
        o = Jet2._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Jet2(self.f - o.f, self.f1 - o.f1, self.f2 - o.f2)

    def __rsub__(self, other):
        o = Jet2._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = Jet2._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Jet2(
            self.f * o.f,
            self.f1 * o.f + self.f * o.f1,
            self.f2 * o.f + 2.0 * self.f1 * o.f1 + self.f * o.f2,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = Jet2._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.f == 0.0:
            raise ZeroDivisionError("jet division by a value vanishing at the base point")
        q = self.f / o.f
        q1 = (self.f1 - q * o.f1) / o.f
        q2 = (self.f2 - 2.0 * q1 * o.f1 - q * o.f2) / o.f
        return Jet2(q, q1, q2)

    def __rtruediv__(self, other):
        o = Jet2._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self


def jcosh(u: Jet2) -> Jet2:
    c, s = math.cosh(u.f), math.sinh(u.f)
    return Jet2(c, s * u.f1, s * u.f2 + c * (u.f1 * u.f1))


def jsinh(u: Jet2) -> Jet2:
    c, s = math.cosh(u.f), math.sinh(u.f)
    return Jet2(s, c * u.f1, c * u.f2 + s * (u.f1 * u.f1))


def jexp(u: Jet2) -> Jet2:
    e = math.exp(u.f)
    return Jet2(e, e * u.f1, e * u.f2 + e * (u.f1 * u.f1))
