"""Quaternion arithmetic, polar form and the parallel/perpendicular split.

Multiplication uses Hamilton's convention everywhere in the package::

    i*i = j*j = k*k = -1,   i*j = k,   j*k = i,   k*i = j

Every result in the package is independent of this choice, but it is fixed
here and checked by a table test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidUnitImaginary, NearRealAxis, ZeroDivisor

# norm below this is treated as zero by inverse()
ZERO_NORM_FLOOR = 1e-300


def r_min(x0: float) -> float:
    """Smallest imaginary magnitude for which a unit imaginary is trusted."""
    return 1e-12 * max(1.0, abs(x0))


@dataclass(frozen=True, slots=True)
class Quaternion:
    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    @classmethod
    def from_seq(cls, seq: Sequence[float]) -> "Quaternion":
        if len(seq) != 4:
            raise ValueError(f"expected 4 components, got {len(seq)}")
        return cls(*(float(c) for c in seq))

    @classmethod
    def real(cls, value: float) -> "Quaternion":
        return cls(float(value), 0.0, 0.0, 0.0)

    def to_list(self) -> list[float]:
        return [self.w, self.x, self.y, self.z]

    def __iter__(self):
        return iter((self.w, self.x, self.y, self.z))

    def __repr__(self) -> str:
        return f"Quaternion({self.w!r}, {self.x!r}, {self.y!r}, {self.z!r})"

    # arithmetic

    def __add__(self, other):
        if isinstance(other, Quaternion):
            return Quaternion(self.w + other.w, self.x + other.x,
                              self.y + other.y, self.z + other.z)
        if isinstance(other, (int, float)):
            return Quaternion(self.w + other, self.x, self.y, self.z)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Quaternion):
            return Quaternion(self.w - other.w, self.x - other.x,
                              self.y - other.y, self.z - other.z)
        if isinstance(other, (int, float)):
            return Quaternion(self.w - other, self.x, self.y, self.z)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(other - self.w, -self.x, -self.y, -self.z)
        return NotImplemented

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            return mul(self, other)
        if isinstance(other, (int, float)):
            return Quaternion(self.w * other, self.x * other,
                              self.y * other, self.z * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(other * self.w, other * self.x,
                              other * self.y, other * self.z)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            return Quaternion(self.w / other, self.x / other,
                              self.y / other, self.z / other)
        return NotImplemented

    # properties

    @property
    def scalar(self) -> float:
        return self.w

    @property
    def vector(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)

    @property
    def imag_norm(self) -> float:
        return math.hypot(self.x, self.y, self.z)

    def norm(self) -> float:
        return math.hypot(self.w, self.x, self.y, self.z)

    def norm2(self) -> float:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def inverse(self) -> "Quaternion":
        return inverse(self)

    def is_real(self) -> bool:
        return self.x == 0.0 and self.y == 0.0 and self.z == 0.0


ZERO = Quaternion(0.0, 0.0, 0.0, 0.0)
ONE = Quaternion(1.0, 0.0, 0.0, 0.0)
I = Quaternion(0.0, 1.0, 0.0, 0.0)
J = Quaternion(0.0, 0.0, 1.0, 0.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def mul(a: Quaternion, b: Quaternion) -> Quaternion:
    """Hamilton product ``a*b``."""
    return Quaternion(
        a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
        a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
        a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
        a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
    )


def conjugate(q: Quaternion) -> Quaternion:
    return q.conjugate()


def inverse(q: Quaternion) -> Quaternion:
    n2 = q.norm2()
    if q.norm() < ZERO_NORM_FLOOR or n2 == 0.0:
        raise ZeroDivisor(f"cannot invert {q!r}")
    return Quaternion(q.w / n2, -q.x / n2, -q.y / n2, -q.z / n2)


def commutator(a: Quaternion, b: Quaternion) -> Quaternion:
    return mul(a, b) - mul(b, a)


def max_abs(q: Quaternion) -> float:
    return max(abs(q.w), abs(q.x), abs(q.y), abs(q.z))


def qsum(items: Iterable[Quaternion]) -> Quaternion:
    total = ZERO
    for q in items:
        total = total + q
    return total


@dataclass(frozen=True, slots=True)
class PolarForm:
    """``x = x0 + r*u`` with ``u`` a unit pure imaginary."""

    x0: float
    r: float
    u: Quaternion

    def recompose(self) -> Quaternion:
        return Quaternion(self.x0, self.r * self.u.x, self.r * self.u.y, self.r * self.u.z)

    def conjugate_point(self) -> Quaternion:
        return Quaternion(self.x0, -self.r * self.u.x, -self.r * self.u.y, -self.r * self.u.z)


def polar_decompose(q: Quaternion) -> PolarForm:
    """Split ``q`` into real part, imaginary magnitude and unit imaginary.

    Raises NearRealAxis when the imaginary magnitude is below ``r_min(q.w)``;
    the direction is then meaningless and callers take their real-limit path.
    """
    r = q.imag_norm
    if r < r_min(q.w):
        raise NearRealAxis(f"imaginary magnitude {r:g} below r_min for {q!r}")
    u = Quaternion(0.0, q.x / r, q.y / r, q.z / r)
    return PolarForm(q.w, r, u)


@dataclass(frozen=True, slots=True)
class DeltaSplit:
    parallel: Quaternion
    perp: Quaternion
    reference_u: Quaternion


def check_unit_imaginary(u: Quaternion, tol: float = 1e-12) -> None:
    sq = mul(u, u)
    if max_abs(sq + ONE) > tol:
        raise InvalidUnitImaginary(f"{u!r} squares to {sq!r}, not -1")


def split_delta(delta: Quaternion, u: Quaternion) -> DeltaSplit:
    """Split a displacement into the part commuting with ``u`` and the rest.

    ``parallel = (delta - u delta u)/2`` lies in span{1, u} and commutes with
    any x = x0 + r u; ``perp = (delta + u delta u)/2`` satisfies
    ``perp * x = conj(x) * perp``.
    """
    check_unit_imaginary(u)
    udu = mul(mul(u, delta), u)
    parallel = 0.5 * (delta - udu)
    perp = 0.5 * (delta + udu)
    return DeltaSplit(parallel, perp, u)
