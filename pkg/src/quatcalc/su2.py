"""First-order calculus for variables built on the su(2) Lie algebra.

Elements ``x = x0 I + x1 J1 + x2 J2 + x3 J3`` are realized as 2x2 complex
matrices with ``Jk = -(i/2) sigma_k``, which gives ``[J1, J2] = J3`` and its
cyclic partners exactly in floating point. With ``r^2 = x1^2 + x2^2 + x3^2``
the displacement splits as

    perp = -[x, [x, d]] / r^2,    parallel = d - perp

and the first-order increment of a real-coefficient series ``F`` is

    F'(x) parallel + (F(x+ir) - F(x-ir))/(2ir) perp
      + (F(x+ir) + F(x-ir) - 2F(x))/(2r) [x, d]/r

so no rotation onto the J3 axis is ever carried out.

Quaternions embed as ``1 -> I, i -> 2 J1, j -> 2 J2, k -> 2 J3``; a quaternion
with imaginary magnitude ``r`` maps to an element with ``r_su2 = 2 r``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import NearScalar
from .quaternion import Quaternion
from .series import PowerSeries

IDENTITY = np.eye(2, dtype=complex)
PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def make_generators() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    return tuple(-0.5j * s for s in PAULI)


J1, J2, J3 = make_generators()


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def mat_norm(m: np.ndarray) -> float:
    return float(np.max(np.abs(m)))


def generator_residual() -> float:
    """Largest entry of [J1,J2]-J3, [J2,J3]-J1, [J3,J1]-J2."""
    return max(mat_norm(commutator(J1, J2) - J3),
               mat_norm(commutator(J2, J3) - J1),
               mat_norm(commutator(J3, J1) - J2))


assert generator_residual() == 0.0, "generator realization violates the Lie algebra"


def r_min(x0: float) -> float:
    return 1e-10 * max(1.0, abs(x0))


@dataclass(frozen=True)
class Su2Element:
    x0: float
    x1: float
    x2: float
    x3: float
    matrix: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        m = (self.x0 * IDENTITY + self.x1 * J1 + self.x2 * J2 + self.x3 * J3)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_matrix(cls, m: np.ndarray) -> "Su2Element":
        """Coordinates of a matrix in span{I, J1, J2, J3} (real parts).

        Uses tr(Jk Jl) = -delta_kl / 2.
        """
        x0 = 0.5 * np.trace(m).real
        xs = [-2.0 * np.trace(j @ m).real for j in (J1, J2, J3)]
        return cls(float(x0), *(float(v) for v in xs))

    @property
    def coords(self) -> tuple[float, float, float, float]:
        return (self.x0, self.x1, self.x2, self.x3)

    @property
    def r(self) -> float:
        return math.hypot(self.x1, self.x2, self.x3)

    def __add__(self, other: "Su2Element") -> "Su2Element":
        return Su2Element(*(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Su2Element") -> "Su2Element":
        return Su2Element(*(a - b for a, b in zip(self.coords, other.coords)))

    def scaled(self, s: float) -> "Su2Element":
        return Su2Element(*(s * a for a in self.coords))


def embed_quaternion(q: Quaternion) -> Su2Element:
    return Su2Element(q.w, 2.0 * q.x, 2.0 * q.y, 2.0 * q.z)


def matrix_to_quaternion(m: np.ndarray) -> Quaternion:
    e = Su2Element.from_matrix(m)
    return Quaternion(e.x0, 0.5 * e.x1, 0.5 * e.x2, 0.5 * e.x3)


def rotation_identity_check(theta: float) -> float:
    """Residual of e^{tJ3} J1 e^{-tJ3} = J1 cos t + J2 sin t and its J2 partner."""
    rot = scipy.linalg.expm(theta * J3)
    rot_inv = scipy.linalg.expm(-theta * J3)
    c, s = math.cos(theta), math.sin(theta)
    r1 = rot @ J1 @ rot_inv - (J1 * c + J2 * s)
    r2 = rot @ J2 @ rot_inv - (J2 * c - J1 * s)
    return max(mat_norm(r1), mat_norm(r2))


@dataclass(frozen=True)
class Su2DeltaSplit:
    parallel: Su2Element
    perp: Su2Element


def split_delta_su2(x: Su2Element, delta: Su2Element) -> Su2DeltaSplit:
    r = x.r
    if r < r_min(x.x0):
        raise NearScalar(f"r = {r:g} below r_min")
    X, D = x.matrix, delta.matrix
    perp = Su2Element.from_matrix(-commutator(X, commutator(X, D)) / (r * r))
    return Su2DeltaSplit(delta - perp, perp)


def matrix_series_eval(F: PowerSeries, m: np.ndarray) -> np.ndarray:
    """Horner evaluation of a real-coefficient series at a 2x2 matrix."""
    coeffs = F.real_coeffs()
    acc = np.zeros((2, 2), dtype=complex)
    for c in reversed(coeffs):
        acc = acc @ m + c * IDENTITY
    return acc


def su2_first_order(F: PowerSeries, x: Su2Element, delta: Su2Element) -> np.ndarray:
    r = x.r
    if r < r_min(x.x0):
        raise NearScalar(f"r = {r:g} below r_min")
    if not F.is_real():
        raise ValueError("su(2) expansion needs a real-coefficient series")
    sp = split_delta_su2(x, delta)
    X = x.matrix
    f0 = matrix_series_eval(F, X)
    fp = matrix_series_eval(F.derivative(), X)
    shift = 1j * r * IDENTITY
    f_plus = matrix_series_eval(F, X + shift)
    f_minus = matrix_series_eval(F, X - shift)
    axis_comm = commutator(X, delta.matrix) / r
    return (fp @ sp.parallel.matrix
            + (f_plus - f_minus) / (2j * r) @ sp.perp.matrix
            + (f_plus + f_minus - 2.0 * f0) / (2.0 * r) @ axis_comm)
