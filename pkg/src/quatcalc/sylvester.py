"""Solving ``a x + x b = c`` for an unknown quaternion ``x``.

Two closed forms are provided. Left-multiplying by ``a`` and right-multiplying
by ``conj(b)`` and adding gives

    d x = a c + c conj(b),     d = a^2 + a (b + conj(b)) + conj(b) b

and ``d`` commutes with ``a``. The mirror image gives

    x h = conj(a) c + c b,     h = b^2 + (a + conj(a)) b + conj(a) a

with ``h`` commuting with ``b``. Both are checked against a plain 4x4 real
linear solve of the same map (``solve_embedding``).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SingularOperator
from .quaternion import Quaternion, inverse, mul

# condition number above which the embedding is rejected
EMBEDDING_COND_LIMIT = 1e12


@dataclass(frozen=True, slots=True)
class SylvesterProblem:
    a: Quaternion
    b: Quaternion
    c: Quaternion

    def residual(self, x: Quaternion) -> float:
        return (mul(self.a, x) + mul(x, self.b) - self.c).norm()


@dataclass(frozen=True, slots=True)
class SylvesterDenominators:
    d: Quaternion
    h: Quaternion


def singularity_threshold(p: SylvesterProblem) -> float:
    return 1e-10 * (p.a.norm2() + p.b.norm2() + 1.0)


def denominators(p: SylvesterProblem) -> SylvesterDenominators:
    a, b = p.a, p.b
    a_re = a + a.conjugate()   # real
    b_re = b + b.conjugate()   # real
    d = mul(a, a) + mul(a, b_re) + mul(b.conjugate(), b)
    h = mul(b, b) + mul(a_re, b) + mul(a.conjugate(), a)
    return SylvesterDenominators(d, h)


def solve_left_form(p: SylvesterProblem) -> Quaternion:
    d = denominators(p).d
    if d.norm() <= singularity_threshold(p):
        raise SingularOperator(f"|d| = {d.norm():g} for {p!r}")
    rhs = mul(p.a, p.c) + mul(p.c, p.b.conjugate())
    return mul(inverse(d), rhs)


def solve_right_form(p: SylvesterProblem) -> Quaternion:
    h = denominators(p).h
    if h.norm() <= singularity_threshold(p):
        raise SingularOperator(f"|h| = {h.norm():g} for {p!r}")
    rhs = mul(p.a.conjugate(), p.c) + mul(p.c, p.b)
    return mul(rhs, inverse(h))


def left_matrix(q: Quaternion) -> np.ndarray:
    """Real 4x4 matrix of ``v -> q v`` in the basis (1, i, j, k)."""
    w, x, y, z = q
    return np.array([
        [w, -x, -y, -z],
        [x,  w, -z,  y],
        [y,  z,  w, -x],
        [z, -y,  x,  w],
    ])


def right_matrix(q: Quaternion) -> np.ndarray:
    """Real 4x4 matrix of ``v -> v q`` in the basis (1, i, j, k)."""
    w, x, y, z = q
    return np.array([
        [w, -x, -y, -z],
        [x,  w,  z, -y],
        [y, -z,  w,  x],
        [z,  y, -x,  w],
    ])


def embedding_matrix(p: SylvesterProblem) -> np.ndarray:
    return left_matrix(p.a) + right_matrix(p.b)


def solve_embedding(p: SylvesterProblem) -> Quaternion:
    """Reference solve of the 4x4 real system (LU with partial pivoting)."""
    m = embedding_matrix(p)
    if not np.isfinite(m).all() or np.linalg.cond(m) > EMBEDDING_COND_LIMIT:
        raise SingularOperator(f"embedding is singular for {p!r}")
    try:
        sol = np.linalg.solve(m, np.array(p.c.to_list()))
    except np.linalg.LinAlgError as exc:
        raise SingularOperator(str(exc)) from exc
    return Quaternion.from_seq(sol.tolist())


SOLVERS = {
    "left": solve_left_form,
    "right": solve_right_form,
    "embedding": solve_embedding,
}


def solve_all(p: SylvesterProblem) -> dict[str, Quaternion | None]:
    """Run every solver; a singular outcome is recorded as None."""
    out: dict[str, Quaternion | None] = {}
    for name, fn in SOLVERS.items():
        try:
            out[name] = fn(p)
        except SingularOperator:
            out[name] = None
    return out
