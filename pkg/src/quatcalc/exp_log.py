"""Quaternion exponential and logarithm with their first-order expansions.

Writing ``x = x0 + r u``, the exponential is ``e^x0 (cos r + u sin r)`` and

    exp(x + d) = exp(x) + exp(x) [a d + b [u, d] + c u d u] + O(d^2)

with ``a = (1 + sin2r/2r)/2``, ``b = (cos2r - 1)/(4r)``, ``c = (-1 + sin2r/2r)/2``.
For the logarithm ``y = exp(x)``, with ``w = y^-1 D``,

    log(y + D) = log(y) + A w + B [u, w] + C u w u + O(D^2)

with ``A = (r cot r + 1)/2``, ``B = r/2``, ``C = (r cot r - 1)/2``.

Two oracles for the exponential expansion live here as well: the limit
``(1 + x/n)^n`` and direct quadrature of ``int_0^1 e^{-sx} d e^{sx} ds``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BranchPoint, Overflow, ZeroArgument
from .quaternion import (
    ONE,
    Quaternion,
    commutator,
    inverse,
    mul,
    polar_decompose,
    r_min,
)

EXP_ARG_LIMIT = 700.0
# below this r the coefficient triples switch to their Taylor expansions
SMALL_R = 1e-4


def _sinc2(r: float) -> float:
    """sin(2r)/(2r)."""
    if r < SMALL_R:
        t = (2.0 * r) ** 2
        return 1.0 - t / 6.0 + t * t / 120.0 - t ** 3 / 5040.0
    return math.sin(2.0 * r) / (2.0 * r)


def _cosc2(r: float) -> float:
    """(cos(2r) - 1)/(2r)."""
    if r < SMALL_R:
        s = 2.0 * r
        return -s / 2.0 + s ** 3 / 24.0 - s ** 5 / 720.0 + s ** 7 / 40320.0
    return (math.cos(2.0 * r) - 1.0) / (2.0 * r)


def _rcot(r: float) -> float:
    """r*cot(r)."""
    if r < SMALL_R:
        t = r * r
        return 1.0 - t / 3.0 - t * t / 45.0 - 2.0 * t ** 3 / 945.0
    return r / math.tan(r)


@dataclass(frozen=True, slots=True)
class ExpExpansionCoeffs:
    a: float
    b: float
    c: float
    r: float

    @classmethod
    def at(cls, r: float) -> "ExpExpansionCoeffs":
        s = _sinc2(r)
        return cls(0.5 * (1.0 + s), 0.5 * _cosc2(r), 0.5 * (-1.0 + s), r)


@dataclass(frozen=True, slots=True)
class LogExpansionCoeffs:
    A: float
    B: float
    C: float
    r: float

    @classmethod
    def at(cls, r: float) -> "LogExpansionCoeffs":
        rc = _rcot(r)
        return cls(0.5 * (rc + 1.0), 0.5 * r, 0.5 * (rc - 1.0), r)


def exp(x: Quaternion) -> Quaternion:
    if x.w > EXP_ARG_LIMIT:
        raise Overflow(f"exp overflows for real part {x.w}")
    scale = math.exp(x.w)
    r = x.imag_norm
    # sin(r)/r applied to the vector part avoids needing u at small r
    sinc = math.sin(r) / r if r > 0.0 else 1.0
    k = scale * sinc
    return Quaternion(scale * math.cos(r), k * x.x, k * x.y, k * x.z)


def exp_taylor(x: Quaternion, terms: int = 60) -> Quaternion:
    """Sum of x^n/n! by repeated quaternion multiplication (test oracle)."""
    total = ONE
    term = ONE
    for n in range(1, terms):
        term = mul(term, x) / n
        total = total + term
    return total


def exp_limit_oracle(x: Quaternion, n: int) -> Quaternion:
    """``(1 + x/n)^n`` by binary powering; O(1/n) away from exp(x)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    base = ONE + x / float(n)
    result = ONE
    k = n
    while k:
        if k & 1:
            result = mul(result, base)
        k >>= 1
        if k:
            base = mul(base, base)
    return result


def exp_first_order(x: Quaternion, delta: Quaternion) -> Quaternion:
    """First-order prediction of ``exp(x + delta)``."""
    ex = exp(x)
    r = x.imag_norm
    if r < r_min(x.w):
        return ex + mul(ex, delta)
    u = polar_decompose(x).u
    co = ExpExpansionCoeffs.at(r)
    inner = co.a * delta + co.b * commutator(u, delta) + co.c * mul(mul(u, delta), u)
    return ex + mul(ex, inner)


def gauss_legendre_panels(panels: int, nodes_per_panel: int = 3) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre nodes and weights on [0, 1]."""
    if panels < 1:
        raise ValueError("panels must be positive")
    t, wt = np.polynomial.legendre.leggauss(nodes_per_panel)
    h = 1.0 / panels
    left = np.arange(panels) * h
    nodes = (left[:, None] + 0.5 * h * (t[None, :] + 1.0)).ravel()
    weights = np.tile(0.5 * h * wt, panels)
    return nodes, weights


def exp_integral_oracle(x: Quaternion, delta: Quaternion, panels: int = 64,
                        nodes_per_panel: int = 3) -> Quaternion:
    """First-order prediction via quadrature of the conjugation integral.

    Evaluates ``e^x [1 + int_0^1 e^{-sx} delta e^{sx} ds]``.
    """
    if panels < 8:
        raise ValueError("panels must be at least 8")
    nodes, weights = gauss_legendre_panels(panels, nodes_per_panel)
    acc = Quaternion()
    for s, wgt in zip(nodes.tolist(), weights.tolist()):
        acc = acc + wgt * mul(mul(exp(-s * x), delta), exp(s * x))
    ex = exp(x)
    return ex + mul(ex, acc)


def log(y: Quaternion) -> Quaternion:
    """Principal logarithm; imaginary magnitude of the result lies in [0, pi]."""
    n = y.norm()
    if n == 0.0:
        raise ZeroArgument("log(0)")
    r = y.imag_norm
    if r < r_min(y.w) and y.w < 0.0:
        raise BranchPoint(f"log of negative real {y!r} has no principal direction")
    theta = math.atan2(r, y.w)
    k = theta / r if r > 0.0 else 0.0
    return Quaternion(math.log(n), k * y.x, k * y.y, k * y.z)


def log_first_order(y: Quaternion, Delta: Quaternion) -> Quaternion:
    """First-order prediction of ``log(y + Delta)``.

    ``u`` and ``r`` are those of ``x = log(y)``; the coefficients have a pole
    at r = pi, where BranchPoint is raised.
    """
    x = log(y)
    w = mul(inverse(y), Delta)
    r = x.imag_norm
    if r < r_min(x.w):
        return x + w
    if math.pi - r < r_min(x.w):
        raise BranchPoint(f"log expansion undefined at imaginary magnitude {r!r}")
    u = polar_decompose(x).u
    co = LogExpansionCoeffs.at(r)
    return x + co.A * w + co.B * commutator(u, w) + co.C * mul(mul(u, w), u)
