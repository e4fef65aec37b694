"""Functions of a quaternion variable and their expansion operators.

A function is a truncated power series ``F(x) = sum_n c_n x^n`` with
quaternion coefficients multiplying from the left. Because every power of
``x = x0 + r u`` lies in span{1, u}, the series can be evaluated through the
complex number ``z = x0 + i r``::

    x^n = Re(z^n) + Im(z^n) u
    F(x) = sum_n c_n Re(z^n) + (sum_n c_n Im(z^n)) u

and ``F(conj x)`` is the same with ``u -> -u``. The first-order increment of
``F(x + d)`` is

    DF = F'(x) d1 + (F(x) - F(x*)) (x - x*)^-1 d2

where ``d1, d2`` are the parallel and perpendicular parts of ``d`` relative
to ``u`` (see :func:`quatcalc.quaternion.split_delta`).
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import NearRealAxis, NonRealG
from .quaternion import (
    ONE,
    ZERO,
    PolarForm,
    Quaternion,
    commutator,
    inverse,
    max_abs,
    mul,
    polar_decompose,
    split_delta,
)

MAX_DEGREE = 64


def _complex_horner(coeffs: Sequence[float], z: complex) -> tuple[complex, complex, complex]:
    """p(z), p'(z), p''(z) for real coefficients c_0..c_N."""
    p = dp = ddp = 0j
    for c in reversed(coeffs):
        ddp = ddp * z + 2.0 * dp
        dp = dp * z + p
        p = p * z + c
    return p, dp, ddp


@dataclass(frozen=True, slots=True)
class Embedded:
    """A value ``re + im*u`` with ``re`` and ``im`` quaternions, ``u`` left free."""

    re: Quaternion
    im: Quaternion

    def at(self, u: Quaternion) -> Quaternion:
        return self.re + mul(self.im, u)


class PowerSeries:
    """Truncated series ``sum c_n x^n`` with left quaternion coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Quaternion | float]):
        cs = tuple(c if isinstance(c, Quaternion) else Quaternion.real(c) for c in coeffs)
        if not cs:
            cs = (ZERO,)
        if len(cs) - 1 > MAX_DEGREE:
            raise ValueError(f"degree {len(cs) - 1} exceeds cap {MAX_DEGREE}")
        self.coeffs = cs

    @classmethod
    def from_reals(cls, coeffs: Sequence[float]) -> "PowerSeries":
        return cls([Quaternion.real(c) for c in coeffs])

    @classmethod
    def monomial(cls, n: int, coeff: Quaternion = ONE) -> "PowerSeries":
        return cls([ZERO] * n + [coeff])

    @classmethod
    def exp_series(cls, order: int = 30) -> "PowerSeries":
        return cls.from_reals([1.0 / math.factorial(n) for n in range(order + 1)])

    @classmethod
    def from_json(cls, text: str) -> "PowerSeries":
        data = json.loads(text)
        return cls([Quaternion.from_seq(c) for c in data["coeffs"]])

    def to_json(self) -> str:
        return json.dumps({"coeffs": [c.to_list() for c in self.coeffs]})

    def __repr__(self) -> str:
        return f"PowerSeries({list(self.coeffs)!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PowerSeries) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    @property
    def truncation_order(self) -> int:
        return len(self.coeffs) - 1

    def is_real(self) -> bool:
        return all(c.is_real() for c in self.coeffs)

    def real_coeffs(self) -> list[float]:
        if not self.is_real():
            raise ValueError("series has non-real coefficients")
        return [c.w for c in self.coeffs]

    def derivative(self) -> "PowerSeries":
        return PowerSeries([n * c for n, c in enumerate(self.coeffs)][1:])

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (ZERO,) * (n - len(self.coeffs))
        b = other.coeffs + (ZERO,) * (n - len(other.coeffs))
        return PowerSeries([p + q for p, q in zip(a, b)])

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return PowerSeries([c * float(other) for c in self.coeffs])
        if isinstance(other, PowerSeries):
            return self.times(other)
        return NotImplemented

    __rmul__ = __mul__

    def times(self, other: "PowerSeries") -> "PowerSeries":
        """Product series; ``other`` must have real coefficients."""
        if not other.is_real():
            raise NonRealG("right factor of a series product must be real")
        g = other.real_coeffs()
        out = [ZERO] * (len(self.coeffs) + len(g) - 1)
        for n, c in enumerate(self.coeffs):
            for m, gm in enumerate(g):
                out[n + m] = out[n + m] + gm * c
        return PowerSeries(out)

    def abs_bound(self, radius: float, k: int = 0) -> float:
        """sum |c_n| n!/(n-k)! radius^(n-k): a rounding scale for the k-th derivative."""
        total = 0.0
        for n, c in enumerate(self.coeffs):
            if n >= k:
                total += c.norm() * math.perm(n, k) * radius ** (n - k)
        return total

    def horner(self, x: Quaternion) -> Quaternion:
        """Left-coefficient Horner in plain quaternion arithmetic."""
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = mul(acc, x) + c
        return acc

    def jet(self, z: complex) -> tuple[Embedded, Embedded, Embedded]:
        """F, F', F'' at the complex point ``z`` as ``re + im*u`` pairs."""
        parts = [_complex_horner([getattr(c, f) for c in self.coeffs], z)
                 for f in ("w", "x", "y", "z")]
        return tuple(
            Embedded(
                Quaternion(*(p[order].real for p in parts)),
                Quaternion(*(p[order].imag for p in parts)),
            )
            for order in range(3)
        )


class ComplexFunction:
    """A real-symmetric analytic function given by its complex values.

    ``f(conj z) = conj f(z)`` is assumed (real Taylor coefficients), e.g. the
    principal logarithm away from the negative real axis.
    """

    def __init__(self, f: Callable[[complex], complex],
                 df: Callable[[complex], complex],
                 d2f: Callable[[complex], complex]):
        self.f, self.df, self.d2f = f, df, d2f

    def jet(self, z: complex) -> tuple[Embedded, Embedded, Embedded]:
        return tuple(Embedded(Quaternion.real(v.real), Quaternion.real(v.imag))
                     for v in (self.f(z), self.df(z), self.d2f(z)))


PRINCIPAL_LOG = ComplexFunction(cmath.log, lambda z: 1.0 / z, lambda z: -1.0 / (z * z))


def eval(F: PowerSeries, x: Quaternion) -> Quaternion:
    """F(x) via the complex embedding, or plain Horner near the real axis."""
    try:
        pol = polar_decompose(x)
    except NearRealAxis:
        return F.horner(x)
    value = F.jet(complex(pol.x0, pol.r))[0]
    return value.at(pol.u)


@dataclass(frozen=True, slots=True)
class EmbeddedValues:
    F_at_x: Quaternion
    F_at_xstar: Quaternion
    Fprime_at_x: Quaternion
    Fprime_at_xstar: Quaternion
    Fdoubleprime_at_x: Quaternion
    difference_quotient: Quaternion
    polar: PolarForm | None

    @property
    def on_real_axis(self) -> bool:
        return self.polar is None


def eval_embedded(F, x: Quaternion) -> EmbeddedValues:
    """Everything the expansion formulas need, from one pass over the series.

    Below r_min the point is treated as real: ``F(x*) = F(x)`` and the
    difference quotient is replaced by its limit ``F'(x)``.
    """
    try:
        pol = polar_decompose(x)
    except NearRealAxis:
        f, df, ddf = F.jet(complex(x.w, 0.0))
        return EmbeddedValues(f.re, f.re, df.re, df.re, ddf.re, df.re, None)
    f, df, ddf = F.jet(complex(pol.x0, pol.r))
    u, mu = pol.u, -pol.u
    # (F(x) - F(x*)) (x - x*)^-1 = (2 im u)(-u / 2r) = im / r, without the cancellation
    dq = f.im / pol.r
    return EmbeddedValues(f.at(u), f.at(mu), df.at(u), df.at(mu), ddf.at(u), dq, pol)


def general_first_order(F, x: Quaternion, delta: Quaternion) -> Quaternion:
    """First-order increment ``F'(x) d1 + (F(x)-F(x*))(x-x*)^-1 d2``."""
    ev = eval_embedded(F, x)
    if ev.on_real_axis:
        return mul(ev.Fprime_at_x, delta)
    sp = split_delta(delta, ev.polar.u)
    return mul(ev.Fprime_at_x, sp.parallel) + mul(ev.difference_quotient, sp.perp)


def general_first_order_commutator_form(F, x: Quaternion, delta: Quaternion) -> Quaternion:
    """Same increment written with commutators against ``u``:

    ``F' d + (F(x*) - F(x))/(4r) [u, d] + F'/4 [u, [u, d]]``
    """
    ev = eval_embedded(F, x)
    if ev.on_real_axis:
        raise NearRealAxis(f"commutator form needs r >= r_min at {x!r}")
    u, r = ev.polar.u, ev.polar.r
    c1 = commutator(u, delta)
    c2 = commutator(u, c1)
    return (mul(ev.Fprime_at_x, delta)
            + mul(ev.F_at_xstar - ev.F_at_x, c1) / (4.0 * r)
            + 0.25 * mul(ev.Fprime_at_x, c2))


def second_order(F, x: Quaternion, delta: Quaternion) -> Quaternion:
    """Second-order increment, term by term::

        F''/2 d1^2 + (F(x)-F(x*)) (x-x*)^-2 (d2 d1 - d d2)
          + F'(x) (x-x*)^-1 d d2 + F'(x*) (x*-x)^-1 d2 d1
    """
    ev = eval_embedded(F, x)
    if ev.on_real_axis:
        raise NearRealAxis(f"second-order formula needs r >= r_min at {x!r}")
    pol = ev.polar
    sp = split_delta(delta, pol.u)
    d1, d2 = sp.parallel, sp.perp
    inv_gap = inverse(pol.recompose() - pol.conjugate_point())
    d2d1 = mul(d2, d1)
    dd2 = mul(delta, d2)
    return (0.5 * mul(ev.Fdoubleprime_at_x, mul(d1, d1))
            + mul(mul(mul(ev.F_at_x - ev.F_at_xstar, inv_gap), inv_gap), d2d1 - dd2)
            + mul(mul(ev.Fprime_at_x, inv_gap), dd2)
            + mul(mul(ev.Fprime_at_xstar, -inv_gap), d2d1))


def leibnitz_sides(F: PowerSeries, G: PowerSeries, x: Quaternion,
                   delta: Quaternion) -> tuple[Quaternion, Quaternion]:
    """Both sides of the product rule for the first-order operator.

    Left: the operator applied to the product series. Right:
    ``(F G' + F' G) d1 + [F(x)G(x) - F(x*)G(x*)] (x-x*)^-1 d2``.
    """
    if not G.is_real():
        raise NonRealG("G must have real coefficients")
    lhs = general_first_order(F.times(G), x, delta)
    ef, eg = eval_embedded(F, x), eval_embedded(G, x)
    if ef.on_real_axis:
        raise NearRealAxis(f"product rule check needs r >= r_min at {x!r}")
    pol = ef.polar
    sp = split_delta(delta, pol.u)
    gap = pol.recompose() - pol.conjugate_point()
    rhs = (mul(mul(ef.F_at_x, eg.Fprime_at_x) + mul(ef.Fprime_at_x, eg.F_at_x), sp.parallel)
           + mul(mul(mul(ef.F_at_x, eg.F_at_x) - mul(ef.F_at_xstar, eg.F_at_xstar),
                     inverse(gap)), sp.perp))
    return lhs, rhs


def leibnitz_check(F: PowerSeries, G: PowerSeries, x: Quaternion, delta: Quaternion) -> float:
    """Max-component difference between the two sides of the product rule."""
    lhs, rhs = leibnitz_sides(F, G, x, delta)
    return max_abs(lhs - rhs)


def recenter(F, x_f: Quaternion, x: Quaternion, delta: Quaternion) -> Quaternion:
    """First-order increment of a series in ``y = x - x_f``.

    The split uses the unit imaginary of ``y``, not of ``x``.
    """
    y = x - x_f
    polar_decompose(y)  # raises NearRealAxis
    return general_first_order(F, y, delta)
