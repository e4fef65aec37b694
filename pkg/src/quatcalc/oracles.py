"""Brute-force reference computations that share no code with the formulas.

Everything here multiplies quaternions out word by word; nothing uses the
complex embedding, the polar form or the parallel/perpendicular split.
"""

from __future__ import annotations

from itertools import product

from .quaternion import ONE, ZERO, Quaternion, mul
from .series import PowerSeries


def power(x: Quaternion, n: int) -> Quaternion:
    acc = ONE
    for _ in range(n):
        acc = mul(acc, x)
    return acc


def eval_direct(F: PowerSeries, x: Quaternion) -> Quaternion:
    """sum c_n x^n with each power built by repeated multiplication."""
    total = ZERO
    for n, c in enumerate(F.coeffs):
        total = total + mul(c, power(x, n))
    return total


def monomial_first_order_words(n: int, x: Quaternion, delta: Quaternion) -> Quaternion:
    """Sum of the n words x^a delta x^b with a + b = n - 1."""
    total = ZERO
    for a in range(n):
        total = total + mul(mul(power(x, a), delta), power(x, n - 1 - a))
    return total


def monomial_second_order_words(n: int, x: Quaternion, delta: Quaternion) -> Quaternion:
    """Sum of the C(n, 2) words x^a delta x^b delta x^c with a + b + c = n - 2."""
    total = ZERO
    if n < 2:
        return total
    for a, b in product(range(n - 1), repeat=2):
        c = n - 2 - a - b
        if c < 0:
            continue
        word = mul(mul(mul(mul(power(x, a), delta), power(x, b)), delta), power(x, c))
        total = total + word
    return total


def series_first_order_words(F: PowerSeries, x: Quaternion, delta: Quaternion) -> Quaternion:
    total = ZERO
    for n, c in enumerate(F.coeffs):
        if n:
            total = total + mul(c, monomial_first_order_words(n, x, delta))
    return total


def series_second_order_words(F: PowerSeries, x: Quaternion, delta: Quaternion) -> Quaternion:
    total = ZERO
    for n, c in enumerate(F.coeffs):
        if n >= 2:
            total = total + mul(c, monomial_second_order_words(n, x, delta))
    return total
