"""Randomized residual checks for every algebraic identity in the package.

Each check draws its inputs from a private sub-stream keyed by
``(seed, check index, trial)`` and returns a residual already divided by the
natural rounding scale of the quantities involved, so one tolerance applies
across the whole ensemble.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable

from .. import exp_log as E
from .. import oracles
from .. import series as S
from .. import su2
from ..quaternion import (
    Quaternion,
    mul,
    polar_decompose,
    split_delta,
)
from ..sylvester import (
    SylvesterProblem,
    denominators,
    solve_embedding,
    solve_left_form,
    solve_right_form,
)
from .sweeps import draw_quaternion, draw_series, draw_su2, draw_unit, fmt, substream

R_RANGE = (0.1, 3.0)
CSV_HEADER = "identity,trials,max_residual,tolerance,pass"


def _ulps(a: float, b: float) -> float:
    return abs(a - b) / math.ulp(max(abs(a), abs(b), 1e-300))


def commutation(rng) -> float:
    x = draw_quaternion(rng, R_RANGE)
    d = draw_unit(rng)
    sp = split_delta(d, polar_decompose(x).u)
    r1 = (mul(sp.parallel, x) - mul(x, sp.parallel)).norm()
    r2 = (mul(sp.perp, x) - mul(x.conjugate(), sp.perp)).norm()
    return max(r1, r2) / (x.norm() * d.norm())


def split_projector(rng) -> float:
    x = draw_quaternion(rng, R_RANGE)
    d = draw_unit(rng)
    u = polar_decompose(x).u
    sp = split_delta(d, u)
    again_par = split_delta(sp.parallel, u)
    again_perp = split_delta(sp.perp, u)
    return max((sp.parallel + sp.perp - d).norm(),
               again_par.perp.norm(), (again_par.parallel - sp.parallel).norm(),
               again_perp.parallel.norm(), (again_perp.perp - sp.perp).norm()) / d.norm()


def polar_roundtrip(rng) -> float:
    """In ulps, per component."""
    q = Quaternion(*rng.uniform(-1.0, 1.0, 4).tolist()) * float(10.0 ** rng.uniform(-3, 3))
    back = polar_decompose(q).recompose()
    return max(_ulps(a, b) for a, b in zip(q, back))


def norm_multiplicative(rng) -> float:
    """In ulps of the product norm."""
    a = Quaternion(*rng.uniform(-1.0, 1.0, 4).tolist())
    b = Quaternion(*rng.uniform(-1.0, 1.0, 4).tolist())
    return _ulps(mul(a, b).norm(), a.norm() * b.norm())


def _first_order_scale(F, x, d) -> float:
    return d.norm() * F.abs_bound(x.norm(), 1)


def form_equivalence(rng) -> float:
    F = draw_series(rng, 8, left_coeffs=bool(rng.integers(2)))
    x = draw_quaternion(rng, R_RANGE)
    d = draw_unit(rng)
    diff = S.general_first_order(F, x, d) - S.general_first_order_commutator_form(F, x, d)
    return diff.norm() / _first_order_scale(F, x, d)


def monomial_words(rng) -> float:
    n = int(rng.integers(1, 11))
    x = draw_quaternion(rng, R_RANGE)
    d = draw_unit(rng)
    F = S.PowerSeries.monomial(n)
    diff = S.general_first_order(F, x, d) - oracles.monomial_first_order_words(n, x, d)
    return diff.norm() / _first_order_scale(F, x, d)


def second_order_words(rng) -> float:
    n = int(rng.integers(2, 11))
    x = draw_quaternion(rng, R_RANGE)
    d = draw_unit(rng)
    F = S.PowerSeries.monomial(n)
    diff = S.second_order(F, x, d) - oracles.monomial_second_order_words(n, x, d)
    return diff.norm() / (d.norm() ** 2 * F.abs_bound(x.norm(), 2))


def polynomial_exactness(rng) -> float:
    F = draw_series(rng, 2, left_coeffs=bool(rng.integers(2)), min_degree=0)
    x = draw_quaternion(rng, R_RANGE)
    d = draw_unit(rng) * float(rng.uniform(0.1, 2.0))
    pred = S.eval(F, x) + S.general_first_order(F, x, d) + S.second_order(F, x, d)
    return (pred - S.eval(F, x + d)).norm() / F.abs_bound(x.norm() + d.norm())


def linearity(rng) -> float:
    F = draw_series(rng, 8, left_coeffs=True)
    G = draw_series(rng, 8, left_coeffs=True)
    alpha = float(rng.uniform(-2, 2))
    x = draw_quaternion(rng, R_RANGE)
    d = draw_unit(rng)
    lhs = S.general_first_order(alpha * F + G, x, d)
    rhs = alpha * S.general_first_order(F, x, d) + S.general_first_order(G, x, d)
    scale = abs(alpha) * _first_order_scale(F, x, d) + _first_order_scale(G, x, d)
    return (lhs - rhs).norm() / scale


def leibnitz_scale(F, G, x, d) -> float:
    rad = x.norm()
    return d.norm() * (F.abs_bound(rad) * G.abs_bound(rad, 1)
                       + F.abs_bound(rad, 1) * G.abs_bound(rad))


def leibnitz(rng) -> float:
    F = draw_series(rng, 6, left_coeffs=bool(rng.integers(2)), min_degree=1)
    G = draw_series(rng, 6, min_degree=1)
    x = draw_quaternion(rng, R_RANGE)
    d = draw_unit(rng)
    return S.leibnitz_check(F, G, x, d) / leibnitz_scale(F, G, x, d)


def sylvester_problem(rng) -> SylvesterProblem:
    while True:
        a, b, c = (Quaternion(*rng.uniform(-2.0, 2.0, 4).tolist()) for _ in range(3))
        p = SylvesterProblem(a, b, c)
        if denominators(p).d.norm() >= 1e-6:
            return p


def sylvester_residual(rng) -> float:
    p = sylvester_problem(rng)
    worst = 0.0
    for solve in (solve_left_form, solve_right_form, solve_embedding):
        x = solve(p)
        scale = (p.a.norm() + p.b.norm()) * x.norm() + p.c.norm()
        worst = max(worst, p.residual(x) / scale)
    return worst


def sylvester_oracle(rng) -> float:
    p = sylvester_problem(rng)
    ref = solve_embedding(p)
    left, right = solve_left_form(p), solve_right_form(p)
    return max((left - ref).norm(), (right - ref).norm(), (left - right).norm())


def commutes_with_denominators(rng) -> float:
    p = sylvester_problem(rng)
    den = denominators(p)
    ra = (mul(p.a, den.d) - mul(den.d, p.a)).norm() / (p.a.norm() * den.d.norm())
    rb = (mul(p.b, den.h) - mul(den.h, p.b)).norm() / (p.b.norm() * den.h.norm())
    return max(ra, rb)


def coefficient_ties(rng) -> float:
    r = float(rng.uniform(0.01, 3.0))
    e = E.ExpExpansionCoeffs.at(r)
    g = E.LogExpansionCoeffs.at(r)
    return max(abs(e.a - e.c - 1.0), abs(e.a + e.c - math.sin(2 * r) / (2 * r)),
               abs(g.A - g.C - 1.0), abs(g.B - r / 2.0),
               abs(g.A + g.C - r / math.tan(r)) / max(1.0, abs(r / math.tan(r))))


def exp_taylor(rng) -> float:
    x = draw_unit(rng) * float(rng.uniform(0.0, 3.0))
    ref = E.exp_taylor(x)
    return (E.exp(x) - ref).norm() / ref.norm()


def exp_conjugation(rng) -> float:
    x = draw_quaternion(rng, R_RANGE)
    ex = E.exp(x)
    return (E.exp(x.conjugate()) - ex.conjugate()).norm() / ex.norm()


def exp_quadrature(rng) -> float:
    x = draw_quaternion(rng, R_RANGE)
    d = draw_unit(rng)
    ex = E.exp(x)
    return (E.exp_integral_oracle(x, d, 64) - E.exp_first_order(x, d)).norm() / ex.norm()


def exp_general_agreement(rng) -> float:
    x = draw_quaternion(rng, R_RANGE)
    d = draw_unit(rng)
    ex = E.exp(x)
    direct = E.exp_first_order(x, d) - ex
    via_series = S.general_first_order(S.PowerSeries.exp_series(40), x, d)
    return (direct - via_series).norm() / ex.norm()


def log_roundtrip(rng) -> float:
    x = draw_quaternion(rng, (1e-3, math.pi - 1e-3))
    y = E.exp(x) * float(10.0 ** rng.uniform(-3, 3))
    return (E.exp(E.log(y)) - y).norm() / y.norm()


def log_general_agreement(rng) -> float:
    y = E.exp(draw_quaternion(rng, (0.1, 3.0)))
    D = draw_unit(rng) * y.norm()
    direct = E.log_first_order(y, D) - E.log(y)
    via_general = S.general_first_order(S.PRINCIPAL_LOG, y, D)
    return (direct - via_general).norm() / max(1.0, direct.norm())


def su2_generators(rng) -> float:
    return su2.generator_residual()


def su2_rotation(rng) -> float:
    return su2.rotation_identity_check(float(rng.uniform(-10.0, 10.0)))


def su2_split(rng) -> float:
    x = draw_su2(rng, R_RANGE)
    d = su2.Su2Element(*draw_unit(rng))
    sp = su2.split_delta_su2(x, d)
    X, r = x.matrix, x.r
    scale = max(1.0, su2.mat_norm(X)) ** 2 * su2.mat_norm(d.matrix)
    proj = -su2.commutator(X, su2.commutator(X, sp.perp.matrix)) / (r * r)
    return max(su2.mat_norm(sp.parallel.matrix + sp.perp.matrix - d.matrix),
               su2.mat_norm(su2.commutator(X, sp.parallel.matrix)),
               su2.mat_norm(proj - sp.perp.matrix),
               su2.mat_norm(su2.commutator(X, d.matrix) / r
                            - su2.commutator(X - x.x0 * su2.IDENTITY, sp.perp.matrix) / r)) / scale


def su2_quaternion_crosscheck(rng) -> float:
    F = draw_series(rng, 8)
    x = draw_quaternion(rng, R_RANGE)
    d = draw_unit(rng)
    via_su2 = su2.matrix_to_quaternion(
        su2.su2_first_order(F, su2.embed_quaternion(x), su2.embed_quaternion(d)))
    return (via_su2 - S.general_first_order(F, x, d)).norm() / _first_order_scale(F, x, d)


@dataclass(frozen=True)
class Identity:
    name: str
    check: Callable
    tolerance: float
    trials: int = 1000


# order is part of the seeding contract; append new checks at the end
IDENTITIES: tuple[Identity, ...] = (
    Identity("commutation_relations", commutation, 1e-13),
    Identity("split_projector", split_projector, 1e-13),
    Identity("polar_roundtrip_ulps", polar_roundtrip, 4.0),
    Identity("norm_multiplicative_ulps", norm_multiplicative, 8.0),
    Identity("first_order_form_equivalence", form_equivalence, 1e-13),
    Identity("monomial_first_order_words", monomial_words, 1e-12, 300),
    Identity("monomial_second_order_words", second_order_words, 1e-12, 300),
    Identity("second_order_polynomial_exactness", polynomial_exactness, 1e-13),
    Identity("first_order_linearity", linearity, 1e-13),
    Identity("leibnitz_rule", leibnitz, 1e-12),
    Identity("sylvester_residual", sylvester_residual, 1e-11),
    Identity("sylvester_oracle_agreement", sylvester_oracle, 1e-10),
    Identity("sylvester_denominator_commutation", commutes_with_denominators, 1e-13),
    Identity("exp_log_coefficient_ties", coefficient_ties, 1e-14, 100),
    Identity("exp_closed_vs_taylor", exp_taylor, 1e-13),
    Identity("exp_conjugation", exp_conjugation, 1e-15),
    Identity("exp_quadrature_oracle", exp_quadrature, 1e-10, 200),
    Identity("exp_general_agreement", exp_general_agreement, 1e-12),
    Identity("log_roundtrip", log_roundtrip, 1e-12),
    Identity("log_general_agreement", log_general_agreement, 1e-12),
    Identity("su2_generator_relations", su2_generators, 0.0, 1),
    Identity("su2_rotation_identities", su2_rotation, 1e-13),
    Identity("su2_split_identities", su2_split, 1e-13),
    Identity("su2_quaternion_crosscheck", su2_quaternion_crosscheck, 1e-12),
)


@dataclass
class IdentityResult:
    name: str
    trials: int
    max_residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tolerance


def run_identity(ident: Identity, seed: int, index: int) -> IdentityResult:
    worst = 0.0
    for t in range(ident.trials):
        worst = max(worst, float(ident.check(substream(seed, 100 + index, t))))
    return IdentityResult(ident.name, ident.trials, worst, ident.tolerance)


def run_identity_suite(seed: int = 42, only: set[str] | None = None) -> list[IdentityResult]:
    return [run_identity(ident, seed, i) for i, ident in enumerate(IDENTITIES)
            if only is None or ident.name in only]


def suite_csv(results: list[IdentityResult]) -> str:
    lines = [CSV_HEADER]
    lines += [f"{r.name},{r.trials},{fmt(r.max_residual)},{fmt(r.tolerance)},{str(r.passed).lower()}"
              for r in results]
    return "\n".join(lines) + "\n"


def suite_json(results: list[IdentityResult]) -> str:
    return json.dumps({
        "pass": all(r.passed for r in results),
        "identities": [{"identity": r.name, "trials": r.trials, "max_residual": r.max_residual,
                        "tolerance": r.tolerance, "pass": r.passed} for r in results],
    }, sort_keys=True)
