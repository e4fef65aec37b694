"""Seeded convergence-order studies.

Every truncation claim ``O(d^p)`` is checked by sweeping the displacement
size, taking the median residual per size and fitting a least-squares line in
log-log coordinates; the slope must land within a tolerance of ``p``.

Randomness: numpy's PCG64 bit generator, seeded through ``SeedSequence``
with the entropy list ``[seed, *keys]``. A trial's stream depends only on
``(seed, study key, coefficient mode, trial index)``, never on execution
order. The scale is deliberately not part of the key: trial ``t`` sees the
same function, point and direction at every scale, so the fitted slope
measures the truncation order rather than sampling noise between scales.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..errors import ConfigInvalid, UnknownStudy
from ..exp_log import exp, exp_first_order, log, log_first_order
from ..quaternion import Quaternion
from .. import series as S
from .. import su2

CSV_HEADER = "study,scale,trial,residual"


def fmt(value: float) -> str:
    return f"{value:.17g}"


def substream(seed: int, *keys: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, *keys])))


def draw_quaternion(rng: np.random.Generator, r_range: tuple[float, float]) -> Quaternion:
    """Components uniform in [-1, 1], vector part rescaled to |v| ~ U(r_range)."""
    w, *v = rng.uniform(-1.0, 1.0, 4).tolist()
    target = rng.uniform(*r_range)
    n = math.hypot(*v)
    return Quaternion(w, *(c * target / n for c in v))


def draw_unit(rng: np.random.Generator) -> Quaternion:
    q = Quaternion(*rng.uniform(-1.0, 1.0, 4).tolist())
    return q / q.norm()


def draw_series(rng: np.random.Generator, degree_cap: int, left_coeffs: bool = False,
                min_degree: int = 2) -> S.PowerSeries:
    degree = int(rng.integers(min_degree, degree_cap + 1))
    if left_coeffs:
        return S.PowerSeries([Quaternion(*rng.uniform(-1.0, 1.0, 4).tolist())
                              for _ in range(degree + 1)])
    return S.PowerSeries.from_reals(rng.uniform(-1.0, 1.0, degree + 1).tolist())


def draw_su2(rng: np.random.Generator, r_range: tuple[float, float]) -> su2.Su2Element:
    q = draw_quaternion(rng, r_range)
    return su2.Su2Element(q.w, q.x, q.y, q.z)


@dataclass
class SweepConfig:
    seed: int = 42
    scales: tuple[float, ...] = (1e-1, 1e-2, 1e-3, 1e-4)
    trials_per_scale: int = 50
    r_range: tuple[float, float] = (0.1, 3.0)
    degree_cap: int = 8
    left_coeffs: bool = False

    def validate(self, study: str | None = None) -> None:
        if not 0 <= self.seed < 2 ** 64:
            raise ConfigInvalid("seed must be an unsigned 64-bit integer")
        if len(self.scales) < 2:
            raise ConfigInvalid("at least two scales are needed to fit a slope")
        if any(s <= 0 for s in self.scales):
            raise ConfigInvalid("scales must be positive")
        if any(b >= a for a, b in zip(self.scales, self.scales[1:])):
            raise ConfigInvalid("scales must be strictly decreasing")
        if self.trials_per_scale < 1:
            raise ConfigInvalid("trials_per_scale must be positive")
        lo, hi = self.r_range
        if not 0.0 < lo < hi:
            raise ConfigInvalid("r_range must satisfy 0 < lo < hi")
        if study == "log-first" and hi >= math.pi - 0.05:
            raise ConfigInvalid("log studies need r_range below pi - 0.05")
        if not 2 <= self.degree_cap <= S.MAX_DEGREE:
            raise ConfigInvalid(f"degree_cap must lie in [2, {S.MAX_DEGREE}]")


@dataclass
class ConvergenceReport:
    study: str
    per_scale_median: list[float]
    fitted_slope: float
    fitted_intercept: float
    expected_slope: float
    tolerance: float
    scales: list[float] = field(default_factory=list)
    rows: list[tuple[float, int, float]] = field(default_factory=list, repr=False)

    @property
    def passed(self) -> bool:
        return abs(self.fitted_slope - self.expected_slope) <= self.tolerance

    def to_dict(self) -> dict:
        return {
            "study": self.study,
            "slope": self.fitted_slope,
            "intercept": self.fitted_intercept,
            "expected_slope": self.expected_slope,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "per_scale_median": self.per_scale_median,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_csv(self) -> str:
        lines = [CSV_HEADER]
        lines += [f"{self.study},{fmt(s)},{t},{fmt(r)}" for s, t, r in self.rows]
        return "\n".join(lines) + "\n"


def fit_loglog(scales, values) -> tuple[float, float]:
    """Least-squares slope and intercept of log10(values) against log10(scales)."""
    slope, intercept = np.polyfit(np.log10(scales), np.log10(values), 1)
    return float(slope), float(intercept)


# trial functions: (rng, scale, config) -> residual


def _exp_first(rng, scale, cfg):
    x = draw_quaternion(rng, cfg.r_range)
    d = scale * draw_unit(rng)
    return (exp(x + d) - exp_first_order(x, d)).norm()


def _log_first(rng, scale, cfg):
    y = exp(draw_quaternion(rng, cfg.r_range))
    D = (scale * y.norm()) * draw_unit(rng)
    return (log(y + D) - log_first_order(y, D)).norm()


def _general_first(rng, scale, cfg):
    F = draw_series(rng, cfg.degree_cap, cfg.left_coeffs)
    x = draw_quaternion(rng, cfg.r_range)
    d = scale * draw_unit(rng)
    return (S.eval(F, x + d) - S.eval(F, x) - S.general_first_order(F, x, d)).norm()


def _general_second(rng, scale, cfg):
    F = draw_series(rng, cfg.degree_cap, cfg.left_coeffs)
    x = draw_quaternion(rng, cfg.r_range)
    d = scale * draw_unit(rng)
    inc = S.eval(F, x + d) - S.eval(F, x)
    return (inc - S.general_first_order(F, x, d) - S.second_order(F, x, d)).norm()


def _su2_first(rng, scale, cfg):
    F = draw_series(rng, cfg.degree_cap)
    x = draw_su2(rng, cfg.r_range)
    u = draw_unit(rng)
    d = su2.Su2Element(*(scale * c for c in u))
    res = (su2.matrix_series_eval(F, (x + d).matrix) - su2.matrix_series_eval(F, x.matrix)
           - su2.su2_first_order(F, x, d))
    return su2.mat_norm(res)


@dataclass(frozen=True)
class Study:
    key: int
    expected_slope: float
    tolerance: float
    trial: Callable


STUDIES: dict[str, Study] = {
    "exp-first": Study(1, 2.0, 0.05, _exp_first),
    "log-first": Study(2, 2.0, 0.05, _log_first),
    "general-first": Study(3, 2.0, 0.05, _general_first),
    "general-second": Study(4, 3.0, 0.1, _general_second),
    "su2-first": Study(5, 2.0, 0.05, _su2_first),
}


def run_sweep(study: str, config: SweepConfig | None = None) -> ConvergenceReport:
    if study not in STUDIES:
        raise UnknownStudy(study)
    cfg = config or SweepConfig()
    cfg.validate(study)
    spec = STUDIES[study]
    rows: list[tuple[float, int, float]] = []
    medians: list[float] = []
    for scale in cfg.scales:
        residuals = []
        for t in range(cfg.trials_per_scale):
            rng = substream(cfg.seed, spec.key, int(cfg.left_coeffs), t)
            res = spec.trial(rng, scale, cfg)
            residuals.append(res)
            rows.append((scale, t, res))
        medians.append(float(np.median(residuals)))
    slope, intercept = fit_loglog(cfg.scales, medians)
    return ConvergenceReport(study, medians, slope, intercept, spec.expected_slope,
                             spec.tolerance, list(cfg.scales), rows)
