"""Command line entry point: ``quatcalc <subcommand> [options]``.

Exit status is 0 when every check passes, 1 when any check fails and 2 for a
configuration error. With ``--format csv`` the per-trial rows are written to
``--out`` (or stdout) and a JSON summary is written next to them with a
``.json`` suffix; ``--format json`` writes only the summary.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .. import exp_log as E
from ..errors import ConfigInvalid, UnknownStudy
from ..quaternion import Quaternion
from .. import series as S
from .. import su2
from ..sylvester import SylvesterProblem, solve_all
from . import identities as I
from .sweeps import (
    CSV_HEADER,
    STUDIES,
    SweepConfig,
    draw_quaternion,
    draw_series,
    draw_unit,
    fit_loglog,
    fmt,
    run_sweep,
    substream,
)

EXIT_PASS, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2

LIMIT_ORACLE_NS = tuple(2 ** k for k in range(10, 25))


def _parse_scales(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(s) for s in text.split(",") if s.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad scale list {text!r}") from exc


def _parse_range(text: str) -> tuple[float, float]:
    parts = _parse_scales(text)
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("expected LO,HI")
    return parts


def _parse_quaternion(text: str) -> Quaternion:
    try:
        return Quaternion.from_seq(json.loads(text))
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"expected a JSON array [w,x,y,z], got {text!r}") from exc


def _config(args) -> SweepConfig:
    return SweepConfig(seed=args.seed, scales=args.scales, trials_per_scale=args.trials,
                       r_range=args.r_range, degree_cap=args.degree_cap,
                       left_coeffs=getattr(args, "left_coeffs", False))


def _emit(args, csv_text: str, summary: dict) -> None:
    summary_text = json.dumps(summary, sort_keys=True, indent=2) + "\n"
    text = csv_text if args.format == "csv" else summary_text
    if args.out:
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text)
        if args.format == "csv":
            out.with_suffix(".json").write_text(summary_text)
    else:
        sys.stdout.write(text)


def _status(name: str, ok: bool, detail: str) -> None:
    print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}", file=sys.stderr)


def _report_status(rep) -> None:
    _status(rep.study, rep.passed,
            f"slope {rep.fitted_slope:.4f} (expected {rep.expected_slope} +/- {rep.tolerance})")


def _csv_join(*csv_texts: str) -> str:
    body = [line for t in csv_texts for line in t.splitlines()[1:]]
    return "\n".join([CSV_HEADER, *body]) + "\n"


def _identity_block(seed: int, names: set[str]) -> tuple[list[dict], bool]:
    results = I.run_identity_suite(seed, names)
    for r in results:
        _status(r.name, r.passed, f"max residual {r.max_residual:.3e} <= {r.tolerance:.0e}")
    return ([{"identity": r.name, "max_residual": r.max_residual, "tolerance": r.tolerance,
              "pass": r.passed} for r in results],
            all(r.passed for r in results))


def limit_oracle_study(x: Quaternion = Quaternion(0.0, 1.0, 0.0, 0.0),
                       ns=LIMIT_ORACLE_NS) -> dict:
    """Error of (1 + x/n)^n against exp(x) and its fitted slope in n."""
    ref = E.exp(x)
    errors = [(E.exp_limit_oracle(x, n) - ref).norm() / ref.norm() for n in ns]
    slope, intercept = fit_loglog(ns, errors)
    return {"n": list(ns), "error": errors, "slope": slope, "intercept": intercept,
            "expected_slope": -1.0, "tolerance": 0.05, "pass": abs(slope + 1.0) <= 0.05}


def cmd_sylvester(args) -> int:
    p = SylvesterProblem(args.a, args.b, args.c)
    sols = solve_all(p)
    ref = sols["embedding"]
    summary = {
        "forms": {k: v is not None for k, v in sols.items()},
        "solutions": {k: (v.to_list() if v is not None else None) for k, v in sols.items()},
        "x": ref.to_list() if ref is not None else None,
        "residual": p.residual(ref) if ref is not None else None,
    }
    ok = ref is not None and all(
        v is None or (v - ref).norm() <= 1e-10 for v in sols.values())
    summary["pass"] = ok
    print(json.dumps(summary, sort_keys=True))
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_sweep(args) -> int:
    rep = run_sweep(args.study, _config(args))
    _report_status(rep)
    _emit(args, rep.to_csv(), rep.to_dict())
    return EXIT_PASS if rep.passed else EXIT_FAIL


def cmd_exp_check(args) -> int:
    checks, ok = _identity_block(args.seed, {"exp_closed_vs_taylor", "exp_quadrature_oracle",
                                             "exp_conjugation", "exp_general_agreement"})
    limit = limit_oracle_study()
    _status("exp_limit_oracle", limit["pass"], f"slope {limit['slope']:.4f} (expected -1 +/- 0.05)")
    rep = run_sweep("exp-first", _config(args))
    _report_status(rep)
    ok = ok and limit["pass"] and rep.passed
    _emit(args, rep.to_csv(), {"pass": ok, "identities": checks, "limit_oracle": limit,
                               "sweeps": [rep.to_dict()]})
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_log_check(args) -> int:
    checks, ok = _identity_block(args.seed, {"exp_log_coefficient_ties", "log_roundtrip",
                                             "log_general_agreement"})
    rep = run_sweep("log-first", _config(args))
    _report_status(rep)
    ok = ok and rep.passed
    _emit(args, rep.to_csv(), {"pass": ok, "identities": checks, "sweeps": [rep.to_dict()]})
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_expand(args) -> int:
    studies = {"1": ["general-first"], "2": ["general-second"],
               "both": ["general-first", "general-second"]}[args.order]
    reports = [run_sweep(s, _config(args)) for s in studies]
    for rep in reports:
        _report_status(rep)
    ok = all(rep.passed for rep in reports)
    _emit(args, _csv_join(*(rep.to_csv() for rep in reports)),
          {"pass": ok, "sweeps": [rep.to_dict() for rep in reports]})
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_leibnitz(args) -> int:
    """Product rule residuals (scale-relative) for random F, real G, x, delta."""
    cfg = _config(args)
    cfg.validate()
    tolerance = 1e-12
    rows, worst = [], 0.0
    for si, scale in enumerate(cfg.scales):
        for t in range(cfg.trials_per_scale):
            rng = substream(cfg.seed, 200, si, t)
            left = cfg.left_coeffs or bool(t % 2)
            F = draw_series(rng, min(cfg.degree_cap, 6), left_coeffs=left, min_degree=1)
            G = draw_series(rng, min(cfg.degree_cap, 6), min_degree=1)
            x = draw_quaternion(rng, cfg.r_range)
            d = scale * draw_unit(rng)
            res = S.leibnitz_check(F, G, x, d) / I.leibnitz_scale(F, G, x, d)
            worst = max(worst, res)
            rows.append(f"leibnitz,{fmt(scale)},{t},{fmt(res)}")
    ok = worst <= tolerance
    _status("leibnitz", ok, f"max relative residual {worst:.3e} <= {tolerance:.0e}")
    _emit(args, "\n".join([CSV_HEADER, *rows]) + "\n",
          {"study": "leibnitz", "max_residual": worst, "tolerance": tolerance, "pass": ok})
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_su2_check(args) -> int:
    checks, ok = _identity_block(args.seed, {"su2_generator_relations", "su2_rotation_identities",
                                             "su2_split_identities", "su2_quaternion_crosscheck"})
    double_cover = su2.mat_norm(
        su2.matrix_series_eval(S.PowerSeries.exp_series(40), 2 * math.pi * su2.J3) + su2.IDENTITY)
    cover_ok = double_cover <= 1e-10
    _status("su2_double_cover", cover_ok, f"|exp(2 pi J3) + I| = {double_cover:.3e}")
    rep = run_sweep("su2-first", _config(args))
    _report_status(rep)
    ok = ok and cover_ok and rep.passed
    _emit(args, rep.to_csv(), {"pass": ok, "identities": checks, "double_cover": double_cover,
                               "sweeps": [rep.to_dict()]})
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_identity_suite(args) -> int:
    results = I.run_identity_suite(args.seed)
    for r in results:
        _status(r.name, r.passed, f"max residual {r.max_residual:.3e} <= {r.tolerance:.0e}")
    ok = all(r.passed for r in results)
    _emit(args, I.suite_csv(results), json.loads(I.suite_json(results)))
    return EXIT_PASS if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--scales", type=_parse_scales, default=SweepConfig.scales,
                        help="comma-separated, strictly decreasing displacement sizes")
    common.add_argument("--trials", type=int, default=SweepConfig.trials_per_scale)
    common.add_argument("--r-range", type=_parse_range, default=SweepConfig.r_range)
    common.add_argument("--degree-cap", type=int, default=SweepConfig.degree_cap)
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")

    parser = argparse.ArgumentParser(prog="quatcalc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sylvester", parents=[common], help="solve a x + x b = c")
    for name in ("a", "b", "c"):
        p.add_argument(f"--{name}", type=_parse_quaternion, required=True, metavar="[w,x,y,z]")
    p.set_defaults(func=cmd_sylvester)

    p = sub.add_parser("exp-check", parents=[common], help="exponential oracles and sweep")
    p.set_defaults(func=cmd_exp_check)
    p = sub.add_parser("log-check", parents=[common], help="logarithm ties and sweep")
    p.set_defaults(func=cmd_log_check)

    p = sub.add_parser("expand", parents=[common], help="first/second order sweeps")
    p.add_argument("--order", choices=("1", "2", "both"), default="both")
    p.add_argument("--left-coeffs", action="store_true",
                   help="draw quaternion left coefficients instead of real ones")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("leibnitz", parents=[common], help="randomized product rule test")
    p.add_argument("--left-coeffs", action="store_true")
    p.set_defaults(func=cmd_leibnitz)

    p = sub.add_parser("su2-check", parents=[common], help="su(2) identities and sweep")
    p.set_defaults(func=cmd_su2_check)
    p = sub.add_parser("identity-suite", parents=[common], help="every identity check")
    p.set_defaults(func=cmd_identity_suite)

    p = sub.add_parser("sweep", parents=[common], help="one convergence study")
    p.add_argument("--study", required=True, help=", ".join(STUDIES))
    p.add_argument("--left-coeffs", action="store_true")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigInvalid, UnknownStudy) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
