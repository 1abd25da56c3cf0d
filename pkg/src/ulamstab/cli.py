"""Command-line surface: classify, simulate, witness, verify, bound.

Exit codes: 0 success/pass, 1 usage or input error, 2 domain refusal
(boundary multiplier, wrong stability class, unsupported period), 3 suite
or certificate failure. Outputs are byte-identical across runs for a fixed
config and seed.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import boundedness, plotting, verify
from .config import ProblemConfig, load_config
from .cycle import on_hilger_circle
from .errors import (
    BoundaryMultiplierError,
    CertificateViolatedError,
    ConfigError,
    EmptyCycleError,
    ExponentialRangeError,
    InsufficientSamplesError,
    LengthMismatchError,
    NonFiniteValueError,
    NonPositiveStepError,
    NotContractingError,
    NotExpandingError,
    NotOnBoundaryError,
    PerturbationBoundViolatedError,
    SingularCoefficientError,
    StepSizeMismatchError,
    TooShortError,
    TrajectoryOverflowError,
    UnsupportedPeriodError,
)
from .serialize import dumps_container, read_grid_function_csv, write_container, write_trajectory_csv
from .simulate import PerturbationSpec, limit_estimate, residual, solve_forced
from .stability import StabilityClass, ulam_constant
from .witness import instability_witness, sharpness_witness

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_DOMAIN = 2
EXIT_SUITE = 3

_INPUT_ERRORS = (
    ConfigError,
    NonPositiveStepError,
    EmptyCycleError,
    SingularCoefficientError,
    NonFiniteValueError,
    LengthMismatchError,
    StepSizeMismatchError,
    TooShortError,
    InsufficientSamplesError,
    ValueError,
)
_DOMAIN_ERRORS = (
    BoundaryMultiplierError,
    NotExpandingError,
    NotContractingError,
    NotOnBoundaryError,
    UnsupportedPeriodError,
    ExponentialRangeError,
    TrajectoryOverflowError,
)
_SUITE_ERRORS = (CertificateViolatedError, PerturbationBoundViolatedError)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _parse_complex(text: str) -> complex:
    parts = text.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise ConfigError(f"expected re or re,im, got {text!r}")


def _classification_payload(cfg: ProblemConfig, cycle, report) -> dict:
    return {
        "class": report.stability_class.value,
        "rho": report.rho,
        "sums": list(report.sums),
        "K": report.K,
        "argmax_residue": report.argmax_residue,
        "is_minimum_constant": report.is_minimum_constant,
        "minimality_warning": report.minimality_warning,
        "near_singular_warning": report.near_singular_warning,
        "classification_tol": report.classification_tol,
        "h": cycle.h,
        "n": cycle.n,
        "hilger_flags": [
            on_hilger_circle(p, cycle.h, cfg.classification_tol)
            for p in cycle.coefficients
        ],
    }


def cmd_classify(args) -> int:
    cfg = load_config(args.config)
    cycle = cfg.cycle()
    report = ulam_constant(cycle, cfg.classification_tol)
    payload = _classification_payload(cfg, cycle, report)
    sys.stdout.write(dumps_container(payload))
    if args.plot:
        plotting.save_classification_figure(args.plot, cycle, report)
    if report.stability_class is StabilityClass.NOT_ULAM_STABLE:
        return EXIT_DOMAIN
    return EXIT_OK


def _forcing_spec(cfg: ProblemConfig, text: str) -> PerturbationSpec:
    if text == "zero":
        return PerturbationSpec.zero(cfg.epsilon)
    if text == "const":
        return PerturbationSpec.constant(cfg.epsilon)
    if text == "phase":
        return PerturbationSpec.phase_aligned(cfg.epsilon)
    if text == "random":
        return PerturbationSpec.random_bounded(cfg.epsilon, cfg.seed)
    if text.startswith("file="):
        values = read_grid_function_csv(text[5:], cfg.h)
        try:
            return PerturbationSpec.from_values(cfg.epsilon, values)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
    raise ConfigError(f"unknown forcing source {text!r}")


def cmd_simulate(args) -> int:
    cfg = load_config(args.config)
    cycle = cfg.cycle()
    steps = args.steps if args.steps is not None else cfg.horizon_periods * cycle.n
    if steps < 1:
        raise ConfigError("steps must be positive")
    spec = _forcing_spec(cfg, args.q)
    q = spec.realize(cycle, steps)
    traj = solve_forced(cycle, args.phi0, q, steps)
    write_trajectory_csv(args.out, traj)
    resid = residual(cycle, traj)
    summary = {
        "steps": steps,
        "h": cycle.h,
        "forcing": args.q,
        "max_residual_magnitude": float(np.max(resid.magnitudes())),
        "final_magnitude": float(abs(traj.values[-1])),
        "trajectory_file": str(args.out),
    }
    report = ulam_constant(cycle, cfg.classification_tol)
    if report.stability_class is StabilityClass.EXPANDING and report.K is not None:
        try:
            est = limit_estimate(cycle, args.phi0, q, classification_tol=cfg.classification_tol)
        except InsufficientSamplesError:
            pass
        else:
            from .exponential import ep_values

            diffs = np.abs(traj.values - est.value * ep_values(cycle, steps))
            summary["sup_tracking_error"] = float(diffs.max())
            summary["tracking_bound"] = report.K * max(
                float(np.max(q.magnitudes())), est.epsilon_estimate
            )
    if args.plot:
        fig_path = Path(args.out).with_suffix(".png")
        plotting.save_trajectory_figure(fig_path, traj, resid.magnitudes())
        summary["figure_file"] = str(fig_path)
    sys.stdout.write(dumps_container(summary))
    return EXIT_OK


def cmd_witness(args) -> int:
    cfg = load_config(args.config)
    cycle = cfg.cycle()
    periods = args.periods if args.periods is not None else cfg.horizon_periods
    if args.mode == "sharpness":
        report = sharpness_witness(cycle, cfg.epsilon, periods, cfg.classification_tol)
    else:
        report = instability_witness(
            cycle, cfg.epsilon, periods * cycle.n, cfg.classification_tol
        )
    traj_path = Path(args.out).with_suffix(".trajectory.csv")
    write_trajectory_csv(traj_path, report.phi)
    payload = {
        "mode": report.kind,
        "epsilon": report.epsilon,
        "achieved_sup": report.achieved_sup,
        "target": report.target,
        "remainder": report.remainder_bound,
        "residue_profile": list(report.residue_profile),
        "trajectory_file": str(traj_path),
    }
    if report.kind == "instability":
        payload["ell"] = report.ell
        payload["probe_constants"] = list(report.probe_constants)
        payload["growth_step_counts"] = list(report.growth_step_counts)
        payload["growth_min_sups"] = list(report.growth_min_sups)
    write_container(args.out, payload)
    sys.stdout.write(dumps_container(payload))
    if args.plot:
        fig_path = Path(args.out).with_suffix(".png")
        plotting.save_witness_figure(fig_path, report)
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = load_config(args.config)
    cycle = cfg.cycle()
    if args.suite == "sharpness":
        report = verify.sharpness_suite(
            args.trials,
            cfg.seed,
            epsilon=cfg.epsilon,
            include=cycle,
            classification_tol=cfg.classification_tol,
        )
    elif args.suite == "contracting":
        report = verify.contracting_suite(
            cycle,
            args.trials,
            cfg.seed,
            epsilon=cfg.epsilon,
            classification_tol=cfg.classification_tol,
        )
    else:
        report = verify.uniqueness_suite(
            cycle,
            args.trials,
            cfg.seed,
            epsilon=cfg.epsilon,
            classification_tol=cfg.classification_tol,
        )
    sys.stdout.write(dumps_container(report))
    return EXIT_OK if report.passed else EXIT_SUITE


def cmd_bound(args) -> int:
    cfg = load_config(args.config)
    cycle = cfg.cycle()
    alphas = [float(a) for a in args.alpha.split(",") if a]
    if not alphas:
        raise ConfigError("at least one alpha is required")
    certs = [
        boundedness.certificate(cycle, args.L, args.delta, a, cfg.classification_tol)
        for a in alphas
    ]
    verifications = []
    for family in boundedness.BUILTIN_FAMILIES:
        verifications.append(
            boundedness.verify_boundedness(
                cycle,
                boundedness.bounded_perturbation(family, args.L),
                args.L,
                args.delta,
                alphas,
                args.trials,
                cfg.seed,
                classification_tol=cfg.classification_tol,
                family=family,
                collect_envelopes=bool(args.plot),
            )
        )
    payload = {
        "L": args.L,
        "delta": args.delta,
        "K0": certs[0].K0,
        "B": certs[0].B,
        "maxfac": certs[0].maxfac,
        "alphas": [{"alpha": c.alpha, "T_alpha": c.T_alpha} for c in certs],
        "verification": [
            {
                "family": v.family,
                "rows": [
                    {
                        "alpha": r.alpha,
                        "T_alpha": r.T_alpha,
                        "B": r.B,
                        "max_observed": r.max_observed,
                        "margin": r.margin,
                        "trials": r.trials,
                    }
                    for r in v.rows
                ],
            }
            for v in verifications
        ],
    }
    sys.stdout.write(dumps_container(payload))
    if args.plot:
        plotting.save_boundedness_figure(args.plot, verifications)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="ulamstab",
        description=(
            "Stability classification, simulation, worst-case witnesses and "
            "boundedness certificates for first-order linear h-difference "
            "equations with periodic complex coefficients."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="stability class and Ulam constant")
    p.add_argument("config")
    p.add_argument("--plot", metavar="PATH", help="write a figure to PATH")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("simulate", help="forced simulation to a trajectory file")
    p.add_argument("config")
    p.add_argument(
        "--q",
        default="zero",
        metavar="{zero|const|phase|random|file=PATH}",
        help="forcing source (default zero)",
    )
    p.add_argument("--phi0", type=_parse_complex, default=complex(1.0, 0.0), metavar="RE,IM")
    p.add_argument("--steps", type=int, default=None)
    p.add_argument("--out", required=True, metavar="PATH")
    p.add_argument("--plot", action="store_true", help="render a figure next to --out")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("witness", help="instability or sharpness witness report")
    p.add_argument("config")
    p.add_argument("--mode", choices=("instability", "sharpness"), required=True)
    p.add_argument("--periods", type=int, default=None)
    p.add_argument("--out", required=True, metavar="PATH")
    p.add_argument("--plot", action="store_true", help="render a figure next to --out")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("verify", help="run a property suite")
    p.add_argument("config")
    p.add_argument("--suite", choices=("sharpness", "contracting", "uniqueness"), required=True)
    p.add_argument("--trials", type=int, default=20)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bound", help="ultimate-boundedness certificate and check")
    p.add_argument("config")
    p.add_argument("--L", type=float, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--alpha", default="1,10,100", metavar="A1,A2,...")
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--plot", metavar="PATH", help="write envelope figure to PATH")
    p.set_defaults(func=cmd_bound)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _DOMAIN_ERRORS as exc:
        print(f"ulamstab: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except _SUITE_ERRORS as exc:
        print(f"ulamstab: {exc}", file=sys.stderr)
        return EXIT_SUITE
    except _INPUT_ERRORS as exc:
        print(f"ulamstab: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
