#!/usr/bin/env python3
"""Command-line interface for the spectral volatility toolkit."""

import argparse
import logging
import sys
from typing import Any, Callable, NoReturn, Optional, Sequence

from dotenv import load_dotenv

from estimators.config import DEFAULT_SPOT_BANDWIDTH, EstimatorConfig, SpotKernel
from estimators.iv import default_cutoff, estimate_from_observations
from estimators.spot import spot_box, spot_local_linear
from fisher.efficiency import efficiency_table, single_freq_optimum
from fisher.information import (
    fisher_closed,
    fisher_partial,
    fisher_report,
    fisher_tail_bound,
    series_identity,
)
from gaussmetrics.verification import (
    counterexample_report,
    hellinger_suite,
    regression_bound_report,
    white_noise_report,
)
from mc.config import McConfig, load_mc_config
from mc.harness import run_mc, write_report, write_report_replicates
from model.curve_spec import parse_curve_spec
from model.errors import ConfigurationError, DomainError
from model.simulation import simulate_observations
from settings import configure_logging, get_settings
from spectral.grid import BlockGrid
from spectral.statistics import compute_spectral_stats
from storage.csv_store import dump_json, read_observations, write_json, write_observations

logger = logging.getLogger(__name__)

REFERENCE_CURVE = "quartic:0.02,0.2,0.5"
DECAY_CURVE = "sin:1,0.5,1"

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_RUNTIME = 2


class UsageError(Exception):
    """Command line could not be parsed."""

    def __init__(self, message: str, usage: str) -> None:
        super().__init__(message)
        self.usage = usage


class ArgumentParser(argparse.ArgumentParser):
    """Parser that reports usage errors as exceptions instead of exiting."""

    def error(self, message: str) -> NoReturn:
        raise UsageError(message, self.format_usage())


def _emit(payload: Any) -> None:
    print(dump_json(payload))


def _int_list(text: str) -> list[int]:
    try:
        return [int(item) for item in text.split(",") if item.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got '{text}'") from e


def _float_list(text: str) -> list[float]:
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got '{text}'") from e


# Subcommands


def cmd_simulate(args: argparse.Namespace) -> None:
    curve = parse_curve_spec(args.curve)
    obs = simulate_observations(curve, args.n, args.delta, args.seed)
    write_observations(obs, args.out)
    _emit({"out": args.out, "n": obs.n, "delta": obs.delta, "seed": obs.seed, "curve": args.curve})


def _estimator_config(args: argparse.Namespace, n: int, J: int) -> EstimatorConfig:
    return EstimatorConfig(
        grid=BlockGrid(n=n, blocks=args.blocks),
        J=J,
        delta=args.delta,
        weight_mode=getattr(args, "weights", "adaptive"),
        bias_correction=args.bias_correction,
        spot_bandwidth=args.spot_bandwidth,
        spot_kernel=args.spot_kernel,
        spot_leave_out=not args.no_leave_out,
        spot_floor=args.spot_floor,
        newton=getattr(args, "newton", False),
    )


def cmd_estimate_iv(args: argparse.Namespace) -> None:
    obs = read_observations(args.obs, args.delta)
    curve = parse_curve_spec(args.curve) if args.curve else None
    J = args.J
    if J is None:
        if curve is None:
            raise ConfigurationError("--J is required unless --curve supplies the cut-off rule")
        J = default_cutoff(curve, BlockGrid(n=obs.n, blocks=args.blocks), args.delta)
    config = _estimator_config(args, obs.n, J)
    _emit(estimate_from_observations(obs, config, curve).to_dict())


def cmd_estimate_spot(args: argparse.Namespace) -> None:
    obs = read_observations(args.obs, args.delta)
    config = _estimator_config(args, obs.n, args.J)
    stats = compute_spectral_stats(obs, config.grid, config.J)
    smoother = spot_box if args.spot_kernel == "box" else spot_local_linear
    spot = smoother(
        stats,
        args.spot_bandwidth,
        args.bias_correction,
        leave_out=not args.no_leave_out,
        floor=args.spot_floor,
    )
    _emit(spot.to_dict())


def cmd_mc(args: argparse.Namespace) -> None:
    settings = get_settings()
    overrides = {
        "curve": args.curve,
        "n": args.n,
        "delta": args.delta,
        "blocks": args.blocks,
        "J": args.J,
        "reps": args.reps,
        "base_seed": args.seed,
        "weight_mode": args.weights,
        "bias_correction": args.bias_correction,
    }
    if args.config:
        config = load_mc_config(args.config, **overrides)
    else:
        present = {key: value for key, value in overrides.items() if value is not None}
        present.setdefault("reps", settings.mc_reps)
        config = McConfig.from_dict(present)

    report = run_mc(config, threads=args.threads or settings.threads)
    if args.out:
        write_report(report, args.out, include_wall_time=args.wall_time)
    if args.replicates_out:
        write_report_replicates(report, args.replicates_out)
    _emit(report.to_dict(include_wall_time=args.wall_time))


def cmd_fisher(args: argparse.Namespace) -> None:
    _emit(fisher_report(args.theta, args.h0, args.J).to_dict())


def cmd_verify_series(args: argparse.Namespace) -> None:
    identity = series_identity(args.lam, args.J)
    _emit({**identity.to_dict(), "passed": identity.abs_diff <= args.tol})


def cmd_verify_fisher(args: argparse.Namespace) -> None:
    rows = []
    for theta, h0 in args.points:
        closed = fisher_closed(theta, h0)
        partial = fisher_partial(theta, h0, args.J)
        tail = fisher_tail_bound(h0, args.J)
        rel_diff = abs(closed - partial) / closed
        scaled = theta**-2 * fisher_closed(1.0, theta**0.5 * h0)
        rows.append(
            {
                "theta": theta,
                "h0": h0,
                "value_closed": closed,
                "value_partial": partial,
                "tail_bound": tail,
                "relative_diff": rel_diff,
                "scaling_rel_error": abs(scaled - closed) / closed,
                "passed": rel_diff <= args.tol and partial <= closed * (1.0 + 1e-12),
            }
        )
    limit = 8.0 * fisher_partial(1.0, 1e3, args.J) / 1e3
    _emit(
        {
            "J": args.J,
            "rows": rows,
            "riemann_limit_ratio": limit,
            "passed": all(row["passed"] for row in rows) and abs(limit - 1.0) <= 5e-3,
        }
    )


def cmd_verify_hellinger(args: argparse.Namespace) -> None:
    _emit(hellinger_suite(args.pairs, args.max_dim, args.products, args.seed))


def cmd_verify_regression(args: argparse.Namespace) -> None:
    curve = parse_curve_spec(args.curve)
    report = regression_bound_report(curve, args.delta, args.sizes)
    reference = parse_curve_spec(args.reference)
    report["white_noise"] = white_noise_report(reference, curve, args.eps)
    _emit(report)


def cmd_verify_counterexample(args: argparse.Namespace) -> None:
    _emit(counterexample_report(args.n, args.alpha))


def cmd_verify_efficiency(args: argparse.Namespace) -> None:
    curve = parse_curve_spec(args.curve)
    _emit(
        {
            "curve": args.curve,
            **efficiency_table(curve),
            "single_frequency": single_freq_optimum(args.sigma0).to_dict(),
        }
    )


# Parser


def _add_estimator_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--obs", required=True, help="observation CSV with header i,y")
    parser.add_argument("--delta", type=float, required=True, help="noise standard deviation")
    parser.add_argument("--blocks", type=int, required=True, help="number of blocks 1/h")
    parser.add_argument("--bias-correction", choices=["paper", "exact"], default="paper")
    parser.add_argument("--spot-bandwidth", type=float, default=DEFAULT_SPOT_BANDWIDTH)
    parser.add_argument(
        "--spot-kernel",
        choices=[kernel.value for kernel in SpotKernel],
        default=SpotKernel.BOX.value,
    )
    parser.add_argument("--spot-floor", type=float, default=None)
    parser.add_argument(
        "--no-leave-out", action="store_true", help="let block k enter its own pre-estimate"
    )


def build_parser() -> ArgumentParser:
    """Build the argument parser with every subcommand."""
    parser = ArgumentParser(prog="spectralvol", description=__doc__)
    parser.add_argument("--log-level", default=None, help="override LOG_LEVEL")
    commands = parser.add_subparsers(dest="command", required=True)

    simulate = commands.add_parser("simulate", help="simulate noisy observations")
    simulate.add_argument("--curve", required=True, help="curve spec, e.g. " + REFERENCE_CURVE)
    simulate.add_argument("--n", type=int, required=True)
    simulate.add_argument("--delta", type=float, required=True)
    simulate.add_argument("--seed", type=int, required=True)
    simulate.add_argument("--out", required=True)
    simulate.set_defaults(handler=cmd_simulate)

    estimate = commands.add_parser("estimate", help="estimate from an observation CSV")
    estimates = estimate.add_subparsers(dest="target", required=True)
    iv = estimates.add_parser("iv", help="integrated volatility")
    _add_estimator_options(iv)
    iv.add_argument("--J", type=int, default=None, help="frequency cut-off")
    iv.add_argument("--weights", choices=["adaptive", "oracle", "mle"], default="adaptive")
    iv.add_argument("--curve", default=None, help="true curve for oracle weights and sd fields")
    iv.add_argument("--newton", action="store_true", help="single Newton step in mle mode")
    iv.set_defaults(handler=cmd_estimate_iv)
    spot = estimates.add_parser("spot", help="spot volatility at block centers")
    _add_estimator_options(spot)
    spot.add_argument("--J", type=int, default=1)
    spot.set_defaults(handler=cmd_estimate_spot)

    mc = commands.add_parser("mc", help="Monte Carlo study")
    mc.add_argument("--config", default=None, help="McConfig JSON; flags override its fields")
    mc.add_argument("--curve", default=None)
    mc.add_argument("--n", type=int, default=None)
    mc.add_argument("--delta", type=float, default=None)
    mc.add_argument("--blocks", type=int, default=None)
    mc.add_argument("--J", type=int, default=None)
    mc.add_argument("--reps", type=int, default=None, help="replications (10000 for full size)")
    mc.add_argument("--seed", type=int, default=None, help="base seed")
    mc.add_argument("--weights", choices=["adaptive", "oracle", "mle"], default=None)
    mc.add_argument("--bias-correction", choices=["paper", "exact"], default=None)
    mc.add_argument("--threads", type=int, default=None, help="defaults to SPECTRALVOL_THREADS")
    mc.add_argument("--out", default=None, help="write the report JSON here")
    mc.add_argument("--replicates-out", default=None, help="write rep,iv_hat CSV here")
    mc.add_argument("--wall-time", action="store_true", help="include wall time in the report")
    mc.set_defaults(handler=cmd_mc)

    fisher = commands.add_parser("fisher", help="Fisher information report")
    fisher.add_argument("--theta", type=float, required=True)
    fisher.add_argument("--h0", type=float, required=True)
    fisher.add_argument("--J", type=int, default=None)
    fisher.set_defaults(handler=cmd_fisher)

    verify = commands.add_parser("verify", help="numerical verification tables")
    checks = verify.add_subparsers(dest="check", required=True)

    series = checks.add_parser("series", help="series identity")
    series.add_argument("--lambda", dest="lam", type=float, required=True)
    series.add_argument("--J", type=int, default=1_000_000)
    series.add_argument("--tol", type=float, default=1e-10)
    series.set_defaults(handler=cmd_verify_series)

    info = checks.add_parser("fisher", help="closed form against truncated series")
    info.add_argument("--J", type=int, default=1_000_000)
    info.add_argument("--tol", type=float, default=1e-6)
    info.set_defaults(handler=cmd_verify_fisher, points=[(1.0, 10.0), (0.25, 50.0), (4.0, 3.0)])

    hellinger = checks.add_parser("hellinger", help="Hellinger inequalities")
    hellinger.add_argument("--pairs", type=int, default=200)
    hellinger.add_argument("--max-dim", type=int, default=6)
    hellinger.add_argument("--products", type=int, default=50)
    hellinger.add_argument("--seed", type=int, default=0)
    hellinger.set_defaults(handler=cmd_verify_hellinger)

    regression = checks.add_parser("regression-bound", help="covariance decay and white noise")
    regression.add_argument("--curve", default=DECAY_CURVE)
    regression.add_argument("--delta", type=float, default=1.0)
    regression.add_argument("--sizes", type=_int_list, default=[8, 16, 32, 64])
    regression.add_argument("--reference", default="const:1.0")
    regression.add_argument("--eps", type=_float_list, default=[1e-3, 5e-4])
    regression.set_defaults(handler=cmd_verify_regression)

    counter = checks.add_parser("counterexample", help="grid-invisible perturbation")
    counter.add_argument("--n", type=_int_list, default=[10, 100])
    counter.add_argument("--alpha", type=float, default=0.5)
    counter.set_defaults(handler=cmd_verify_counterexample)

    efficiency = checks.add_parser("efficiency", help="moments and tuning ratios")
    efficiency.add_argument("--curve", default=REFERENCE_CURVE)
    efficiency.add_argument("--sigma0", type=float, default=1.0)
    efficiency.set_defaults(handler=cmd_verify_efficiency)

    return parser


def dispatch(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse arguments and run one subcommand.

    Args:
        argv: Arguments without the program name

    Returns:
        0 on success, 1 on validation or usage errors, 2 on runtime errors
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        sys.stderr.write(e.usage)
        sys.stderr.write(f"error: {e}\n")
        return EXIT_VALIDATION
    except SystemExit as e:
        return int(e.code or 0)

    handler: Callable[[argparse.Namespace], None] = args.handler
    try:
        if args.log_level:
            configure_logging(args.log_level)
        handler(args)
    except (ConfigurationError, DomainError) as e:
        logger.debug("Validation failure", exc_info=True)
        sys.stderr.write(f"error: {e}\n")
        return EXIT_VALIDATION
    except Exception as e:
        logger.exception("Command failed")
        sys.stderr.write(f"error: {e}\n")
        return EXIT_RUNTIME
    return EXIT_OK


def main() -> None:
    """Run the CLI interface."""
    # Load environment variables
    load_dotenv()
    try:
        configure_logging(get_settings().log_level)
    except ConfigurationError as e:
        sys.stderr.write(f"error: {e}\n")
        sys.exit(EXIT_VALIDATION)
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
