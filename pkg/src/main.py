"""
lindyn - command-line front end of lindyn-lab

Batch experiments on the weighted block operator T with exact dyadic
arithmetic:
- schedule: build a preset (or load a file) and report its conditions
- orbit / period / power: evolve vectors under T
- hyp0 / transit / reiterate: construct hypercyclicity witnesses
- verify: run the claim suites
- density: densities of a finite index set

Results are JSON on stdout (or --out); progress and summaries go to stderr
and the session log. Exit codes: 0 success, 1 failed verification or
invalid schedule (also unexpected errors, traceback in the session log),
2 malformed input.
"""

import argparse
import logging
import sys
from typing import Callable, List, Optional

from .config import get_settings
from .density import (
    banach_profile,
    banach_window,
    density_profile,
    empirical_bounds,
    exact_ap_density,
    upper_banach_estimate,
)
from .dyadic import Dyadic
from .errors import LabError, MalformedInputError, ScheduleConditionError
from .export import banach_frame, density_frame, dump_json, norms_frame, write_csv, write_json
from .input_validator import load_input
from .logging_config import setup_logging
from .operator_t import operator_for
from .schedule import PRESETS, Schedule, preset, validate, validate_41
from .schemas import dump_conditions, dump_schedule, dump_suites, dump_witness, encode_value
from .seqspace import NormKind, SparseVec
from .verify import (
    CLAIMS,
    hyp0_witness,
    reiterative_witness,
    run_suite,
    transitivity_witness,
    with_prefix_retry,
)

logger = logging.getLogger(__name__)

APP_VERSION = "0.1.0"
DEFAULT_PREFIX = 5

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_MALFORMED = 2


# ----------------------------------------------------------------------
# Shared plumbing
# ----------------------------------------------------------------------

def _emit(args: argparse.Namespace, data) -> None:
    """Write a JSON result to --out, or to stdout"""
    if args.out:
        write_json(data, args.out)
    else:
        sys.stdout.write(dump_json(data))


def _schedule(args: argparse.Namespace) -> Schedule:
    if args.schedule:
        return load_input(args.schedule, "schedule")
    return preset(args.preset, args.prefix)


def _validated_schedule(args: argparse.Namespace) -> Schedule:
    """Schedule from flags, refused unless it passes conditions (1)-(6)"""
    s = _schedule(args)
    report = validate(s)
    if not report.ok:
        logger.error(f"Schedule fails its conditions:\n{report.summary()}")
        raise ScheduleConditionError(
            f"Schedule violates condition(s) {', '.join(r.condition for r in report.failed())}.\n"
            f"Run `lindyn schedule` on it for the full report."
        )
    return s


def _dyadic(text: str, flag: str) -> Dyadic:
    try:
        return Dyadic.parse(text)
    except MalformedInputError as e:
        raise MalformedInputError(f"{flag}: {e}") from e


def _natural(text: str, flag: str) -> int:
    """Arbitrary-precision non-negative integer flag"""
    if not text.isdigit():
        raise MalformedInputError(f"{flag} must be a non-negative integer, got '{text}'")
    return int(text)


def _vector(args: argparse.Namespace) -> SparseVec:
    """--vec file or --basis k [--coeff c]"""
    if getattr(args, "vec", None):
        return load_input(args.vec, "vector")
    if args.basis < 0:
        raise MalformedInputError(f"--basis must be non-negative, got {args.basis}")
    return SparseVec.basis(args.basis, _dyadic(args.coeff, "--coeff"))


def _report_exit(report) -> int:
    level = logging.INFO if report.ok else logging.WARNING
    logger.log(level, report.summary())
    return EXIT_OK if report.ok else EXIT_FAILED


# ----------------------------------------------------------------------
# Subcommands
# ----------------------------------------------------------------------

def cmd_schedule(args: argparse.Namespace) -> int:
    s = _schedule(args)
    report = validate(s)
    data = {"schedule": dump_schedule(s), "conditions": dump_conditions(report)}
    ok = report.ok
    logger.info(f"b = {list(s.b)}")
    logger.info(f"Conditions (1)-(6):\n{report.summary()}")
    if args.check_41:
        report_41 = validate_41(s)
        data["conditions_41"] = dump_conditions(report_41)
        ok = ok and report_41.ok
        logger.info(f"Condition (41):\n{report_41.summary()}")
    _emit(args, data)
    return EXIT_OK if ok else EXIT_FAILED


def cmd_orbit(args: argparse.Namespace) -> int:
    s = _validated_schedule(args)
    v = _vector(args)
    if args.steps < 0:
        raise MalformedInputError(f"--steps must be non-negative, got {args.steps}")
    kind = NormKind.parse(args.norm)
    norms = operator_for(s).orbit_norms(v, args.steps, kind)
    frame = norms_frame(norms)
    if args.csv:
        write_csv(frame, args.csv)
    else:
        sys.stdout.write(write_csv(frame))
    logger.info(f"Orbit of {v.render()}: {len(norms)} norms ({kind})")
    return EXIT_OK


def cmd_period(args: argparse.Namespace) -> int:
    s = _validated_schedule(args)
    v = _vector(args)
    period = operator_for(s).period_of(v)
    top = v.top_block(s)
    logger.info(f"period_of({v.render()}) = {period}")
    _emit(args, {"vector": v.to_json(), "top_block": top, "period": period})
    return EXIT_OK


def cmd_power(args: argparse.Namespace) -> int:
    s = _validated_schedule(args)
    v = _vector(args)
    exponent = _natural(args.exp, "--exp")
    image = operator_for(s).apply_power(v, exponent)
    logger.info(f"T^{exponent} ({v.render()}) = {image.render()}")
    _emit(args, {"exponent": str(exponent), "vector": image.to_json(), "render": image.render()})
    return EXIT_OK


def cmd_hyp0(args: argparse.Namespace) -> int:
    s = _validated_schedule(args)
    eps = _dyadic(args.eps, "--eps")
    xk = _dyadic(args.xk, "--xk")
    report = with_prefix_retry(lambda sched: hyp0_witness(eps, args.k, args.N, args.M, xk, sched), s)
    _emit(args, dump_witness(report))
    return _report_exit(report)


def cmd_transit(args: argparse.Namespace) -> int:
    s = _validated_schedule(args)
    y = load_input(args.from_, "vector")
    x = load_input(args.to, "vector")
    eps = _dyadic(args.eps, "--eps")
    report = with_prefix_retry(lambda sched: transitivity_witness(y, x, eps, sched), s)
    _emit(args, dump_witness(report))
    return _report_exit(report)


def cmd_reiterate(args: argparse.Namespace) -> int:
    s = _validated_schedule(args)
    center = load_input(args.center, "vector")
    radius = _dyadic(args.radius, "--radius")
    report = with_prefix_retry(lambda sched: reiterative_witness(center, radius, args.depth, sched), s)
    _emit(args, dump_witness(report))
    return _report_exit(report)


def cmd_verify(args: argparse.Namespace) -> int:
    s = _validated_schedule(args)
    settings = get_settings()
    seed = settings.seed if args.seed is None else args.seed
    results = run_suite(args.claim, s, seed=seed, trials=args.trials, workers=args.workers, progress=args.progress)
    for result in results:
        logger.log(logging.INFO if result.ok else logging.WARNING, result.summary())
    _emit(args, dump_suites(results, seed, s))
    return EXIT_OK if all(r.ok for r in results) else EXIT_FAILED


def cmd_density(args: argparse.Namespace) -> int:
    A = load_input(args.set, "indexset")
    if args.window < 1:
        raise MalformedInputError(f"--window must be at least 1, got {args.window}")
    lower, upper = empirical_bounds(A)
    count, ratio = banach_window(A, args.window)
    data = {
        "size": len(A),
        "horizon": A.horizon,
        "lower": lower,
        "upper": upper,
        "window": args.window,
        "window_count": count,
        "window_ratio": ratio,
        "banach_estimate": upper_banach_estimate(A),
    }
    if A.structure is not None:
        data["exact_density"] = exact_ap_density(A.structure)
    if args.csv:
        write_csv(banach_frame(banach_profile(A, range(1, args.window + 1))), args.csv)
    if args.profile_csv:
        write_csv(density_frame(density_profile(A)), args.profile_csv)
    logger.info(f"density: lower {lower}, upper {upper}, window {args.window} holds {count}")
    _emit(args, encode_value(data))
    return EXIT_OK


# ----------------------------------------------------------------------
# Parser
# ----------------------------------------------------------------------

def _common_flags() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--preset", choices=sorted(PRESETS), default="small-2", help="Preset schedule (default small-2)")
    common.add_argument("--prefix", type=int, default=DEFAULT_PREFIX, help=f"Preset prefix (default {DEFAULT_PREFIX})")
    common.add_argument("--schedule", help="Schedule JSON/YAML file (overrides --preset)")
    common.add_argument("--out", help="Write the JSON result here instead of stdout")
    common.add_argument("--verbose", "-v", action="store_true", help="DEBUG output on the console")
    return common


def _vector_flags(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--basis", type=int, help="Start from coeff * e_k")
    source.add_argument("--vec", help="Vector JSON/YAML file")
    parser.add_argument("--coeff", default="1", help="Coefficient for --basis (default 1)")


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="lindyn",
        description="Exact experiments on a chaotic operator that is not U-frequently hypercyclic",
    )
    parser.add_argument("--version", action="version", version=f"lindyn-lab {APP_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler: Callable[[argparse.Namespace], int], help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(handler=handler)
        return p

    p = add("schedule", cmd_schedule, "Emit a schedule and its condition report")
    p.add_argument("--check-41", action="store_true", help="Also check condition (41)")

    p = add("orbit", cmd_orbit, "Per-step norms of an orbit as CSV")
    _vector_flags(p)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--norm", default="l1", help="l1, sup or lpN (default l1)")
    p.add_argument("--csv", help="CSV output file (default stdout)")

    p = add("period", cmd_period, "Period of a vector")
    _vector_flags(p)

    p = add("power", cmd_power, "T^E applied to a vector")
    _vector_flags(p)
    p.add_argument("--exp", required=True, help="Exponent (arbitrary precision integer)")

    p = add("hyp0", cmd_hyp0, "Single-coordinate hypercyclicity witness")
    p.add_argument("--eps", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--xk", required=True)

    p = add("transit", cmd_transit, "Transitivity witness from y to x")
    p.add_argument("--from", dest="from_", required=True, help="Vector file y")
    p.add_argument("--to", required=True, help="Vector file x")
    p.add_argument("--eps", required=True)

    p = add("reiterate", cmd_reiterate, "Reiterative recurrence witness")
    p.add_argument("--center", required=True, help="Vector file")
    p.add_argument("--radius", required=True)
    p.add_argument("--depth", type=int, required=True)

    p = add("verify", cmd_verify, "Run claim suites")
    p.add_argument("--claim", required=True, choices=list(CLAIMS) + ["all"])
    p.add_argument("--seed", type=int, default=None, help="Corpus seed (default LINDYN_SEED)")
    p.add_argument("--trials", type=int, default=None, help="Random cases per claim")
    p.add_argument("--workers", type=int, default=None, help="Worker processes (default LINDYN_WORKERS)")
    p.add_argument("--progress", action="store_true", help="Show a progress bar")

    p = add("density", cmd_density, "Densities of an index set")
    p.add_argument("--set", required=True, help="IndexSet JSON/YAML file")
    p.add_argument("--window", type=int, required=True)
    p.add_argument("--csv", help="Write the Banach window profile for N = 1..window")
    p.add_argument("--profile-csv", help="Write the running density for n = 0..horizon")

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_MALFORMED

    try:
        settings = get_settings()
    except MalformedInputError as e:
        sys.stderr.write(f"ERROR: {e}\n")
        return EXIT_MALFORMED

    console_level = logging.DEBUG if args.verbose else settings.console_level
    setup_logging(
        log_file=settings.log_file, console_level=console_level, file_level=logging.DEBUG, command=args.command
    )
    logger.debug(f"lindyn {args.command}: {vars(args)}")

    try:
        return args.handler(args)
    except MalformedInputError as e:
        logger.error(str(e))
        return EXIT_MALFORMED
    except LabError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_FAILED
    except Exception as e:
        logger.exception(f"Unexpected {type(e).__name__} in `lindyn {args.command}`: {e}")
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
