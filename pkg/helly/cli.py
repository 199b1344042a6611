"""
Command-line front end.

Subcommands: generate, analyze, verify, sweep, oracle-check. Every JSON or CSV
output echoes the full invocation so a run can be reproduced from its output.
"""
import argparse
import logging
import math
import random
import sys
from enum import IntEnum
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from helly import __version__
from helly.config import LOG_LEVELS, Settings, load_settings, settings
from helly.generators import (
    RandomModel,
    SystemVariant,
    construction_spec,
    gen_colorful_helly_instance,
    gen_construction_colorful,
    gen_example_monochromatic,
    gen_random_classes,
    gen_random_system,
    predicted_colorful_count,
    predicted_mono_count,
)
from helly.geometry_kernel import feasible, fourier_motzkin_feasible
from helly.helly_core import (
    colorful_helly_class,
    count_intersecting_colorful,
    count_intersecting_monochromatic,
    run_extraction,
    verify_fractional,
    verify_theorem,
)
from helly.models.report import Analysis, Sidecar, SweepRow, Verdict
from helly.storage import (
    dump_json,
    instance_from_classes,
    instance_from_family,
    load_instance,
    load_sidecar,
    save_instance,
    save_report,
    save_sidecar,
    write_sweep_csv,
)
from helly.utils.rational import format_literal, parse_scalar
from helly.utils.validation import (
    ConfigError,
    ConsistencyError,
    GenerationError,
    HypothesisViolationError,
    MalformedInputError,
    ScaleLimitError,
    SpecError,
)

logger = logging.getLogger(__name__)

ORACLE_MAX_DIM = 3
LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


class ExitCode(IntEnum):
    OK = 0
    VERDICT = 1
    USAGE = 2
    PARSE = 3
    SPEC = 4
    SCALE = 5
    IO = 6
    GENERATION = 7


class UsageError(Exception):
    """Arguments parse but make no sense together."""


def _rational(text: str) -> Fraction:
    try:
        return parse_scalar(text)
    except MalformedInputError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _int_list(text: str) -> List[int]:
    try:
        return [int(item) for item in text.split(",") if item.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _rational_list(text: str) -> List[Fraction]:
    return [_rational(item.strip()) for item in text.split(",") if item.strip()]


def _invocation(args: argparse.Namespace) -> Dict[str, Any]:
    """JSON-safe echo of the parsed arguments."""
    echo: Dict[str, Any] = {"version": __version__}
    for key, value in sorted(vars(args).items()):
        if key == "handler":
            continue
        if isinstance(value, Fraction):
            value = format_literal(value)
        elif isinstance(value, list):
            value = [format_literal(v) if isinstance(v, Fraction) else v for v in value]
        elif isinstance(value, Path):
            value = str(value)
        echo[key] = value
    return echo


def _class_sizes(args: argparse.Namespace) -> List[int]:
    if args.sizes:
        return args.sizes
    if args.n is None:
        raise UsageError("--n or --sizes is required")
    return [args.n] * (args.dim + 1)


def _emit(text: str, out: Optional[Path] = None) -> None:
    print(text)
    if out is not None:
        out.write_text(text + "\n")


# Subcommands

def cmd_generate(args: argparse.Namespace) -> int:
    """Write an instance file plus its JSON sidecar."""
    invocation = _invocation(args)
    kind = args.kind
    if kind in ("mono", "colorful"):
        if args.n is None or args.beta is None:
            raise UsageError(f"--n and --beta are required for --kind {kind}")
        spec = construction_spec(args.dim, args.n, args.beta, args.seed)
        if kind == "mono":
            family = gen_example_monochromatic(args.dim, args.n, args.beta, args.seed)
            instance = instance_from_family(family)
            predicted = predicted_mono_count(args.n, args.beta, args.dim)
        else:
            classes = gen_construction_colorful(args.dim, args.n, args.beta, args.seed)
            instance = instance_from_classes(classes)
            predicted = predicted_colorful_count(args.n, args.beta, args.dim)
        sidecar = Sidecar(kind=kind, spec=spec, predicted_count=predicted, invocation=invocation)
    else:
        sizes = _class_sizes(args)
        if kind == "random":
            classes = gen_random_classes(args.dim, sizes, RandomModel(args.model), args.seed)
        else:
            classes = gen_colorful_helly_instance(args.dim, sizes, args.seed)
        instance = instance_from_classes(classes)
        sidecar = Sidecar(kind=kind, invocation=invocation)

    save_instance(instance, args.out)
    target = save_sidecar(sidecar, args.out)
    print(f"wrote {args.out} and {target}")
    return ExitCode.OK


def cmd_analyze(args: argparse.Namespace) -> int:
    """Counts, matchings and the extraction, without exact maximization."""
    instance = load_instance(args.input)
    if instance.colorful:
        classes = instance.to_color_classes()
        profile = count_intersecting_colorful(classes, args.jobs)
        extraction = run_extraction(classes, jobs=args.jobs)
        product = math.prod(matching.size for matching in extraction.matchings)
        analysis = Analysis(
            invocation=_invocation(args),
            d=instance.dim,
            sizes=classes.sizes,
            colorful=True,
            profile=profile,
            extraction=extraction,
            colorful_helly_class=colorful_helly_class(classes),
            matching_product=product,
            matching_product_holds=profile.nonintersecting_count >= product,
        )
    else:
        profile = count_intersecting_monochromatic(instance.family, instance.dim, args.jobs)
        analysis = Analysis(
            invocation=_invocation(args),
            d=instance.dim,
            sizes=(len(instance.family),),
            colorful=False,
            profile=profile,
        )
    _emit(dump_json(analysis), args.out)
    return ExitCode.OK


def cmd_verify(args: argparse.Namespace) -> int:
    """Run the bound checks; exit 0 only on PASS."""
    instance = load_instance(args.input)
    sidecar = load_sidecar(args.input)
    spec = sidecar.spec if sidecar is not None else None
    invocation = _invocation(args)
    if instance.colorful:
        report = verify_theorem(
            instance.to_color_classes(),
            max_exact_n=args.max_exact_n,
            jobs=args.jobs,
            construction=spec if sidecar is not None and sidecar.kind == "colorful" else None,
            invocation=invocation,
        )
    else:
        report = verify_fractional(
            instance.family,
            max_exact_n=args.max_exact_n,
            jobs=args.jobs,
            construction=spec if sidecar is not None and sidecar.kind == "mono" else None,
            invocation=invocation,
        )
    text = dump_json(report)
    print(text)
    if args.out is not None:
        save_report(report, args.out)
    if args.require_exact and not report.exact:
        logger.error("Exact maximization was skipped and --require-exact is set")
        return ExitCode.SCALE
    return ExitCode.OK if report.verdict is Verdict.PASS else ExitCode.VERDICT


def cmd_sweep(args: argparse.Namespace) -> int:
    """Construction sweep over a beta grid, or random sweep over a seed grid, into CSV."""
    seeds = args.seed_grid if args.seed_grid is not None else [args.seed]
    if not seeds:
        raise UsageError("--seed-grid is empty")
    rows: List[SweepRow] = []
    if args.kind == "colorful":
        if not args.beta_grid:
            raise UsageError("--beta-grid is required and must be nonempty for a construction sweep")
        if args.n is None:
            raise UsageError("--n is required for a construction sweep")
        cases = [(beta, seed) for beta in args.beta_grid for seed in seeds]
    else:
        cases = [(None, seed) for seed in seeds]

    for beta, seed in cases:
        if beta is None:
            classes = gen_random_classes(args.dim, _class_sizes(args), RandomModel(args.model), seed)
            spec = None
        else:
            try:
                classes = gen_construction_colorful(args.dim, args.n, beta, seed)
            except SpecError as exc:
                logger.warning("Skipping beta=%s: %s", beta, exc)
                continue
            spec = construction_spec(args.dim, args.n, beta, seed)
        report = verify_theorem(
            classes, max_exact_n=args.max_exact_n, jobs=args.jobs, construction=spec
        )
        rows.append(
            SweepRow(
                d=args.dim,
                n=max(classes.sizes),
                beta=beta,
                seed=seed,
                alpha=report.profile.alpha,
                beta_observed=report.beta_observed,
                lower_bound=report.lower_bound.lower if report.lower_bound else None,
                lower_bound_hi=report.lower_bound.upper if report.lower_bound else None,
                upper_bound=report.upper_bound.lower if report.upper_bound else None,
                upper_bound_hi=report.upper_bound.upper if report.upper_bound else None,
                exact=report.exact,
                verdict=report.verdict,
            )
        )
    if not rows:
        raise UsageError("No grid point produced a valid instance")
    write_sweep_csv(rows, args.out, _invocation(args))
    failed = sum(1 for row in rows if row.verdict is Verdict.FAIL)
    print(f"wrote {len(rows)} rows to {args.out} ({failed} failed)")
    return ExitCode.OK if failed == 0 else ExitCode.VERDICT


def cmd_oracle_check(args: argparse.Namespace) -> int:
    """Compare the simplex kernel with Fourier-Motzkin elimination on random systems."""
    if not 1 <= args.dim <= ORACLE_MAX_DIM:
        raise UsageError(f"oracle-check supports 1 <= --dim <= {ORACLE_MAX_DIM}, got {args.dim}")
    rng = random.Random(args.seed)
    variants = list(SystemVariant)
    agree = 0
    for case in range(args.count):
        system = gen_random_system(args.dim, rng.randrange(2**32), variants[case % len(variants)])
        simplex = feasible(system, args.dim).is_nonempty
        elimination = fourier_motzkin_feasible(system, args.dim)
        if simplex == elimination:
            agree += 1
            continue
        dump = "\n".join(
            " ".join([format_literal(a) for a in c.coefficients] + [c.relation.value, format_literal(c.rhs)])
            for c in system
        )
        logger.error(
            "Case %d disagrees (simplex=%s, elimination=%s):\n%s", case, simplex, elimination, dump
        )
    print(f"{agree}/{args.count} agree")
    return ExitCode.OK if agree == args.count else ExitCode.VERDICT


# Parser

def build_parser(config: Optional[Settings] = None) -> argparse.ArgumentParser:
    config = config or settings
    parser = argparse.ArgumentParser(
        prog="helly",
        description="Exact experiments with colorful fractional Helly bounds",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--log-level",
        default=config.log_level,
        choices=LOG_LEVELS,
        type=str.upper,
        help="Log level (CLI > env:HELLY_LOG_LEVEL > WARNING)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def scale_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--max-exact-n",
            type=int,
            default=config.max_exact_n,
            help="Largest class maximized exactly (CLI > env:HELLY_MAX_EXACT_N > 25)",
        )
        p.add_argument(
            "--jobs",
            type=_positive_int,
            default=config.jobs,
            help="Worker processes for tuple evaluation (CLI > env:HELLY_JOBS > 1)",
        )

    p = sub.add_parser("generate", help="Write a constructed or random instance")
    p.add_argument("--kind", choices=["mono", "colorful", "random", "colorful-helly"], required=True)
    p.add_argument("--dim", type=_positive_int, required=True)
    p.add_argument("--n", type=_positive_int)
    p.add_argument("--beta", type=_rational, help='Rational in (0, 1], e.g. "1/2"')
    p.add_argument("--sizes", type=_int_list, help="Comma-separated class sizes for random kinds")
    p.add_argument("--model", choices=[m.value for m in RandomModel], default=RandomModel.MIXED.value)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(handler=cmd_generate)

    p = sub.add_parser("analyze", help="Counts, matchings and extraction for an instance")
    p.add_argument("--in", dest="input", type=Path, required=True)
    p.add_argument("--out", type=Path)
    p.add_argument("--jobs", type=_positive_int, default=config.jobs)
    p.set_defaults(handler=cmd_analyze)

    p = sub.add_parser("verify", help="Check the bounds on an instance")
    p.add_argument("--in", dest="input", type=Path, required=True)
    p.add_argument("--out", type=Path)
    p.add_argument("--require-exact", action="store_true", help="Fail with the scale code if maxima were skipped")
    scale_flags(p)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("sweep", help="alpha/beta data for plotting, as CSV")
    p.add_argument("--kind", choices=["colorful", "random"], default="colorful")
    p.add_argument("--dim", type=_positive_int, required=True)
    p.add_argument("--n", type=_positive_int)
    p.add_argument("--sizes", type=_int_list)
    p.add_argument("--model", choices=[m.value for m in RandomModel], default=RandomModel.MIXED.value)
    p.add_argument("--beta-grid", type=_rational_list, help='e.g. "1/4,1/2,3/4"')
    p.add_argument("--seed-grid", type=_int_list, help="e.g. 0,1,2")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path, required=True)
    scale_flags(p)
    p.set_defaults(handler=cmd_sweep)

    p = sub.add_parser("oracle-check", help="Simplex vs Fourier-Motzkin on random systems")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--count", type=_positive_int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=cmd_oracle_check)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        config = load_settings()
    except ConfigError as exc:
        logging.basicConfig(format=LOG_FORMAT, stream=sys.stderr)
        logger.error("%s", exc)
        return ExitCode.USAGE
    parser = build_parser(config)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    logging.basicConfig(
        level=args.log_level,
        format=LOG_FORMAT,
        stream=sys.stderr,
    )
    try:
        return int(args.handler(args))
    except UsageError as exc:
        logger.error("%s", exc)
        return ExitCode.USAGE
    except MalformedInputError as exc:
        logger.error("Invalid input: %s", exc)
        return ExitCode.PARSE
    except (SpecError, HypothesisViolationError) as exc:
        logger.error("%s", exc)
        return ExitCode.SPEC
    except ScaleLimitError as exc:
        logger.error("%s", exc)
        return ExitCode.SCALE
    except GenerationError as exc:
        logger.error("%s", exc)
        return ExitCode.GENERATION
    except ConsistencyError as exc:
        logger.error("Internal consistency check failed: %s", exc)
        return ExitCode.VERDICT
    except OSError as exc:
        logger.error("I/O error: %s", exc)
        return ExitCode.IO
