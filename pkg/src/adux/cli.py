"""Command-line front end: `adux` with batch subcommands.

Exit codes follow the usual conventions: 0 on success, 2 on data or
validation failures, 64 on usage errors. Results go to stdout or ``--out``;
diagnostics go to stderr. Output files are written atomically, so a failed
run never leaves a partial file behind.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, NoReturn

from .bayes import BetaParams, TrialSummary, bucs, wald_ci
from .drift import classify_drift, fit_tdc, series_from_dataset
from .entropy import MEAN_OF_SESSIONS, PER_CATEGORY, PER_CATEGORY_PER_PERIOD, POOLED, iei_by_group
from .errors import AduxError
from .model import Dataset, DiscreteDistribution, ResponseSpace, SKIP_INVALID, STRICT
from .report import (
    EvalConfig,
    Fig3Spec,
    emit_plot_data,
    emit_report,
    emit_sessions,
    evaluate,
    load_sessions,
    _num,
    _write_text,
)
from .synth import GeneratorSpec, category_presets, gen_ratings
from .version import __version__

EXIT_OK = 0
EXIT_DATA = 2
EXIT_USAGE = 64

DEFAULT_SEED = 42


class _Parser(argparse.ArgumentParser):
    """argparse parser that reports usage errors with exit code 64."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class _UsageError(Exception):
    """Raised by handlers for flag combinations argparse cannot check."""


def _scale_arg(text: str) -> tuple[int, int]:
    try:
        lo_text, hi_text = text.split("..", 1)
        lo, hi = int(lo_text), int(hi_text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected LO..HI with integer bounds, got {text!r}"
        ) from None
    if lo >= hi:
        raise argparse.ArgumentTypeError(f"scale bounds must satisfy lo < hi: {text!r}")
    return lo, hi


def _prior_arg(text: str) -> BetaParams:
    try:
        a_text, b_text = text.split(",", 1)
        params = BetaParams(float(a_text), float(b_text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad prior {text!r}: {exc}") from None
    return params


def _mass_arg(text: str) -> float:
    try:
        mass = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad mass {text!r}") from None
    if not 0.0 < mass < 1.0:
        raise argparse.ArgumentTypeError(f"mass must lie in (0, 1), got {text}")
    return mass


def _int_list_arg(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad integer list {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty integer list")
    return values


def _probs_arg(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad probability list {text!r}") from None


def _add_input_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", required=True, help="session log path, or - for stdin")
    p.add_argument("--format", choices=("csv", "jsonl"), default="csv",
                   help="input format (default csv)")
    p.add_argument("--scale", type=_scale_arg, default=(1, 5), metavar="LO..HI",
                   help="rating scale bounds (default 1..5)")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--strict", dest="strictness", action="store_const",
                       const=STRICT, default=STRICT,
                       help="fail on the first invalid row (default)")
    group.add_argument("--skip-invalid", dest="strictness", action="store_const",
                       const=SKIP_INVALID, help="drop invalid rows, log each rejection")


def _add_bayes_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--prior", type=_prior_arg, default=BetaParams(1.0, 1.0),
                   metavar="A,B", help="Beta prior parameters (default 1,1)")
    p.add_argument("--mass", type=_mass_arg, default=0.95,
                   help="credible mass (default 0.95)")


def _add_out_option(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="output file (default: stdout)")


def _resolve_seed(args: argparse.Namespace) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("ADUX_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise _UsageError(f"ADUX_SEED must be an integer, got {env!r}") from None
    return DEFAULT_SEED


def _load(args: argparse.Namespace):
    source = sys.stdin if args.input == "-" else args.input
    space = ResponseSpace.from_range(*args.scale)
    result = load_sessions(source, fmt=args.format, space=space,
                           strictness=args.strictness)
    for rejection in result.rejections:
        print(f"adux: skipped row {rejection.row}: {rejection.detail}", file=sys.stderr)
    return result


def _emit(args: argparse.Namespace, text: str) -> None:
    if args.out:
        _write_text(args.out, text)
    else:
        sys.stdout.write(text)


def _json_text(doc: dict[str, Any]) -> str:
    return json.dumps(doc, indent=2) + "\n"


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_iei(args: argparse.Namespace) -> int:
    result = _load(args)
    grouping = PER_CATEGORY if args.group_by == "category" else PER_CATEGORY_PER_PERIOD
    grouped = iei_by_group(result.dataset, grouping=grouping, aggregation=args.aggregation)
    rows = []
    for key, entry in grouped.results:
        row: dict[str, Any] = (
            {"category": key} if isinstance(key, str)
            else {"category": key[0], "period": key[1]}
        )
        row.update(bits=_num(entry.value), normalized=_num(entry.normalized),
                   n=entry.n_ratings)
        rows.append(row)
    _emit(args, _json_text({"groups": rows, "rejected": len(result.rejections)}))
    return EXIT_OK


def _cmd_tdc(args: argparse.Namespace) -> int:
    result = _load(args)
    rows = []
    for category in result.dataset.categories():
        series = series_from_dataset(result.dataset, category)
        fit = fit_tdc(series)
        rows.append({
            "category": category,
            "beta0": _num(fit.beta0),
            "beta1": _num(fit.beta1),
            "stderr": _num(fit.stderr_beta1),
            "ci95": [_num(fit.ci95_beta1[0]), _num(fit.ci95_beta1[1])],
            "residual_sd": _num(fit.residual_sd),
            "r2": _num(fit.r_squared),
            "n_points": fit.n_points,
            "drift": classify_drift(fit).value,
        })
    _emit(args, _json_text({"categories": rows, "rejected": len(result.rejections)}))
    return EXIT_OK


def _cmd_bucs(args: argparse.Namespace) -> int:
    if args.N < 0:
        raise _UsageError(f"--N must be >= 0, got {args.N}")
    if args.n < 0:
        raise _UsageError(f"--n must be >= 0, got {args.n}")
    if args.n > args.N:
        raise _UsageError(f"--n ({args.n}) cannot exceed --N ({args.N})")
    trials = TrialSummary(completions=args.n, trials=args.N)
    result = bucs(args.prior, trials, args.mass)
    doc: dict[str, Any] = {
        "posterior": {"alpha": _num(result.posterior.alpha),
                      "beta": _num(result.posterior.beta)},
        "interval": {
            "lower": _num(result.interval.lower),
            "upper": _num(result.interval.upper),
            "mass": _num(result.interval.mass),
            "kind": result.interval.kind.value,
            "unique": result.interval.unique,
        },
        "mean": _num(result.mean),
        "mode": None if result.mode is None else _num(result.mode),
    }
    if args.N >= 1:
        wald = wald_ci(trials, args.mass)
        doc["wald"] = {"lower": _num(wald.lower), "upper": _num(wald.upper)}
    _emit(args, _json_text(doc))
    return EXIT_OK


def _cmd_report(args: argparse.Namespace) -> int:
    result = _load(args)
    config = EvalConfig(prior=args.prior, mass=args.mass, aggregation=args.aggregation)
    report = evaluate(result.dataset, config, n_rejected=len(result.rejections))
    print(f"adux: config digest {report.meta.config_digest}", file=sys.stderr)
    text = emit_report(report, fmt=args.report_format, no_meta=args.no_meta)
    _emit(args, text)
    return EXIT_OK


def _specs_from_config_file(path: str, default_seed: int) -> list[GeneratorSpec]:
    with open(path, "r", encoding="utf-8") as handle:
        payload = json.load(handle)
    entries = payload if isinstance(payload, list) else payload.get("specs", [payload])
    specs = []
    for i, entry in enumerate(entries):
        lo, hi = _scale_arg(entry.get("scale", "1..5"))
        space = ResponseSpace.from_range(lo, hi)
        specs.append(GeneratorSpec(
            category=entry["category"],
            true_distribution=DiscreteDistribution(
                space=space, probs=tuple(entry["probs"])),
            true_beta0=float(entry.get("beta0", 3.0)),
            true_beta1=float(entry.get("beta1", 0.0)),
            noise_sd=float(entry.get("noise_sd", 0.0)),
            completion_p=float(entry.get("completion_p", 0.8)),
            periods=int(entry.get("periods", 8)),
            sessions_per_period=int(entry.get("sessions_per_period", 40)),
            seed=int(entry.get("seed", default_seed + i)),
        ))
    return specs


def _cmd_simulate(args: argparse.Namespace) -> int:
    seed = _resolve_seed(args)
    if args.config:
        try:
            specs = _specs_from_config_file(args.config, seed)
        except (KeyError, TypeError, ValueError, argparse.ArgumentTypeError) as exc:
            raise _UsageError(f"bad simulate config {args.config}: {exc}") from None
    elif args.preset:
        presets = category_presets(seed=seed, periods=args.periods,
                                   sessions_per_period=args.sessions_per_period)
        if args.preset == "all":
            specs = list(presets)
        else:
            specs = [s for s in presets if s.category == args.preset]
            if not specs:
                names = ", ".join(s.category for s in presets)
                raise _UsageError(f"unknown preset {args.preset!r} (have: {names}, all)")
    else:
        if not args.category or args.probs is None:
            raise _UsageError("simulate needs --category and --probs "
                              "(or --preset / --config)")
        space = ResponseSpace.from_range(*args.scale)
        try:
            dist = DiscreteDistribution(space=space, probs=args.probs)
            specs = [GeneratorSpec(
                category=args.category,
                true_distribution=dist,
                true_beta0=args.beta0,
                true_beta1=args.beta1,
                noise_sd=args.noise_sd,
                completion_p=args.completion_p,
                periods=args.periods,
                sessions_per_period=args.sessions_per_period,
                seed=seed,
            )]
        except ValueError as exc:
            raise _UsageError(str(exc)) from None

    datasets = [gen_ratings(spec) for spec in specs]
    space = datasets[0].space
    observations: list = []
    for ds in datasets:
        if ds.space != space:
            raise _UsageError("all simulated categories must share one scale")
        observations.extend(ds.observations)
    merged = Dataset(space=space, observations=tuple(observations))
    print(f"adux: simulated {len(merged)} sessions (seed {seed})", file=sys.stderr)
    _emit(args, emit_sessions(merged))
    return EXIT_OK


def _cmd_plotdata(args: argparse.Namespace) -> int:
    if args.figure in ("fig1", "fig2"):
        if not args.input:
            raise _UsageError(f"{args.figure} needs --input")
        result = _load(args)
        config = EvalConfig(prior=args.prior, mass=args.mass,
                            aggregation=args.aggregation)
        report = evaluate(result.dataset, config, n_rejected=len(result.rejections))
        _emit(args, emit_plot_data(report, args.figure))
        return EXIT_OK
    if args.p_hat is None:
        raise _UsageError("fig3 needs --p-hat (and optionally --N-list)")
    spec = Fig3Spec(p_hat=args.p_hat, trial_counts=args.N_list,
                    prior=args.prior, mass=args.mass)
    _emit(args, emit_plot_data(spec, "fig3"))
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser assembly


def build_parser() -> _Parser:
    parser = _Parser(prog="adux",
                     description="Usability metrics for AI-interface session logs: "
                                 "rating entropy (IEI), usability drift (TDC), and "
                                 "Bayesian task-completion intervals (BUCS).")
    parser.add_argument("--version", action="version", version=f"adux {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    p_iei = sub.add_parser("iei", help="rating entropy per group")
    _add_input_options(p_iei)
    p_iei.add_argument("--group-by", choices=("category", "category-period"),
                       default="category")
    p_iei.add_argument("--aggregation", choices=(POOLED, MEAN_OF_SESSIONS),
                       default=POOLED)
    _add_out_option(p_iei)
    p_iei.set_defaults(func=_cmd_iei)

    p_tdc = sub.add_parser("tdc", help="usability drift slope per category")
    _add_input_options(p_tdc)
    _add_out_option(p_tdc)
    p_tdc.set_defaults(func=_cmd_tdc)

    p_bucs = sub.add_parser("bucs", help="Bayesian completion interval from counts")
    p_bucs.add_argument("--n", type=int, required=True, help="completion count")
    p_bucs.add_argument("--N", type=int, required=True, help="trial count")
    _add_bayes_options(p_bucs)
    _add_out_option(p_bucs)
    p_bucs.set_defaults(func=_cmd_bucs)

    p_report = sub.add_parser("report", help="full per-category evaluation report")
    _add_input_options(p_report)
    _add_bayes_options(p_report)
    p_report.add_argument("--aggregation", choices=(POOLED, MEAN_OF_SESSIONS),
                          default=POOLED)
    p_report.add_argument("--report-format", choices=("json", "csv"), default="json")
    p_report.add_argument("--no-meta", action="store_true",
                          help="omit run metadata (timestamps) for byte-stable output")
    _add_out_option(p_report)
    p_report.set_defaults(func=_cmd_report)

    p_sim = sub.add_parser("simulate", help="write a synthetic session CSV")
    p_sim.add_argument("--category", help="category label for flag-driven specs")
    p_sim.add_argument("--probs", type=_probs_arg, metavar="P1,P2,...",
                       help="true rating distribution")
    p_sim.add_argument("--beta0", type=float, default=3.0)
    p_sim.add_argument("--beta1", type=float, default=0.0)
    p_sim.add_argument("--noise-sd", type=float, default=0.0)
    p_sim.add_argument("--completion-p", type=float, default=0.8)
    p_sim.add_argument("--periods", type=int, default=8)
    p_sim.add_argument("--sessions-per-period", type=int, default=40)
    p_sim.add_argument("--scale", type=_scale_arg, default=(1, 5), metavar="LO..HI")
    p_sim.add_argument("--preset", help="use a shipped category preset, or 'all'")
    p_sim.add_argument("--config", help="JSON file with one spec or {'specs': [...]}")
    p_sim.add_argument("--seed", type=int, default=None,
                       help="PRNG seed (default: $ADUX_SEED or 42)")
    _add_out_option(p_sim)
    p_sim.set_defaults(func=_cmd_simulate)

    p_plot = sub.add_parser("plotdata", help="CSV tables behind the standard figures")
    p_plot.add_argument("--figure", choices=("fig1", "fig2", "fig3"), required=True)
    p_plot.add_argument("--input", help="session log (fig1/fig2)")
    p_plot.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    p_plot.add_argument("--scale", type=_scale_arg, default=(1, 5), metavar="LO..HI")
    group = p_plot.add_mutually_exclusive_group()
    group.add_argument("--strict", dest="strictness", action="store_const",
                       const=STRICT, default=STRICT)
    group.add_argument("--skip-invalid", dest="strictness", action="store_const",
                       const=SKIP_INVALID)
    p_plot.add_argument("--aggregation", choices=(POOLED, MEAN_OF_SESSIONS),
                        default=POOLED)
    _add_bayes_options(p_plot)
    p_plot.add_argument("--p-hat", type=float, default=None,
                        help="completion share for fig3")
    p_plot.add_argument("--N-list", type=_int_list_arg, default=(10, 50, 200, 1000),
                        metavar="N1,N2,...", help="sample sizes for fig3")
    _add_out_option(p_plot)
    p_plot.set_defaults(func=_cmd_plotdata)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    if not getattr(args, "command", None):
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"adux: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AduxError as exc:
        print(f"adux: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"adux: error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    raise SystemExit(main())
