#!/usr/bin/env python3
"""
Anytime PPM - experiment CLI

Runs the analytic tables and Monte Carlo experiments of the repeated PPM
anytime code over the infinite-bandwidth AWGN channel, plus the unit-cost
DMC extension. Results go to CSV (or JSON) with a JSON run record beside
them; logs go to stderr.

Usage:
    python main.py theory --eb-grid ln2:8ln2:16
    python main.py sim-genie --eb 2.7726 --delays 2:10 --trials 100000 --seed 7
    python main.py sim-anytime --rate-fraction 0.5 --bit-index 1 --delays 0:12
    python main.py sim-block --messages 16 --eb 4ln2 --trials 100000
    python main.py sim-feedback --eb 4ln2 --stream-length 16 --trials 10000
    python main.py sim-cost --dmc toy.dmc --eb-cost 0.6 --burst 2 --delays 0:10:2
    python main.py fit results.csv
"""

import argparse
import io
import json
import math
import re
import sys
import time
from collections.abc import Callable
from pathlib import Path
from typing import Any, Optional

import numpy as np
from pydantic import ValidationError

from channel.dmc import load_dmc_spec
from models.config_models import RunConfig, Settings
from models.data_models import LN2, ErrorCurve, RunRecord
from montecarlo.block_baseline import run_block_baseline
from montecarlo.curves import run_anytime_curve, run_genie_curve
from montecarlo.feedback import run_feedback_bandwidth
from montecarlo.fitting import fit_exponent
from storage.results import (
    read_curve_csv,
    run_record_json,
    write_block_csv,
    write_curve_csv,
    write_histogram_csv,
    write_run_record,
)
from theory.capacity import cost_threshold
from theory.exponents import converse_exponent, exponent_eb, exponent_rate, prefix_constant
from unitcost.budget import capacity_per_unit_cost, plan_burst
from unitcost.cost_curve import run_cost_curve
from utils.config_loader import load_run_file, load_settings
from utils.errors import AnytimeCodingError, DomainError, InfiniteDivergenceError, InsufficientDataError
from utils.logger import setup_logger

logger = setup_logger(name="anytime_ppm")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3

_LN2_TERM = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)?\s*\*?\s*ln2\s*$")

THEORY_COLUMNS = ("rate_fraction", "eb", "exponent_rate", "exponent_eb", "converse_rate", "prefix_constant")


def parse_number(text: str) -> float:
    """
    Parse a decimal or a multiple of ln2 ("ln2", "8ln2", "0.5*ln2").

    Parsing does not depend on the locale.
    """
    match = _LN2_TERM.match(text)
    if match:
        factor = match.group(1)
        return (float(factor) if factor else 1.0) * LN2
    try:
        return float(text)
    except ValueError:
        raise DomainError(f"Not a number or ln2 multiple: {text!r}") from None


def parse_grid(text: str) -> list[float]:
    """``lo:hi:count`` evenly spaced values, endpoints included."""
    parts = text.split(":")
    if len(parts) != 3:
        raise DomainError(f"Grid must be lo:hi:count, got {text!r}")
    lo, hi = parse_number(parts[0]), parse_number(parts[1])
    try:
        count = int(parts[2])
    except ValueError:
        raise DomainError(f"Grid count must be an integer, got {parts[2]!r}") from None
    if count < 1:
        raise DomainError(f"Grid count must be at least 1, got {count}")
    if count == 1:
        return [lo]
    return [float(v) for v in np.linspace(lo, hi, count)]


def parse_delays(text: str) -> list[int]:
    """Delays as ``a:b`` (inclusive), ``a:b:step`` or a comma list."""
    try:
        if ":" in text:
            parts = [int(p) for p in text.split(":")]
            if len(parts) == 2:
                parts.append(1)
            if len(parts) != 3 or parts[2] < 1:
                raise ValueError(text)
            lo, hi, step = parts
            return list(range(lo, hi + 1, step))
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise DomainError(f"Delays must be a:b, a:b:step or a comma list, got {text!r}") from None


# Run-file keys and how their string values are parsed.
_CONVERTERS: dict[str, Callable[[str], Any]] = {
    "eb": parse_number,
    "rate_fraction": parse_number,
    "delays": parse_delays,
    "trials": int,
    "seed": int,
    "workers": int,
    "output": str,
    "format": str,
    "bit_index": int,
    "messages": int,
    "stream_length": int,
    "dmc": str,
    "eb_cost": parse_number,
    "burst": int,
    "log_level": str,
    "eb_grid": parse_grid,
    "rate_grid": parse_grid,
}


def _argparse_type(convert: Callable[[str], Any]) -> Callable[[str], Any]:
    def wrapped(text: str) -> Any:
        try:
            return convert(text)
        except DomainError as e:
            raise argparse.ArgumentTypeError(str(e)) from None

    wrapped.__name__ = convert.__name__
    return wrapped


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one subparser per experiment."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=None, help="key=value run file (flags override it)")
    common.add_argument("--output", default=None, help="Output file (default: stdout or $ANYTIME_PPM_OUTPUT_DIR)")
    common.add_argument("--format", choices=["csv", "json"], default=None, help="Output format (default: csv)")
    common.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING, ERROR or CRITICAL")

    channel = argparse.ArgumentParser(add_help=False)
    channel.add_argument("--eb", type=_argparse_type(parse_number), default=None, help="E_b/N0 (accepts ln2 multiples)")
    channel.add_argument("--rate-fraction", type=_argparse_type(parse_number), default=None, help="R/C_inf")

    trials = argparse.ArgumentParser(add_help=False)
    trials.add_argument("--trials", type=int, default=None, help="Trials per point (default: 10000)")
    trials.add_argument("--seed", type=int, default=None, help="Experiment seed (default: 20050101)")
    trials.add_argument("--workers", type=int, default=None, help="Worker threads; results do not depend on it")

    delays = argparse.ArgumentParser(add_help=False)
    delays.add_argument("--delays", type=_argparse_type(parse_delays), default=None, help="a:b, a:b:step or a,b,c")

    parser = argparse.ArgumentParser(
        description="Anytime PPM - delay exponents of repeated PPM over the infinite-bandwidth AWGN channel",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Exponent table over an energy-per-bit grid
  python main.py theory --eb-grid ln2:8ln2:16

  # Genie-aided error against delay at twice the reliability threshold
  python main.py sim-genie --eb 2ln2 --delays 0:10 --trials 100000

  # Re-fit a stored curve
  python main.py fit results.csv
        """,
    )
    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    theory_parser = subparsers.add_parser("theory", parents=[common], help="Exponent and capacity table")
    grid = theory_parser.add_mutually_exclusive_group()
    grid.add_argument("--eb-grid", type=_argparse_type(parse_grid), default=None, help="lo:hi:count over eb")
    grid.add_argument("--rate-grid", type=_argparse_type(parse_grid), default=None, help="lo:hi:count over R/C_inf")

    subparsers.add_parser(
        "sim-genie", parents=[common, channel, trials, delays], help="Genie-aided suffix error curve"
    )

    anytime_parser = subparsers.add_parser(
        "sim-anytime", parents=[common, channel, trials, delays], help="Anytime decoder error curve"
    )
    anytime_parser.add_argument("--bit-index", type=int, default=None, help="Bit position i (default: 1)")

    block_parser = subparsers.add_parser(
        "sim-block", parents=[common, channel, trials], help="M-ary orthogonal block baseline"
    )
    block_parser.add_argument("--messages", type=int, default=None, help="Number of messages M (default: 16)")

    feedback_parser = subparsers.add_parser(
        "sim-feedback", parents=[common, channel, trials], help="Earliest-error age histogram"
    )
    feedback_parser.add_argument("--stream-length", type=int, default=None, help="Slots per trial (default: 16)")

    cost_parser = subparsers.add_parser(
        "sim-cost", parents=[common, trials, delays], help="Unit-cost DMC burst error curve"
    )
    cost_parser.add_argument("--dmc", default=None, help="Channel description file")
    cost_parser.add_argument("--eb-cost", type=_argparse_type(parse_number), default=None, help="Cost per bit")
    cost_parser.add_argument("--burst", type=int, default=None, help="Bits per burst L (default: 1)")

    fit_parser = subparsers.add_parser("fit", parents=[common], help="Fit an exponent to a stored curve CSV")
    fit_parser.add_argument("curve", help="Curve CSV written by a sim-* command")

    return parser


def merge_parameters(args: argparse.Namespace, file_values: dict[str, str]) -> tuple[dict[str, Any], dict[str, Any]]:
    """
    Combine run-file values with flags; flags win.

    Returns:
        (merged, flags): merged parameters and the flags given explicitly
    """
    unknown = sorted(set(file_values) - set(_CONVERTERS))
    if unknown:
        raise DomainError(f"Unknown key(s) in config file: {', '.join(unknown)}")

    merged: dict[str, Any] = {}
    for key, raw in file_values.items():
        try:
            merged[key] = _CONVERTERS[key](raw)
        except ValueError as e:
            raise DomainError(f"Bad value for {key!r} in config file: {e}") from e

    flags = {
        key: value
        for key, value in vars(args).items()
        if key in _CONVERTERS and value is not None
    }
    merged.update(flags)
    return merged, flags


def build_run_config(command: str, merged: dict[str, Any], settings: Settings) -> RunConfig:
    fields = {k: v for k, v in merged.items() if k not in {"dmc", "log_level", "eb_grid", "rate_grid"}}
    if "dmc" in merged:
        fields["dmc_path"] = merged["dmc"]
    fields.setdefault("workers", settings.workers)
    config = RunConfig(subcommand=command, **fields)
    config.check_caps()
    return config


def _curve_rows(curve: ErrorCurve) -> list[dict[str, Any]]:
    return [p.model_dump() for p in curve.points]


def _fit_or_none(curve: ErrorCurve) -> tuple[Optional[float], Optional[float]]:
    try:
        fit = fit_exponent(curve)
    except InsufficientDataError as e:
        logger.warning(f"No exponent fit: {e}")
        return None, None
    return fit.slope, fit.stderr


def _csv_text(write: Callable[[Any, io.StringIO], None], result: Any) -> str:
    buffer = io.StringIO()
    write(result, buffer)
    return buffer.getvalue()


def theory_table(eb_grid: Optional[list[float]], rate_grid: Optional[list[float]]) -> list[dict[str, Any]]:
    """Exponent table rows; C_inf is 1 so the rate fraction is the rate."""
    if (eb_grid is None) == (rate_grid is None):
        raise DomainError("theory needs exactly one of --eb-grid or --rate-grid")
    if eb_grid is not None:
        pairs = [(LN2 / eb if eb > 0 else math.inf, eb) for eb in eb_grid]
    else:
        pairs = [(r, LN2 / r if r > 0 else math.inf) for r in rate_grid]

    rows = []
    for r, eb in pairs:
        if not (r > 0 and eb > 0) or math.isinf(r) or math.isinf(eb):
            raise DomainError(f"Grid points must be positive and finite, got rate fraction {r!r}, eb {eb!r}")
        e_bit = exponent_eb(eb).value
        rows.append({
            "rate_fraction": r,
            "eb": eb,
            "exponent_rate": exponent_rate(r, 1.0).value,
            "exponent_eb": e_bit,
            "converse_rate": converse_exponent(r, 1.0).value if r < 1 else None,
            "prefix_constant": prefix_constant(e_bit) if e_bit > 0 else None,
        })
    return rows


def _theory_csv(rows: list[dict[str, Any]]) -> str:
    lines = [",".join(THEORY_COLUMNS)]
    for row in rows:
        lines.append(",".join("" if row[c] is None else repr(row[c]) for c in THEORY_COLUMNS))
    return "\n".join(lines) + "\n"


def run_subcommand(config: RunConfig, merged: dict[str, Any], args: argparse.Namespace) -> tuple[str, list[dict[str, Any]], RunRecord]:
    """
    Run one subcommand.

    Returns:
        (csv_text, rows, record): the CSV document, the same rows as dicts,
        and the run record (wall time filled in by the caller)
    """
    command = config.subcommand
    parameters = config.model_dump(exclude={"output", "format"})
    record = RunRecord(subcommand=command, parameters=parameters, seed=config.seed)

    if command == "theory":
        record.seed = None
        record.parameters["eb_grid"] = merged.get("eb_grid")
        record.parameters["rate_grid"] = merged.get("rate_grid")
        rows = theory_table(merged.get("eb_grid"), merged.get("rate_grid"))
        return _theory_csv(rows), rows, record

    if command == "fit":
        record.seed = None
        record.parameters["curve"] = args.curve
        fit = fit_exponent(read_curve_csv(args.curve))
        record.fitted_slope, record.fitted_stderr = fit.slope, fit.stderr
        row = fit.model_dump()
        text = "slope,intercept,stderr,points_used\n" + ",".join(
            repr(row[k]) if isinstance(row[k], float) else str(row[k])
            for k in ("slope", "intercept", "stderr", "points_used")
        ) + "\n"
        return text, [row], record

    if command == "sim-cost":
        dmc = load_dmc_spec(config.dmc_path)
        curve = run_cost_curve(
            dmc, config.eb_cost, config.burst, config.delays, config.trials, config.seed, config.workers
        )
        plan = plan_burst(dmc, config.burst, config.eb_cost)
        record.extra["cost_per_delay_unit"] = config.eb_cost
        record.extra["burst_symbols"] = list(plan.symbol_multiset)
        record.extra["burst_divergence"] = plan.total_divergence
        try:
            capacity = capacity_per_unit_cost(dmc)
            record.extra["capacity_per_unit_cost"] = capacity
            record.extra["cost_threshold"] = cost_threshold(capacity)
        except InfiniteDivergenceError as e:
            logger.warning(f"Capacity per unit cost is unbounded: {e}")
        record.fitted_slope, record.fitted_stderr = _fit_or_none(curve)
        return _csv_text(write_curve_csv, curve), _curve_rows(curve), record

    spec = config.channel_spec()
    record.extra["eb"] = spec.eb
    record.extra["rate_fraction"] = spec.rate_fraction

    if command == "sim-genie":
        curve = run_genie_curve(spec, config.delays, config.trials, config.seed, config.workers)
    elif command == "sim-anytime":
        curve = run_anytime_curve(
            spec, config.bit_index, config.delays, config.trials, config.seed, config.workers
        )
    elif command == "sim-block":
        estimate = run_block_baseline(config.messages, spec, config.trials, config.seed, config.workers)
        return _csv_text(write_block_csv, estimate), [estimate.model_dump()], record
    elif command == "sim-feedback":
        histogram = run_feedback_bandwidth(
            spec, config.stream_length, config.trials, config.seed, config.workers
        )
        record.extra["tail_slope"] = histogram.tail_slope
        record.extra["log2_frequency_slope"] = histogram.log2_frequency_slope
        record.extra["eligible_tail_slope"] = histogram.eligible_tail_slope
        record.extra["candidates"] = histogram.candidates
        record.fitted_slope, record.fitted_stderr = histogram.tail_slope, histogram.tail_stderr
        rows = [
            {"a": a, "count": c, "probability": p, "eligible_probability": q}
            for a, (c, p, q) in enumerate(
                zip(histogram.counts, histogram.probabilities, histogram.eligible_probabilities)
            )
        ]
        return _csv_text(write_histogram_csv, histogram), rows, record
    else:
        raise DomainError(f"Unknown subcommand {command!r}")

    # Bit-slot delays in units of 1/C_inf.
    record.extra["delay_seconds"] = [d / spec.rate_fraction for d in config.delays]
    record.fitted_slope, record.fitted_stderr = _fit_or_none(curve)
    return _csv_text(write_curve_csv, curve), _curve_rows(curve), record


def deliver(config: RunConfig, settings: Settings, csv_text: str, rows: list[dict[str, Any]], record: RunRecord) -> None:
    """Write results to --output, the output directory, or stdout."""
    target: Optional[Path] = None
    if config.output:
        target = Path(config.output)
    elif settings.output_dir:
        target = Path(settings.output_dir) / f"{config.subcommand}.{config.format}"

    if config.format == "json":
        record.extra["results"] = rows
        text = run_record_json(record)
    else:
        text = csv_text

    if target is None:
        sys.stdout.write(text)
        return

    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text, encoding="utf-8")
    logger.info(f"Wrote results to {target}")
    if config.format == "csv":
        write_run_record(record, target.with_suffix(".json"))


def main(argv: Optional[list[str]] = None) -> int:
    """Main CLI entrypoint; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    # Show help if no command provided
    if not args.command:
        parser.print_help(sys.stderr)
        return EXIT_USAGE

    try:
        settings = load_settings()
    except SystemExit as e:
        return int(e.code or EXIT_USAGE)

    started = time.perf_counter()
    try:
        file_values = load_run_file(args.config)
        merged, flags = merge_parameters(args, file_values)
        setup_logger(merged.get("log_level") or settings.log_level, name="anytime_ppm")

        config = build_run_config(args.command, merged, settings)
        logger.info(f"Running {config.subcommand} (seed {config.seed}, {config.workers} worker(s))")

        csv_text, rows, record = run_subcommand(config, merged, args)
        record.config_file = dict(file_values)
        record.flags = json.loads(json.dumps(flags, default=str))
        record.wall_time_seconds = time.perf_counter() - started
        deliver(config, settings, csv_text, rows, record)

    except ValidationError as e:
        logger.error(f"Invalid parameters: {e}")
        return EXIT_USAGE
    except DomainError as e:
        logger.error(str(e))
        return EXIT_USAGE
    except AnytimeCodingError as e:
        logger.error(str(e))
        return EXIT_NUMERIC

    logger.info(f"✓ {config.subcommand} complete in {time.perf_counter() - started:.1f}s")
    return EXIT_OK


def run() -> None:
    """Console-script entry point."""
    sys.exit(main())


if __name__ == "__main__":
    run()
