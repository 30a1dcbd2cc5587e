"""Command-line front end.

Subcommands: ``rank`` (numerical rank of one realisation), ``rate`` (one
rate evaluation), ``sweep`` (run a scenario file), ``plan`` (distributed
placement report), ``reproduce`` (built-in presets to CSV).

Exit codes: 0 success, 2 configuration error, 3 numerical/infeasibility
error, 4 I/O error.  ``RISDOF_OUTPUT_DIR`` overrides the default output
directory.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from .channel import ArrayGeometry
from .harness import (ConfigError, evaluate_point, parse_scenario_file,
                      records_to_csv_bytes, run_scenario, run_scenarios,
                      summarize, summary_to_csv_bytes, trial_seed,
                      write_atomic)
from .numerics import numerical_rank, svd
from .placement import (InfeasibleAngleError, format_plan_report,
                        plan_composite, plan_distributed,
                        restricted_condition_number)
from .presets import (DECLARED_DEFAULTS, PRESET_NAMES, preset_baseline,
                      preset_scenarios)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4


def _output_dir(explicit):
    if explicit:
        return explicit
    return os.environ.get("RISDOF_OUTPUT_DIR", ".")


def _echo_defaults(stream=None):
    stream = stream if stream is not None else sys.stderr
    print("# declared simulation defaults:", file=stream)
    for key, value in DECLARED_DEFAULTS.items():
        print(f"#   {key} = {value}", file=stream)


def _metadata_text(scenarios) -> str:
    """Provenance block written next to every CSV: assumed defaults plus the
    per-scenario seed and config fingerprint."""
    lines = ["[declared_defaults]"]
    lines += [f"{key} = {value}" for key, value in DECLARED_DEFAULTS.items()]
    lines.append("")
    lines.append("[scenarios]")
    for cfg in scenarios:
        lines.append(f"{cfg.scenario_id}: seed={cfg.seed} "
                     f"fingerprint={cfg.fingerprint()} "
                     f"power_sum_watts={cfg.power_sum:g} "
                     f"design={cfg.design_labels}")
    return "\n".join(lines) + "\n"


def _load_scenario(args):
    cfg = parse_scenario_file(args.config)
    if args.seed is not None:
        from dataclasses import replace
        cfg = replace(cfg, seed=args.seed)
    return cfg


def cmd_rank(args) -> int:
    cfg = _load_scenario(args)
    from .harness import apply_sweep_value, build_channels, composite_channel, site_layout
    from .harness import _surface_phases  # single-realisation inspection
    point = apply_sweep_value(cfg, cfg.sweep_values[0])
    seed = trial_seed(cfg, 0, 0)
    channels = build_channels(point, seed)
    surfaces = _surface_phases(point, channels, site_layout(point))
    effective = composite_channel(channels, surfaces)
    rank = numerical_rank(effective)
    sigmas = svd(effective).singular_values
    print(f"scenario: {cfg.scenario_id}")
    print(f"seed: {seed}")
    print(f"numerical_rank: {rank}")
    print("singular_values: " + " ".join(f"{s:.6e}" for s in sigmas))
    return EXIT_OK


def cmd_rate(args) -> int:
    cfg = _load_scenario(args)
    from .harness import apply_sweep_value
    point = apply_sweep_value(cfg, cfg.sweep_values[0])
    seed = trial_seed(cfg, 0, 0)
    result = evaluate_point(point, seed)
    print(f"scenario: {cfg.scenario_id}")
    print(f"seed: {seed}")
    print(f"config_fingerprint: {result.config_fingerprint}")
    print(f"rate_bits_per_s_per_hz: {result.rate:.12g}")
    print(f"effective_rank: {result.effective_rank}")
    snrs = " ".join(f"{s:.4f}" for s in result.per_stream_snr_db)
    print(f"per_stream_snr_db: {snrs}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    cfg = _load_scenario(args)
    records = run_scenario(cfg, workers=args.workers)
    out_dir = _output_dir(args.out)
    data_path = os.path.join(out_dir, f"{cfg.scenario_id}.csv")
    write_atomic(data_path, records_to_csv_bytes(records))
    write_atomic(os.path.join(out_dir, f"{cfg.scenario_id}_metadata.txt"),
                 _metadata_text([cfg]).encode())
    _echo_defaults()
    print(f"# seed = {cfg.seed}, fingerprint = {cfg.fingerprint()}", file=sys.stderr)
    print(data_path)
    return EXIT_OK


def cmd_plan(args) -> int:
    bs_geom = ArrayGeometry.half_wavelength(args.m)
    user_geom = ArrayGeometry.half_wavelength(args.k)
    plan = plan_distributed(args.k, args.direct_rank, bs_geom, user_geom,
                            total_elements=args.elements)
    composite = plan_composite(plan, bs_geom, user_geom)
    rank = numerical_rank(composite)
    cond = restricted_condition_number(composite, rank)
    report = format_plan_report(plan, achieved_rank=rank, condition_number=cond)
    if args.out:
        write_atomic(args.out, report.encode())
        print(args.out)
    else:
        print(report, end="")
    return EXIT_OK


def cmd_reproduce(args) -> int:
    scenarios = preset_scenarios(args.preset, seed=args.seed)
    records = run_scenarios(scenarios, workers=args.workers)
    rows = summarize(records, preset_baseline(args.preset))
    out_dir = _output_dir(args.out)
    data_path = os.path.join(out_dir, f"{args.preset}_data.csv")
    summary_path = os.path.join(out_dir, f"{args.preset}_summary.csv")
    write_atomic(data_path, records_to_csv_bytes(records))
    write_atomic(summary_path, summary_to_csv_bytes(rows))
    write_atomic(os.path.join(out_dir, f"{args.preset}_metadata.txt"),
                 _metadata_text(scenarios).encode())
    _echo_defaults()
    seeds = sorted({cfg.seed for cfg in scenarios})
    prints = ", ".join(f"{cfg.scenario_id}:{cfg.fingerprint()}" for cfg in scenarios)
    print(f"# seed = {seeds}, fingerprints = {prints}", file=sys.stderr)
    print(data_path)
    print(summary_path)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="risdof",
        description="Link-level simulator for surface-aided rank-deficient "
                    "MIMO channels")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, config=True):
        if config:
            p.add_argument("config", help="scenario file (key/value sections)")
        p.add_argument("--seed", type=int, default=None, help="seed override")
        p.add_argument("--workers", type=int, default=1,
                       help="parallel trial workers (output is identical at "
                            "any worker count)")
        p.add_argument("--out", default=None, help="output directory")

    p_rank = sub.add_parser("rank", help="numerical rank of one realisation")
    add_common(p_rank)
    p_rank.set_defaults(func=cmd_rank)

    p_rate = sub.add_parser("rate", help="one achievable-rate evaluation")
    add_common(p_rate)
    p_rate.set_defaults(func=cmd_rate)

    p_sweep = sub.add_parser("sweep", help="run a scenario file to CSV")
    add_common(p_sweep)
    p_sweep.set_defaults(func=cmd_sweep)

    p_plan = sub.add_parser("plan", help="distributed placement report")
    p_plan.add_argument("--k", type=int, required=True, help="target rank")
    p_plan.add_argument("--direct-rank", type=int, default=1, choices=(0, 1))
    p_plan.add_argument("--m", type=int, default=128, help="BS antennas")
    p_plan.add_argument("--elements", type=int, default=600,
                        help="total surface elements to split across sites")
    p_plan.add_argument("--out", default=None, help="report file")
    p_plan.set_defaults(func=cmd_plan)

    p_rep = sub.add_parser("reproduce", help="run a built-in preset to CSV")
    p_rep.add_argument("preset", choices=PRESET_NAMES)
    p_rep.add_argument("--seed", type=int, default=None)
    p_rep.add_argument("--workers", type=int, default=1)
    p_rep.add_argument("--out", default=None, help="output directory")
    p_rep.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (InfeasibleAngleError,) as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (np.linalg.LinAlgError, ArithmeticError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
