"""Command-line interface.

Exit codes: 0 success, 1 validation or input error, 2 sweep finished with
failing points, 3 capacity iteration did not converge.
"""

import argparse
import json
import sys

from . import harness, motility
from .channel import ChannelPmf
from .config import ConfigError, load_config, require_valid
from .energy import power, total_energy
from .infotheory import ConvergenceError, blahut_arimoto

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_PARTIAL = 2
EXIT_NO_CONVERGENCE = 3


def _common_flags():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH",
                        help="design-point config file (JSON)")
    common.add_argument("--seed", type=int, metavar="U64",
                        help="override rng_seed from the config")
    common.add_argument("--trials", type=int, metavar="N",
                        help="override trials_per_symbol from the config")
    common.add_argument("--out", metavar="PATH",
                        help="output file (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="json",
                        help="output format where applicable")
    common.add_argument("--workers", type=int, default=1, metavar="N",
                        help="concurrent simulation workers")
    return common


def build_parser():
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="atmc",
        description="Vesicle transport channel simulator and "
                    "energy-efficiency design tool")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("energy", parents=[common],
                       help="energy breakdown for a config at assumed means")
    p.add_argument("--mean-x", type=float, required=True,
                   help="mean released-vesicle count E[X]")
    p.add_argument("--mean-y", type=float, required=True,
                   help="mean delivered-vesicle count E[Y]")

    p = sub.add_parser("simulate", parents=[common],
                       help="run one symbol interval")
    p.add_argument("--x", type=int, required=True,
                   help="number of vesicles released")
    p.add_argument("--trial", type=int, default=0, help="trial index")
    p.add_argument("--traj", metavar="PATH",
                   help="also dump the per-step trajectory CSV here")

    sub.add_parser("estimate-channel", parents=[common],
                   help="Monte Carlo estimate of P(y|x), written as JSON")

    p = sub.add_parser("capacity", parents=[common],
                       help="capacity of a stored channel matrix")
    p.add_argument("pmf_file", help="channel matrix file (JSON)")
    p.add_argument("--tol", type=float, default=1e-9,
                   help="capacity-gap stopping tolerance, bits")
    p.add_argument("--max-iter", type=int, default=10000)

    p = sub.add_parser("evaluate", parents=[common],
                       help="full design-point evaluation")
    p.add_argument("--cache-dir", metavar="DIR",
                   help="reuse/store channel estimates here")
    p.add_argument("--tol", type=float, default=1e-6,
                   help="capacity-gap stopping tolerance, bits")
    p.add_argument("--max-iter", type=int, default=50000)

    p = sub.add_parser("sweep", parents=[common],
                       help="evaluate a parameter grid")
    p.add_argument("--spec", metavar="PATH",
                   help="sweep spec file (JSON with base + sweep lists)")
    p.add_argument("--preset", choices=sorted(harness.PRESETS),
                   help="named figure-style grid over the --config base")
    p.add_argument("--cache-dir", metavar="DIR",
                   help="reuse/store channel estimates here")
    p.add_argument("--tol", type=float, default=1e-6,
                   help="capacity-gap stopping tolerance, bits")
    p.add_argument("--max-iter", type=int, default=50000)
    p.add_argument("--quiet", action="store_true",
                   help="suppress per-point progress on stderr")

    return parser


def _load_config(args, required=True):
    if args.config is None:
        if required:
            raise ValueError("--config is required for this command")
        return None
    config = load_config(args.config)
    overrides = {}
    if args.seed is not None:
        overrides["rng_seed"] = args.seed
    if args.trials is not None:
        overrides["trials_per_symbol"] = args.trials
    if overrides:
        config = config.replace(**overrides)
    return require_valid(config)


def _write(text, path):
    if path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")


def _json(obj):
    return json.dumps(obj, indent=2)


def cmd_energy(args):
    config = _load_config(args)
    breakdown = total_energy(config, args.mean_x, args.mean_y)
    payload = breakdown.to_dict()
    payload["power_w"] = power(breakdown.total, config.symbol_duration)
    _write(_json(payload), args.out)
    return EXIT_OK


def cmd_simulate(args):
    config = _load_config(args)
    if args.traj:
        trace = motility.run_symbol_detailed(config, args.x, args.trial)
        trace.write_csv(args.traj)
        outcome = trace.outcome
    else:
        outcome = motility.run_symbol(config, args.x, args.trial)
    _write(_json({"x_sent": outcome.x_sent,
                  "y_received": outcome.y_received,
                  "trial_index": outcome.trial_index}), args.out)
    return EXIT_OK


def cmd_estimate_channel(args):
    config = _load_config(args)
    channel = motility.estimate_channel(config, workers=args.workers)
    _write(json.dumps(channel.to_dict()), args.out)
    return EXIT_OK


def cmd_capacity(args):
    channel = ChannelPmf.load(args.pmf_file)
    capacity, p_x, iterations = blahut_arimoto(channel, tol=args.tol,
                                               max_iter=args.max_iter)
    _write(_json({"capacity_bits": capacity,
                  "p_x": [float(v) for v in p_x],
                  "iterations": iterations}), args.out)
    return EXIT_OK


def cmd_evaluate(args):
    config = _load_config(args)
    result = harness.evaluate_design(config, workers=args.workers,
                                     cache_dir=args.cache_dir,
                                     ba_tol=args.tol,
                                     ba_max_iter=args.max_iter)
    _write(_json(result.to_dict()), args.out)
    return EXIT_OK


def cmd_sweep(args):
    if (args.spec is None) == (args.preset is None):
        raise ValueError("sweep needs exactly one of --spec or --preset")
    if args.spec is not None:
        with open(args.spec) as fh:
            spec = harness.SweepSpec.from_dict(json.load(fh))
    else:
        base = _load_config(args)
        spec = harness.preset_sweep(args.preset, base)
    if args.seed is not None or args.trials is not None:
        overrides = {}
        if args.seed is not None:
            overrides["rng_seed"] = args.seed
        if args.trials is not None:
            overrides["trials_per_symbol"] = args.trials
        spec = harness.SweepSpec.from_dict({
            "base": spec.base.replace(**overrides).to_dict(),
            "sweep": dict(spec.swept()),
        })

    def on_point(index, total, values):
        if not args.quiet:
            label = ", ".join(f"{k}={v}" for k, v in values.items()) or "base"
            print(f"[{index + 1}/{total}] {label}", file=sys.stderr)

    results, failures = harness.run_sweep(spec, workers=args.workers,
                                          cache_dir=args.cache_dir,
                                          on_point=on_point,
                                          ba_tol=args.tol,
                                          ba_max_iter=args.max_iter)
    for failure in failures:
        print(f"point {failure['index']} {failure['point']}: "
              f"{failure['error']}", file=sys.stderr)
    if results:
        if args.out is None:
            if args.format == "csv":
                harness.write_csv(results, sys.stdout)
            else:
                harness.write_json(results, sys.stdout)
        else:
            harness.emit(results, args.format, args.out)
    return EXIT_PARTIAL if failures else EXIT_OK


COMMANDS = {
    "energy": cmd_energy,
    "simulate": cmd_simulate,
    "estimate-channel": cmd_estimate_channel,
    "capacity": cmd_capacity,
    "evaluate": cmd_evaluate,
    "sweep": cmd_sweep,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; 2 is reserved for partial sweeps
        return 0 if exc.code == 0 else EXIT_INVALID
    try:
        return COMMANDS[args.command](args)
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except (ConfigError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
