"""Command line entry point: ``beamtrain simulate`` and ``beamtrain selftest``."""
import argparse
import logging
import sys

from .config import DEFAULT_SNR_GRID, load_config, snr_grid
from .errors import ConfigurationError, NumericalError
from .output import emit_csv, emit_plot, format_csv
from .selftest import run_selftest
from .sweep import run_sweep

EXIT_OK, EXIT_CONFIG, EXIT_RUNTIME, EXIT_IO = 0, 1, 2, 3


def build_parser():
    parser = argparse.ArgumentParser(prog="beamtrain", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run a COM vs 802.11ad SNR sweep")
    sim.add_argument("--config", help="flat 'key = value' config file")
    sim.add_argument("--snr-min", type=float, help="dB (default 0)")
    sim.add_argument("--snr-max", type=float, help="dB (default 20)")
    sim.add_argument("--snr-step", type=float, help="dB (default 5)")
    sim.add_argument("--mc", type=int, help="Monte Carlo iterations per SNR point")
    sim.add_argument("--seed", type=int, help="master seed (unsigned 64-bit)")
    sim.add_argument("--mode", choices=("gaussian", "pilot"), help="training signal")
    sim.add_argument("--norm", choices=("raw", "unit-norm", "unit-modulus"),
                     help="normalization of the COM estimate")
    sim.add_argument("--out", help="CSV path (default: stdout)")
    sim.add_argument("--plot", help="SVG or PDF path for the capacity plot")
    sim.add_argument("--workers", type=int, default=1)

    sub.add_parser("selftest", help="run the built-in invariant checks")
    return parser


def _config_from_args(args):
    overrides = {"mc_iterations": args.mc, "master_seed": args.seed,
                 "signal_mode": args.mode, "normalization_mode": args.norm}
    if any(v is not None for v in (args.snr_min, args.snr_max, args.snr_step)):
        lo = 0.0 if args.snr_min is None else args.snr_min
        hi = DEFAULT_SNR_GRID[-1] if args.snr_max is None else args.snr_max
        step = 5.0 if args.snr_step is None else args.snr_step
        overrides["snr_grid_db"] = snr_grid(lo, hi, step)
    return load_config(args.config, overrides)


def _simulate(args):
    if args.workers < 1:
        raise ConfigurationError(f"--workers must be >= 1, got {args.workers}")
    cfg = _config_from_args(args)
    result = run_sweep(cfg, workers=args.workers)
    if args.out:
        emit_csv(result, args.out)
    else:
        sys.stdout.write(format_csv(result))
    if args.plot:
        emit_plot(result, args.plot)


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "selftest":
            return EXIT_OK if run_selftest() else EXIT_RUNTIME
        _simulate(args)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (NumericalError, ArithmeticError) as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
