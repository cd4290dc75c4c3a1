"""Command-line interface.

Exit codes: 0 success, 2 validation error (configuration, datasets,
arguments), 3 runtime error.
"""
from __future__ import annotations

import argparse
import logging
import sys

from .core.model import SimulationError
from .io.commands import CommandError, cmd_calibrate, cmd_predict, cmd_simulate, cmd_verify
from .io.datasets import DatasetError
from .io.runconfig import ConfigError, load_config
from .parallel import DEFAULT_WORKERS_ENV

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_RUNTIME = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="abckit",
        description=(
            "Likelihood-free calibration: adaptive SMC-ABC over implicit "
            "models, with a 2D tumour growth simulator and conjugate "
            "oracle models."
        ),
        epilog=(
            f"The {DEFAULT_WORKERS_ENV} environment variable sets the "
            "default worker count when the config does not."
        ),
    )
    parser.add_argument("-v", "--verbose", action="store_true",
                        help="log sampler progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("calibrate", help="run SMC-ABC and write the posterior population")
    p.add_argument("config", help="run-configuration file")
    p.add_argument("--seed", type=int, default=None, help="override the config seed")

    p = sub.add_parser("simulate", help="single forward model run to a trajectory CSV")
    p.add_argument("config", help="run-configuration file")
    p.add_argument("--seed", type=int, default=None, help="override the config seed")

    p = sub.add_parser("predict", help="posterior-predictive bands from a population file")
    p.add_argument("config", help="run-configuration file")
    p.add_argument("--population", required=True, help="population.csv from calibrate")
    p.add_argument("--draws", required=True, type=int, help="number of predictive draws")
    p.add_argument("--seed", type=int, default=None, help="override the config seed")

    p = sub.add_parser("verify", help="re-run an output directory and compare bytes")
    p.add_argument("output_dir", help="directory containing metadata.json")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        if args.command == "verify":
            compared = cmd_verify(args.output_dir)
            for name in compared:
                print(f"verified {name}: identical")
            print(f"OK: {len(compared)} file(s) reproduce byte-for-byte")
            return EXIT_OK
        config = load_config(args.config, seed_override=args.seed)
        if args.command == "calibrate":
            out = cmd_calibrate(config)
            print(f"calibration outputs written to {out}")
        elif args.command == "simulate":
            out = cmd_simulate(config)
            print(f"trajectory written to {out}")
        elif args.command == "predict":
            out = cmd_predict(config, args.population, args.draws)
            print(f"predictive bands written to {out}")
        return EXIT_OK
    except (ConfigError, DatasetError) as exc:
        if isinstance(exc, ConfigError):
            for problem in exc.problems:
                print(f"error: {problem}", file=sys.stderr)
        else:
            print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (CommandError, SimulationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
