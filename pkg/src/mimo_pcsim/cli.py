"""CLI entry point for mimo-pcsim."""

import argparse
import asyncio
import sys
from pathlib import Path

from mimo_pcsim.config import SystemConfig, get_settings
from mimo_pcsim.domain.exceptions import ConfigurationError, PcsimError, SolverError
from mimo_pcsim.utils import setup_logging
from mimo_pcsim.workflows import (
    ExperimentRunner,
    get_scenario,
    list_scenarios,
    load_experiment_spec,
    run_experiment,
)

EXIT_FAILURE = 1
EXIT_CONFIG = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mimo-pcsim",
        description="mimo-pcsim - massive-MIMO downlink under pilot-contamination attacks",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    # run command
    run_parser = subparsers.add_parser("run", help="Run a catalog scenario and write its CSV")
    run_parser.add_argument(
        "scenario",
        nargs="?",
        help="Scenario id (see list-scenarios); may come from --config instead",
    )
    run_parser.add_argument("--seed", type=int, help="Root seed (default: settings)")
    run_parser.add_argument("--realizations", type=int, help="Monte Carlo drops per point")
    run_parser.add_argument(
        "--scale",
        choices=["desk", "paper"],
        help="Antenna and realization preset (default: desk)",
    )
    run_parser.add_argument(
        "--unit",
        choices=["se", "mbps"],
        help="Report rates in bit/s/Hz or Mbps (default: se)",
    )
    run_parser.add_argument("--out", type=Path, help="Output CSV path")
    run_parser.add_argument("--config", type=Path, help="TOML experiment manifest")

    # list-scenarios command
    subparsers.add_parser("list-scenarios", help="List the experiment catalog")

    # validate-config command
    validate_parser = subparsers.add_parser(
        "validate-config",
        help="Validate settings and an optional manifest without running",
    )
    validate_parser.add_argument("--config", type=Path, help="TOML experiment manifest")

    return parser


def _run(args: argparse.Namespace) -> None:
    spec = load_experiment_spec(
        args.config,
        scenario=args.scenario,
        seed=args.seed,
        realizations=args.realizations,
        scale=args.scale,
        unit=args.unit,
        output=args.out,
    )
    result = asyncio.run(run_experiment(spec))
    print(f"{spec.scenario}: {len(result.rows)} rows")


def _list() -> None:
    for scenario in list_scenarios():
        values = ", ".join(f"{v:g}" for v in scenario.values)
        print(f"{scenario.id:8s} {scenario.description} [{scenario.sweep.value}: {values}]")


def _validate(args: argparse.Namespace) -> None:
    settings = get_settings()
    if args.config is None:
        config = SystemConfig.from_settings(settings)
        print(f"settings OK: K={config.users}, M={config.antennas}")
        return
    spec = load_experiment_spec(args.config)
    runner = ExperimentRunner(settings)
    points = runner.sweep_points(spec, get_scenario(spec.scenario))
    print(f"{args.config} OK: {spec.scenario}, {len(points)} sweep points")


def main(argv: list[str] | None = None) -> int:
    """Main CLI entry point; returns the process exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)

    # Setup logging
    settings = get_settings()
    logger = setup_logging(settings.log_level)

    try:
        if args.command == "run":
            _run(args)
        elif args.command == "list-scenarios":
            _list()
        elif args.command == "validate-config":
            _validate(args)
        else:
            parser.print_help()
    except ConfigurationError as exc:
        logger.error("Invalid configuration", extra={"error": str(exc)})
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SolverError as exc:
        logger.error("Solver failure", extra={"error": str(exc), "diagnostics": exc.diagnostics})
        print(f"solver error: {exc} ({exc.diagnostics})", file=sys.stderr)
        return EXIT_FAILURE
    except PcsimError as exc:
        logger.error("Run failed", extra={"error": str(exc)})
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    return 0


if __name__ == "__main__":
    sys.exit(main())
