#!/usr/bin/env python3
"""
Fractal Fidelity command line
Main entry point for the fidelity, fracdim, sweep, tomography, husimi, synth and
circuit subcommands
"""

import argparse
import json
import sys
from typing import Any, Dict, List, Optional

from fractal_fidelity import __version__
from fractal_fidelity.experiments.orchestrator import ExperimentOrchestrator
from fractal_fidelity.storage.run_config import build_run_config, load_config_file
from fractal_fidelity.utils.config import config
from fractal_fidelity.utils.errors import (
    FractalFidelityError,
    InvalidConfigError,
    JobFailedError,
    SignalTooShortError,
)
from fractal_fidelity.utils.logger import set_level, setup_logger

logger = setup_logger(__name__)

EXIT_OK = 0
EXIT_INVALID_CONFIG = 2
EXIT_JOB_FAILED = 3

INITIAL_FIELDS = {"initial_kind": "kind", "theta0": "theta0", "n0": "n0", "sigma_n": "sigma_n"}
CLI_ONLY = {"config", "log_level", "command"}


def _common_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON run configuration (flags override its values)")
    parser.add_argument("--output-dir", dest="output_dir", help="Output directory")
    parser.add_argument("--workers", type=int, help="Worker processes")
    parser.add_argument("--seed", type=int, help="Master seed")
    parser.add_argument("--log-level", dest="log_level", help="Console log level")
    parser.add_argument("--n-q", dest="n_q", type=int, help="Number of qubits")
    parser.add_argument("--K", dest="K", type=float, help="Chaos parameter K = kT")


def _evolution_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--epsilon", type=float, help="Imperfection strength")
    parser.add_argument("--level-spacing", dest="level_spacing", type=float, help="Mean level spacing Delta")
    parser.add_argument("--t-max", dest="t_max", type=int, help="Number of map steps")
    parser.add_argument("--initial-kind", dest="initial_kind", choices=["gaussian", "basis"])
    parser.add_argument("--theta0", type=float, help="Packet centre angle in [0, 2 pi)")
    parser.add_argument("--n0", type=float, help="Packet centre momentum")
    parser.add_argument("--sigma-n", dest="sigma_n", type=float, help="Packet momentum width")


def _analysis_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--t-star", dest="t_star", type=int, help="Transient override")
    parser.add_argument("--l-min", dest="l_min", type=float, help="Fit window lower edge")
    parser.add_argument("--l-max", dest="l_max", type=float, help="Fit window upper edge")
    parser.add_argument(
        "--detrend", action="store_true", default=None, help="Subtract a fitted exponential decay"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fractal-fidelity",
        description="Quantum sawtooth map fidelity and fractal-dimension toolkit",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    fidelity = sub.add_parser("fidelity", help="Fidelity series F(t)")
    _common_arguments(fidelity)
    _evolution_arguments(fidelity)
    fidelity.add_argument("--t-star", dest="t_star", type=int, help="Transient override")
    fidelity.add_argument("--histogram", action="store_true", default=None, help="Write the dF histogram")
    fidelity.add_argument("--bins", dest="histogram_bins", type=int, help="Histogram bins")

    fracdim = sub.add_parser("fracdim", help="Fractal dimension of F(t) or of a CSV signal")
    _common_arguments(fracdim)
    _evolution_arguments(fracdim)
    _analysis_arguments(fracdim)
    fracdim.add_argument("--input", dest="input_csv", help="External signal CSV")
    fracdim.add_argument("--column", help="Signal column of the CSV")

    sweep = sub.add_parser("sweep", help="D over K, epsilon and realizations")
    _common_arguments(sweep)
    _evolution_arguments(sweep)
    _analysis_arguments(sweep)
    sweep.add_argument("--K-list", dest="K_list", type=float, nargs="+")
    sweep.add_argument("--epsilon-list", dest="epsilon_list", type=float, nargs="+")
    sweep.add_argument("--n-q-list", dest="n_q_list", type=int, nargs="+")
    sweep.add_argument("--realizations", type=int, help="Disorder realizations N_R")

    tomography = sub.add_parser("tomography", help="D over a G x G grid of initial conditions")
    _common_arguments(tomography)
    _evolution_arguments(tomography)
    tomography.add_argument("--l-min", dest="l_min", type=float)
    tomography.add_argument("--l-max", dest="l_max", type=float)
    tomography.add_argument("--G", dest="G", type=int, help="Grid resolution")
    tomography.add_argument("--seed-policy", dest="seed_policy", choices=["shared", "per_cell"])
    tomography.add_argument("--retain-series", dest="retain_series", action="store_true", default=None)
    tomography.add_argument("--husimi-grid", dest="husimi_grid", type=int)
    tomography.add_argument("--husimi-steps", dest="husimi_steps", type=int)

    husimi = sub.add_parser("husimi", help="Husimi distribution of an evolved packet")
    _common_arguments(husimi)
    _evolution_arguments(husimi)
    husimi.add_argument("--grid", dest="husimi_grid", type=int)
    husimi.add_argument("--steps", dest="husimi_steps", type=int)

    synth = sub.add_parser("synth", help="Synthetic validation signal")
    _common_arguments(synth)
    synth.add_argument("--signal", choices=["line", "sinusoid", "weierstrass"])
    synth.add_argument("--length", type=int)
    synth.add_argument("--slope", type=float)
    synth.add_argument("--period", type=float)
    synth.add_argument("--amplitude", type=float)
    synth.add_argument("--a", dest="a", type=float)
    synth.add_argument("--b", dest="b", type=float)

    circuit = sub.add_parser("circuit", help="Gate-list dump of one Floquet period")
    _common_arguments(circuit)
    circuit.add_argument(
        "--include-global-phase", dest="include_global_phase", action="store_true", default=None
    )

    return parser


def overrides_from_args(args: argparse.Namespace) -> Dict[str, Any]:
    """Flags the user actually gave, shaped like RunConfig fields"""
    values = {k: v for k, v in vars(args).items() if v is not None and k not in CLI_ONLY}
    initial = {INITIAL_FIELDS[k]: values.pop(k) for k in list(values) if k in INITIAL_FIELDS}
    if initial:
        values["initial"] = initial
    return values


def main(argv: Optional[List[str]] = None) -> int:
    """Run one subcommand; returns the process exit code"""
    args = build_parser().parse_args(argv)
    if args.log_level:
        set_level(args.log_level)

    try:
        file_values = load_config_file(args.config) if args.config else None
        run_config = build_run_config(args.command, file_values, overrides_from_args(args))
        config.validate()
        result = ExperimentOrchestrator().run(run_config)
    except (InvalidConfigError, SignalTooShortError) as e:
        logger.error(f"Invalid configuration: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID_CONFIG
    except JobFailedError as e:
        print(json.dumps(e.result, indent=2, default=str))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_JOB_FAILED
    except FractalFidelityError as e:
        logger.error(f"Run failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_JOB_FAILED

    if args.command == "circuit":
        print(result["data"]["text"], end="")
    else:
        print(json.dumps(result, indent=2, default=str))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
