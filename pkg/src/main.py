#!/usr/bin/env python3
"""
Cavity magnomechanics steady-state entanglement simulator
Command line entry point: sweep, figure and check
"""

import sys
import logging
import logging.config
import argparse
from pathlib import Path
from typing import Optional, List, Dict, Any

# Add src to path for imports
sys.path.insert(0, str(Path(__file__).parent))

import yaml
from backend.errors import SimulationError, InputError, ConfigError
from backend.services import (
    ConfigService, SweepService, ExportService, FigureService, CheckService
)
from backend.services.figure_service import FIGURES
from backend.services.export_service import FORMATS

logger = logging.getLogger("magnomech")


def setup_logging(config: Dict[str, Any], debug: bool = False) -> None:
    """Setup logging configuration."""
    logging_config = config.get('logging', {})

    # Create logs directory
    log_dir = Path(logging_config.get('directory', 'logs'))
    log_dir.mkdir(parents=True, exist_ok=True)

    config_file = Path(logging_config.get('config_file', 'config/logging.yaml'))
    if config_file.exists():
        with open(config_file, 'r', encoding='utf-8') as f:
            logging.config.dictConfig(yaml.safe_load(f))
    else:
        level = getattr(logging, logging_config.get('level', 'INFO').upper())
        logging.basicConfig(
            level=level,
            format='%(asctime)s [%(levelname)s] %(name)s: %(message)s',
            handlers=[
                logging.FileHandler(log_dir / 'app.log'),
                logging.StreamHandler(sys.stdout)
            ]
        )

    if debug:
        for handler in logging.getLogger("magnomech").handlers + logging.getLogger().handlers:
            if isinstance(handler, logging.StreamHandler) and not isinstance(handler, logging.FileHandler):
                handler.setLevel(logging.DEBUG)
        logging.getLogger("magnomech").setLevel(logging.DEBUG)
        logging.getLogger("backend").setLevel(logging.DEBUG)


class CliParser(argparse.ArgumentParser):
    """Usage errors exit with the input-error code."""

    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(InputError.exit_code, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = CliParser(
        prog='magnomech',
        description='Steady-state entanglement in a cavity magnomechanical system'
    )
    parser.add_argument('--config', type=Path, default=Path('config/config.yaml'),
                        help='Application settings (YAML)')
    parser.add_argument('--debug', action='store_true', help='Enable debug logging')

    subparsers = parser.add_subparsers(dest='command', required=True)

    def add_output_flags(sub: argparse.ArgumentParser) -> None:
        sub.add_argument('--format', choices=FORMATS, default=None, help='Output format')
        sub.add_argument('--out', type=Path, default=None,
                         help='Output file (sweep) or directory (figure)')
        sub.add_argument('--dump-matrices', type=Path, default=None, metavar='DIR',
                         help='Write A and D of every point to DIR')
        sub.add_argument('--jobs', type=int, default=None, help='Parallel worker processes')

    sweep = subparsers.add_parser('sweep', help='Run a parameter sweep from a run configuration')
    sweep.add_argument('run_config', type=Path, help='TOML, JSON or YAML run configuration')
    add_output_flags(sweep)

    figure = subparsers.add_parser('figure', help='Reproduce a figure dataset')
    figure.add_argument('figure_id', help=f"One of {', '.join(FIGURES)}")
    add_output_flags(figure)

    subparsers.add_parser('check', help='Run the invariant check suite')
    return parser


def run_sweep(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    sweep_config = config.get('sweep', {})
    config_service = ConfigService()
    run = config_service.load_run_config(args.run_config)

    fmt = args.format or sweep_config.get('format', 'csv')
    jobs = args.jobs or sweep_config.get('jobs', 1)
    out = args.out or Path(sweep_config.get('output_dir', 'results')) / f"{args.run_config.stem}.{fmt}"

    sweep_service = SweepService(config_service.numerics(config), jobs=jobs)
    rows = sweep_service.run_sweep(run.sweep, run.system, run.drive, dump_dir=args.dump_matrices)
    ExportService().emit(rows, fmt, out, run.sweep.columns)
    return 0


def run_figure(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    sweep_config = config.get('sweep', {})
    fmt = args.format or sweep_config.get('format', 'csv')
    jobs = args.jobs or sweep_config.get('jobs', 1)
    out_dir = args.out or Path(sweep_config.get('output_dir', 'results'))

    sweep_service = SweepService(ConfigService.numerics(config), jobs=jobs)
    figure_service = FigureService(sweep_service=sweep_service)
    result = figure_service.reproduce_figure(args.figure_id, out_dir, fmt, dump_dir=args.dump_matrices)
    for name, T_death in result.death_temperatures.items():
        print(f"{args.figure_id}/{name}: death temperature "
              f"{'not reached' if T_death is None else f'{T_death:.4g} K'}")
    return 0


def run_check(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    checker = CheckService(ConfigService.numerics(config))
    passed, failed = checker.run_all_checks()
    for name, result in checker.results.items():
        status = "PASS" if result['status'] == 'success' else "FAIL"
        print(f"{status} {name}: {result['details']}")
    print(f"{passed} passed, {failed} failed")
    return 0 if failed == 0 else 2


COMMANDS = {
    'sweep': run_sweep,
    'figure': run_figure,
    'check': run_check,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Main application entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        config = ConfigService().load_app_config(args.config)
    except ConfigError as e:
        print(f"Error: {e}", file=sys.stderr)
        return InputError.exit_code

    setup_logging(config, args.debug)
    app = config.get('application', {})
    logger.info(f"Starting {app.get('name', 'magnomech')} {app.get('version', '')}".rstrip())

    try:
        return COMMANDS[args.command](args, config)
    except SimulationError as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"Error: {e}", file=sys.stderr)
        return e.exit_code
    except KeyboardInterrupt:
        logger.info("Interrupted by user")
        return 130


if __name__ == '__main__':
    sys.exit(main())
