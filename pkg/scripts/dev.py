#!/usr/bin/env python3
"""
Development script for the magnomech simulator
Environment setup, tests, lint, invariant checks and figure datasets
"""

import os
import sys
import subprocess
from pathlib import Path
import argparse

FIGURE_IDS = ['fig2', 'fig3a', 'fig3b', 'fig4', 'fig5a', 'fig5b', 'fig6']
MAIN = ['src/main.py']


def run_command(cmd, check=True):
    """Run a command, stopping the script on failure unless check is False."""
    cmd = [str(part) for part in cmd]
    print(f"$ {' '.join(cmd)}")
    result = subprocess.run(cmd)

    if check and result.returncode != 0:
        print(f"Command failed with exit code {result.returncode}")
        sys.exit(result.returncode)

    return result


def venv_python():
    if sys.platform == 'win32':
        return Path('venv/Scripts/python.exe')
    return Path('venv/bin/python')


def setup_dev_environment():
    """Create venv, install runtime and dev requirements, make output folders."""
    if not Path('venv').exists():
        print("Creating virtual environment...")
        run_command([sys.executable, '-m', 'venv', 'venv'])

    python = venv_python()
    run_command([python, '-m', 'pip', 'install', '--upgrade', 'pip'])
    for requirements in ('requirements.txt', 'requirements-dev.txt'):
        run_command([python, '-m', 'pip', 'install', '-r', requirements])
    run_command([python, '-m', 'pip', 'install', '-e', '.'])

    for folder in ('logs', 'results'):
        Path(folder).mkdir(exist_ok=True)
    return python


def run_tests(fast=False):
    cmd = [sys.executable, '-m', 'pytest']
    if fast:
        # Figure sweeps and long time integrations
        cmd += ['-m', 'not slow', '--no-cov']
    run_command(cmd)


def run_check(debug=False):
    """Run the built-in invariant suite (exit code 2 when a check fails)."""
    flags = ['--debug'] if debug else []
    run_command([sys.executable] + MAIN + flags + ['check'])


def run_figures(out_dir, jobs, figure_ids):
    for figure_id in figure_ids:
        run_command([sys.executable] + MAIN + ['figure', figure_id, '--out', out_dir, '--jobs', jobs])
    print(f"✓ {len(figure_ids)} figure dataset(s) written to {out_dir}/")


def lint_code():
    failures = 0
    for cmd in (
        ['black', 'src/', 'tests/', 'scripts/', '--check'],
        ['isort', 'src/', 'tests/', 'scripts/', '--check-only'],
        ['flake8', 'src/', 'tests/', '--max-line-length=110'],
        ['mypy', 'src/backend', '--ignore-missing-imports'],
    ):
        if run_command([sys.executable, '-m'] + cmd, check=False).returncode != 0:
            failures += 1
            print(f"✗ {cmd[0]} reported problems")
        else:
            print(f"✓ {cmd[0]} passed")
    return failures


def main():
    parser = argparse.ArgumentParser(description='Magnomech development script')
    parser.add_argument('action', choices=['setup', 'test', 'lint', 'check', 'figures'],
                        help='Action to perform')
    parser.add_argument('--debug', action='store_true', help='Debug logging for check')
    parser.add_argument('--fast', action='store_true', help='Skip tests marked slow')
    parser.add_argument('--jobs', type=int, default=1, help='Worker processes for figures')
    parser.add_argument('--out', default='results', help='Output directory for figures')
    parser.add_argument('--only', nargs='+', choices=FIGURE_IDS, default=FIGURE_IDS,
                        help='Subset of figures to regenerate')

    args = parser.parse_args()

    # Everything runs from the project root
    os.chdir(Path(__file__).resolve().parent.parent)

    try:
        if args.action == 'setup':
            python = setup_dev_environment()
            print(f"\nSetup complete! Run '{python} scripts/dev.py test' next")

        elif args.action == 'test':
            run_tests(fast=args.fast)

        elif args.action == 'lint':
            sys.exit(1 if lint_code() else 0)

        elif args.action == 'check':
            run_check(debug=args.debug)

        elif args.action == 'figures':
            run_figures(args.out, args.jobs, args.only)

    except KeyboardInterrupt:
        print("\nInterrupted by user")
        sys.exit(130)


if __name__ == '__main__':
    main()
