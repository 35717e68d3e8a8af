#!/usr/bin/env python3

"""
Command-line interface for effective operators of composites.

This script handles:
- Effective conductivity σ*(z) of a periodic phase map (effective)
- Batches of z points written as CSV rows (sweep)
- The verification suite of duality, bounds, variational and realization checks (verify)
- Realizing a normalized pencil file as an effective map (realize)

Geometries are JSON phase map files or generator shorthands:
    gen:checkerboard:N, gen:laminate:N:axis:frac, gen:random:N:phases:seed,
    gen:disk:N:radius[:phase]

Common use cases:
    # Effective tensor of a checkerboard at z = (1, 4)
    python composites.py effective --geometry gen:checkerboard:8 --z "1;4"

    # Lossy phases, several points, written to a file
    python composites.py sweep --geometry gen:laminate:16:1:0.3 --z "1,0;2,1" --z "1,0;3,-1" --out sweep.csv

    # Verify every identity at random points of D
    python composites.py verify --geometry gen:random:6:3:7 --seed 7

    # Realize a pencil
    python composites.py realize --pencil pencil.json

Exit codes: 0 success, 1 failed verification, 2 invalid input, 3 numerical failure.
"""

import argparse
import logging
import os
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path

# Add src directory to Python path
sys.path.append(str(Path(__file__).parent.parent))

from src.cli.commands import run, EXIT_CONFIG
from src.cli.config import COMMANDS, FORMATS, JobConfig
from src.config.backends import BACKENDS
from src.utils.errors import ValidationError

log_dir = Path(__file__).parent.parent / 'logs'
log_dir.mkdir(exist_ok=True)
log_file = log_dir / 'composites.log'

logger = logging.getLogger(__name__)


def setup_logging(quiet: bool = False) -> None:
    """Console and rotating file logging; LOG_TO_STDOUT switches to bare stdout messages"""
    handlers = []
    if os.environ.get('LOG_TO_STDOUT'):
        handlers.append(logging.StreamHandler(sys.stdout))
    else:
        handlers.extend([
            # Console on stderr so stdout carries only the report
            logging.StreamHandler(sys.stderr),
            RotatingFileHandler(
                log_file,
                maxBytes=10*1024*1024,  # 10MB
                backupCount=30,
                encoding='utf-8'
            )
        ])
    logging.basicConfig(
        format='%(message)s' if os.environ.get('LOG_TO_STDOUT') else '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        level=logging.WARNING if quiet else logging.INFO,
        handlers=handlers,
        force=True,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description='Effective operators of composites: conductivity, bounds and pencil realization',
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    subparsers = parser.add_subparsers(dest='command', required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--tol', type=float, help='Tolerance for residual checks (default: COMPOSITES_CONTRACT_TOL)')
    common.add_argument('--out', help='Write the report here instead of stdout')
    common.add_argument('--format', choices=FORMATS, help='Report format (default: csv for sweep, json otherwise)')
    common.add_argument('--seed', type=int, default=0, help='Seed for random points and perturbations')
    common.add_argument('--quiet', action='store_true', help='Only log warnings and errors')

    geometry = argparse.ArgumentParser(add_help=False)
    geometry.add_argument('--geometry', help='Phase map JSON file or gen:<kind>:N[:params] shorthand')
    geometry.add_argument('--z', action='append', help='Pencil point "re,im;re,im;…" (repeatable)')
    geometry.add_argument('--backend', choices=sorted(BACKENDS), default='dense', help='Cell problem solver')
    geometry.add_argument('--dim', type=int, choices=(2, 3), help='Grid dimension for shorthands')
    geometry.add_argument('--jobs', type=int, help='Worker threads for sweep')

    helps = {
        'effective': 'Effective tensor σ*(z) with bounds and residuals',
        'sweep': 'Effective tensors over many z points',
        'verify': 'Run the verification suite',
        'realize': 'Realize a normalized pencil as an effective map',
    }
    for name in COMMANDS:
        parents = [common] if name == 'realize' else [geometry, common]
        sub = subparsers.add_parser(name, parents=parents, help=helps[name])
        if name == 'realize':
            sub.add_argument('--pencil', required=True, help='Pencil JSON file')
    return parser


def main() -> int:
    args = build_parser().parse_args()
    setup_logging(args.quiet)
    try:
        cfg = JobConfig.from_args(args)
    except ValidationError as e:
        logger.error(f"Invalid arguments: {e}")
        return EXIT_CONFIG
    logger.info(f"Running {cfg.command}")
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
