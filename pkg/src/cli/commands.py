"""The four commands: effective, sweep, verify and realize.

Each command returns a CommandResult; ``run`` maps errors to exit codes:
0 success, 1 failed verification, 2 configuration or validation error,
3 numerical failure.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Dict, List, Optional

import numpy as np
from tqdm import tqdm

from ..conductivity.effective import effective_conductivity, duality_relation_check, wiener_fraction_bounds
from ..models.grid import PhaseMap
from ..models.pencil import PencilPoint
from ..models.schemas import load_pencil
from ..multiphase.pencil import pencil_hypotheses, PencilLengthError
from ..multiphase.realization import realize, max_round_trip_residual
from ..operators.sampling import random_point_in_domain
from ..utils.errors import ValidationError, NumericalError
from ..utils.serialization import matrix_to_pairs
from .config import JobConfig
from .output import to_json, to_csv, emit
from .verify import run_checks

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

REALIZE_POINTS = 10  # Random z in D for the realization round trip, besides (1, …, 1)
VERIFY_POINTS = 3  # Random z in D used by verify when none are given


@dataclass
class CommandResult:
    """Report of one command and the exit code it implies"""
    report: Any
    exit_code: int = EXIT_OK
    rows: Optional[List[Dict[str, Any]]] = None
    columns: Optional[List[str]] = None

    def render(self, fmt: str) -> str:
        if fmt == 'csv' and self.rows is not None:
            return to_csv(self.rows, self.columns)
        return to_json(self.report)


def _check_lengths(pm: PhaseMap, points: List[PencilPoint]) -> None:
    bad = [z.z for z in points if z.n != pm.n_phases]
    if bad:
        raise PencilLengthError(f"Geometry has {pm.n_phases} phases; z points with the wrong length: {bad}")


def effective_report(pm: PhaseMap, z: PencilPoint, cfg: JobConfig) -> Dict[str, Any]:
    """Effective tensor, bounds, hypotheses and residuals at one z"""
    tensor = effective_conductivity(pm, z, cfg.backend, cfg.solver)
    report: Dict[str, Any] = {
        'z': z.to_pairs(),
        'sigma_star': matrix_to_pairs(tensor.sigma),
        'backend': tensor.backend,
        'iterations': tensor.iterations,
    }
    if z.is_positive():
        bounds = wiener_fraction_bounds(pm, z)
        report['wiener'] = {'lower': bounds.lower, 'upper': bounds.upper}
    report['hypotheses'] = pencil_hypotheses(z).to_dict()
    residuals = {'ohm' if cfg.backend == 'dense' else 'cg': tensor.residual}
    if pm.grid.d == 2 and cfg.backend == 'dense':
        residuals['duality'] = duality_relation_check(pm, z, cfg.solver)
    report['residuals'] = residuals
    return report


def cmd_effective(cfg: JobConfig) -> CommandResult:
    """σ*(z) report; one object for a single z, a list otherwise"""
    pm = cfg.load_phase_map()
    _check_lengths(pm, cfg.z_points)
    reports = [effective_report(pm, z, cfg) for z in cfg.z_points]
    rows, columns = _rows_from_reports(pm, reports)
    return CommandResult(reports[0] if len(reports) == 1 else reports, rows=rows, columns=columns)


def sweep_columns(pm: PhaseMap) -> List[str]:
    columns = []
    for i in range(1, pm.n_phases + 1):
        columns += [f"z{i}_re", f"z{i}_im"]
    for r in range(1, pm.grid.d + 1):
        for c in range(1, pm.grid.d + 1):
            columns += [f"s{r}{c}_re", f"s{r}{c}_im"]
    return columns + ['wiener_lo', 'wiener_hi', 'residual', 'status']


def _row(pm: PhaseMap, z: PencilPoint, sigma: Optional[np.ndarray], residual: Optional[float],
         status: str) -> Dict[str, Any]:
    row: Dict[str, Any] = {}
    for i, v in enumerate(z.z, start=1):
        row[f"z{i}_re"], row[f"z{i}_im"] = v.real, v.imag
    if sigma is not None:
        for r in range(pm.grid.d):
            for c in range(pm.grid.d):
                value = complex(sigma[r, c])
                row[f"s{r + 1}{c + 1}_re"], row[f"s{r + 1}{c + 1}_im"] = value.real, value.imag
    if z.is_positive():
        bounds = wiener_fraction_bounds(pm, z)
        row['wiener_lo'], row['wiener_hi'] = bounds.lower, bounds.upper
    row['residual'] = residual
    row['status'] = status
    return row


def _rows_from_reports(pm: PhaseMap, reports: List[Dict[str, Any]]):
    rows = []
    for report in reports:
        z = PencilPoint(tuple(complex(re, im) for re, im in report['z']))
        sigma = np.array([[complex(re, im) for re, im in row] for row in report['sigma_star']])
        residual = max(report['residuals'].values())
        rows.append(_row(pm, z, sigma, residual, 'ok'))
    return rows, sweep_columns(pm)


def _sweep_row(pm: PhaseMap, z: PencilPoint, cfg: JobConfig) -> Dict[str, Any]:
    try:
        tensor = effective_conductivity(pm, z, cfg.backend, cfg.solver)
        return _row(pm, z, tensor.sigma, tensor.residual, 'ok')
    except NumericalError as e:
        logger.error(f"Sweep point {z.z} failed: {e}")
        return _row(pm, z, None, getattr(e, 'residual', None), f"error: {e}")


def cmd_sweep(cfg: JobConfig) -> CommandResult:
    """One row per z in input order, evaluated on up to ``jobs`` threads"""
    pm = cfg.load_phase_map()
    _check_lengths(pm, cfg.z_points)
    with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
        results = pool.map(lambda z: _sweep_row(pm, z, cfg), cfg.z_points)
        rows = list(tqdm(results, total=len(cfg.z_points), desc='sweep', disable=cfg.quiet))
    failed = sum(1 for row in rows if row['status'] != 'ok')
    if failed:
        logger.warning(f"{failed} of {len(rows)} sweep points failed")
    return CommandResult(rows, rows=rows, columns=sweep_columns(pm))


def cmd_verify(cfg: JobConfig) -> CommandResult:
    """Run the verification suite; exit 1 unless every check passes"""
    pm = cfg.load_phase_map()
    points = list(cfg.z_points)
    if not points:
        rng = np.random.default_rng(cfg.seed)
        points = [random_point_in_domain(rng, pm.n_phases) for _ in range(VERIFY_POINTS)]
        logger.info(f"No z given; verifying at {len(points)} random points of D")
    _check_lengths(pm, points)
    results = run_checks(pm, points, cfg.tol, cfg.seed, cfg.solver)
    failed = [name for name, result in results.items() if not result['pass']]
    if failed:
        logger.error(f"{len(failed)} of {len(results)} checks failed: {failed}")
    else:
        logger.info(f"All {len(results)} checks passed")
    return CommandResult(results, EXIT_VERIFY_FAILED if failed else EXIT_OK)


def cmd_realize(cfg: JobConfig) -> CommandResult:
    """Realize a pencil file and report the round trip over a seeded z-grid in D"""
    pencil = load_pencil(cfg.pencil)
    realization = realize(pencil)
    rng = np.random.default_rng(cfg.seed)
    points = [PencilPoint((1.0,) * pencil.n)]
    points += [random_point_in_domain(rng, pencil.n) for _ in range(REALIZE_POINTS)]
    residual = max_round_trip_residual(realization, pencil, points)
    report = {
        'n': pencil.n,
        'dim_h0': pencil.split.sizes[0],
        'dim_h1': pencil.split.sizes[1],
        'dilation_dim': realization.dilation_dim,
        'ranks': list(realization.ranks),
        'T': matrix_to_pairs(realization.T),
        'max_residual': residual,
        'tolerance': cfg.tol,
        'n_points': len(points),
    }
    passed = residual <= cfg.tol
    if not passed:
        logger.error(f"Realization round trip residual {residual:.3e} exceeds {cfg.tol:.1e}")
    return CommandResult(report, EXIT_OK if passed else EXIT_VERIFY_FAILED)


COMMAND_HANDLERS = {
    'effective': cmd_effective,
    'sweep': cmd_sweep,
    'verify': cmd_verify,
    'realize': cmd_realize,
}


def run(cfg: JobConfig) -> int:
    """Validate, execute and write the output of a job; returns the exit code"""
    try:
        cfg.validate()
        result = COMMAND_HANDLERS[cfg.command](cfg)
    except ValidationError as e:
        logger.error(f"Configuration error: {e}")
        emit(to_json({'error': str(e), 'kind': type(e).__name__}), cfg.out)
        return EXIT_CONFIG
    except NumericalError as e:
        logger.error(f"Numerical failure: {e}")
        payload = {'error': str(e), 'kind': type(e).__name__}
        if getattr(e, 'residual', None) is not None:
            payload['residuals'] = {'achieved': e.residual}
        emit(to_json(payload), cfg.out)
        return EXIT_NUMERICAL
    emit(result.render(cfg.output_format), cfg.out)
    return result.exit_code
