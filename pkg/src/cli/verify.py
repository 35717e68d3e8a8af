"""Verification suite run by the ``verify`` command on one phase map and a set of z points.

Each check returns a residual; ``verification_check`` turns it into a
``{"pass", "residual", "tolerance"}`` report.
"""

import logging
from itertools import combinations
from typing import Dict, Any, List

import numpy as np
import scipy.linalg as sla

from ..config.settings import SolverConfig
from ..conductivity.effective import phase_collection, wiener_fraction_bounds
from ..conductivity.hodge import hodge_projections, rotation_operator
from ..models.decomposition import SubspaceCollection
from ..models.grid import PhaseMap
from ..models.operator import ScalarField
from ..models.pencil import PencilPoint, NormalizedPencil, Realization
from ..models.zproblem import ZProblem
from ..multiphase.pencil import (
    pencil_at, effective_map, bess_pencil, schur_of_pencil, wiener_bounds, multiphase_kdm,
)
from ..multiphase.realization import realize, round_trip_residual
from ..operators.core import loewner_gap
from ..utils.decorators import verification_check
from ..zproblem.duality import duality_check, RotationStructureError
from ..zproblem.solve import effective_operator, solve
from ..zproblem.variational import (
    dirichlet_energy, thomson_energy, thomson_minimizer, thomson_bounds,
)

logger = logging.getLogger(__name__)

PERTURBATIONS = 10  # Random competitors per variational spot check


def _relative(a, b) -> float:
    return float(np.linalg.norm(a - b)) / max(float(np.linalg.norm(b)), np.finfo(float).tiny)


@verification_check
def check_duality(problem: ZProblem, tolerance: float) -> float:
    return duality_check(problem)


@verification_check
def check_bound_chain(problem: ZProblem, tolerance: float) -> float:
    """0 ⪯ [(L⁻¹)00]⁻¹ ⪯ L* ⪯ L00"""
    lower, upper = thomson_bounds(problem)
    l_star = effective_operator(problem)
    zero = np.zeros_like(lower)
    return max(loewner_gap(zero, lower), loewner_gap(lower, l_star), loewner_gap(l_star, upper))


def _perturbation_excess(minimum: float, competitors: List[float], scale: float) -> float:
    """How far the best competitor undercuts the claimed minimum, relative to scale"""
    best = min(competitors) if competitors else minimum
    return max(0.0, minimum - best) / scale


@verification_check
def check_dirichlet(problem: ZProblem, rng: np.random.Generator, tolerance: float) -> float:
    """The minimizer's energy equals (E0, L*E0) and no random E' does better"""
    dim_u, dim_e, _ = problem.space.dims
    e0 = rng.standard_normal(dim_u)
    e_min = solve(problem, e0).E
    target = float(np.vdot(e0, effective_operator(problem) @ e0).real)
    energy = float(np.real(dirichlet_energy(problem, e0, e_min)))
    competitors = [float(np.real(dirichlet_energy(problem, e0, e_min + rng.standard_normal(dim_e))))
                   for _ in range(PERTURBATIONS)]
    scale = max(abs(target), np.finfo(float).tiny)
    return max(abs(energy - target) / scale, _perturbation_excess(energy, competitors, scale))


@verification_check
def check_thomson(problem: ZProblem, rng: np.random.Generator, tolerance: float) -> float:
    """The minimizer's energy equals (J0, (L*)⁻¹J0) and no random J' does better"""
    dim_u, _, dim_j = problem.space.dims
    j0 = rng.standard_normal(dim_u)
    j_min = thomson_minimizer(problem, j0)
    target = float(np.vdot(j0, sla.solve(effective_operator(problem), j0)).real)
    energy = float(np.real(thomson_energy(problem, j0, j_min)))
    competitors = [float(np.real(thomson_energy(problem, j0, j_min + rng.standard_normal(dim_j))))
                   for _ in range(PERTURBATIONS)]
    scale = max(abs(target), np.finfo(float).tiny)
    return max(abs(energy - target) / scale, _perturbation_excess(energy, competitors, scale))


@verification_check
def check_wiener(collection: SubspaceCollection, pm: PhaseMap, z: PencilPoint, tolerance: float) -> float:
    """Abstract Loewner bounds and the volume-fraction eigenvalue bounds"""
    sigma = effective_map(collection, z)
    lower, upper = wiener_bounds(collection, z)
    fractions = wiener_fraction_bounds(pm, z)
    eigenvalues = sla.eigvalsh(0.5 * (sigma + sigma.conj().T))
    spread = max(0.0, fractions.lower - eigenvalues[0], eigenvalues[-1] - fractions.upper) / fractions.upper
    return max(loewner_gap(lower, sigma), loewner_gap(sigma, upper), spread)


@verification_check
def check_kdm(collection: SubspaceCollection, rotation: np.ndarray, z: PencilPoint, tolerance: float) -> float:
    """KDM residual; a rotation failing its mapping conditions fails the check with the leak as residual"""
    try:
        return multiphase_kdm(collection, rotation, z)
    except RotationStructureError as e:
        logger.error(f"Rotation structure check failed: {e}")
        return e.residual if e.residual is not None else float('inf')


@verification_check
def check_bess_equality(collection: SubspaceCollection, pencil: NormalizedPencil, z: PencilPoint,
                        tolerance: float) -> float:
    return _relative(schur_of_pencil(pencil, z), effective_map(collection, z))


@verification_check
def check_realization(realization: Realization, pencil: NormalizedPencil, z: PencilPoint,
                      tolerance: float) -> float:
    return round_trip_residual(realization, pencil, z)


@verification_check
def check_homogeneity(collection: SubspaceCollection, z: PencilPoint, rng: np.random.Generator,
                      tolerance: float) -> float:
    """L*(λz) = λL*(z) for a random nonzero λ"""
    factor = rng.uniform(0.5, 2.0) * np.exp(1j * rng.uniform(0.0, 2.0 * np.pi))
    return _relative(effective_map(collection, z.scaled(factor)), factor * effective_map(collection, z))


@verification_check
def check_monotone(collection: SubspaceCollection, z: PencilPoint, w: PencilPoint, tolerance: float) -> float:
    return loewner_gap(effective_map(collection, z), effective_map(collection, w))


@verification_check
def check_concavity(collection: SubspaceCollection, z: PencilPoint, w: PencilPoint, tolerance: float) -> float:
    """½L*(z) + ½L*(w) ⪯ [½L(z) + ½L(w)]*"""
    mixed = ZProblem(collection.space, 0.5 * (pencil_at(collection, z) + pencil_at(collection, w)))
    average = 0.5 * (effective_map(collection, z) + effective_map(collection, w))
    return loewner_gap(average, effective_operator(mixed))


def _ordered(z: PencilPoint, w: PencilPoint) -> bool:
    return all(a.real <= b.real for a, b in zip(z.z, w.z))


def run_checks(pm: PhaseMap, points: List[PencilPoint], tolerance: float, seed: int,
               solver: SolverConfig = None) -> Dict[str, Dict[str, Any]]:
    """
    Run every applicable check on the phase-map collection.

    Positive points additionally get the bound chain, the variational spot
    checks and Wiener bounds; 2D grids get the rotation duality; pairs of
    componentwise ordered positive points get monotonicity, and every pair
    of positive points gets concavity.
    """
    solver = solver or SolverConfig()
    rng = np.random.default_rng(seed)
    hodge = hodge_projections(pm.grid.with_field(ScalarField.REAL), solver.dense_max_dim)
    collection = phase_collection(pm, hodge)
    pencil = bess_pencil(collection)
    realization = realize(pencil)
    rotation = rotation_operator(pm.grid) if pm.grid.d == 2 else None

    results: Dict[str, Dict[str, Any]] = {}
    for k, z in enumerate(points, start=1):
        tag = f"z{k}"
        logger.info(f"Verifying at {tag} = {z.z}")
        problem = ZProblem(collection.space, pencil_at(collection, z))
        results[f"duality[{tag}]"] = check_duality(problem, tolerance=tolerance)
        if z.is_positive():
            results[f"bound_chain[{tag}]"] = check_bound_chain(problem, tolerance=tolerance)
            results[f"dirichlet[{tag}]"] = check_dirichlet(problem, rng, tolerance=tolerance)
            results[f"thomson[{tag}]"] = check_thomson(problem, rng, tolerance=tolerance)
            results[f"wiener[{tag}]"] = check_wiener(collection, pm, z, tolerance=tolerance)
        if rotation is not None:
            results[f"kdm[{tag}]"] = check_kdm(collection, rotation, z, tolerance=tolerance)
        results[f"bess_equality[{tag}]"] = check_bess_equality(collection, pencil, z, tolerance=tolerance)
        results[f"realization[{tag}]"] = check_realization(realization, pencil, z, tolerance=tolerance)
        results[f"homogeneity[{tag}]"] = check_homogeneity(collection, z, rng, tolerance=tolerance)

    positive = [(k, z) for k, z in enumerate(points, start=1) if z.is_positive()]
    for (i, z), (j, w) in combinations(positive, 2):
        if _ordered(z, w):
            results[f"monotone[z{i}≤z{j}]"] = check_monotone(collection, z, w, tolerance=tolerance)
        elif _ordered(w, z):
            results[f"monotone[z{j}≤z{i}]"] = check_monotone(collection, w, z, tolerance=tolerance)
        results[f"concavity[z{i},z{j}]"] = check_concavity(collection, z, w, tolerance=tolerance)
    return results
