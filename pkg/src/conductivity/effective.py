"""Effective conductivity of n-phase periodic media.

σ*(z) is the effective operator of the Z-problem built from the Hodge
decomposition and the phase projections Λi (multiplication by χi), written
as a d×d matrix in the canonical basis of constant fields.
"""

import logging
from typing import NamedTuple

import numpy as np
import scipy.linalg as sla

from ..config.settings import SolverConfig
from ..models.decomposition import SubspaceCollection
from ..models.grid import PhaseMap, GridMismatchError
from ..models.operator import ScalarField
from ..models.pencil import PencilPoint
from ..multiphase.pencil import DomainError, PencilLengthError, in_domain_D
from ..utils.errors import ValidationError
from .backends.base import EffectiveTensor
from .backends.manager import BackendManager
from .hodge import HodgeDecomposition, DimensionError

logger = logging.getLogger(__name__)

# Matrix of the clockwise quarter turn acting on constant 2D fields
QUARTER_TURN = np.array([[0.0, 1.0], [-1.0, 0.0]])


class FractionBounds(NamedTuple):
    lower: float
    upper: float


def phase_collection(pm: PhaseMap, hodge: HodgeDecomposition) -> SubspaceCollection:
    """Λi = multiplication by χi, diagonal in the cell basis and repeated per component"""
    if not pm.grid.same_cells(hodge.grid):
        raise GridMismatchError(
            f"Phase map grid (d={pm.grid.d}, N={pm.grid.n_cells}) differs from "
            f"Hodge grid (d={hodge.grid.d}, N={hodge.grid.n_cells})")
    lambdas = tuple(np.diag(np.tile(pm.characteristic(i).ravel(), pm.grid.d))
                    for i in range(1, pm.n_phases + 1))
    return SubspaceCollection(hodge.space, lambdas)


def _check_point(pm: PhaseMap, z: PencilPoint) -> None:
    if z.n != pm.n_phases:
        raise PencilLengthError(f"Phase map has {pm.n_phases} phases but z has {z.n} components")
    if not in_domain_D(z):
        raise DomainError(f"z not in domain D: {z.z}")


def effective_conductivity(pm: PhaseMap, z: PencilPoint, backend: str = 'dense',
                           config: SolverConfig = None) -> EffectiveTensor:
    """
    σ*(z) for z in D with the named backend.

    Complex z on a real grid switches the computation to the complex field.

    Raises:
        DomainError: When z is outside D
        BackendError: For an unknown backend or cg with complex z
        CGConvergenceError: When cg reaches its iteration cap
    """
    _check_point(pm, z)
    if z.field is ScalarField.COMPLEX and pm.grid.field is ScalarField.REAL:
        logger.info(f"Complex z={z.z}: switching to complex field mode")
        pm = PhaseMap(pm.grid.with_field(ScalarField.COMPLEX), pm.phases, pm.n_phases)
    solver = BackendManager.initialize_backend(backend, config or SolverConfig())
    return solver.effective_tensor(pm, z)


def duality_relation_check(pm: PhaseMap, z: PencilPoint, config: SolverConfig = None) -> float:
    """Relative residual of σ*(z) = R[σ*(z⁻¹)]⁻¹R⁻¹ for 2D media (dense backend)"""
    if pm.grid.d != 2:
        raise DimensionError(f"The duality relation needs d = 2, got d = {pm.grid.d}")
    sigma = effective_conductivity(pm, z, 'dense', config).sigma
    sigma_inv = effective_conductivity(pm, z.inverse(), 'dense', config).sigma
    rhs = QUARTER_TURN @ sla.inv(sigma_inv) @ QUARTER_TURN.T
    return float(np.linalg.norm(sigma - rhs) / np.linalg.norm(sigma))


def wiener_fraction_bounds(pm: PhaseMap, z: PencilPoint) -> FractionBounds:
    """Harmonic and arithmetic means (Σ fi/zi)⁻¹ and Σ fi zi"""
    if z.n != pm.n_phases:
        raise PencilLengthError(f"Phase map has {pm.n_phases} phases but z has {z.n} components")
    if not z.is_positive():
        raise ValidationError(f"Wiener bounds need real positive z, got {z.z}")
    fractions = pm.volume_fractions()
    values = z.as_array()
    return FractionBounds(lower=float(1.0 / np.sum(fractions / values)), upper=float(np.sum(fractions * values)))
