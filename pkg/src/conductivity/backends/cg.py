"""Matrix-free conjugate gradient backend for real positive coefficients.

The cell problem Γ1 σ Γ1 E = −Γ1 σ E0 is solved with projections applied by
FFT and σ applied pointwise; no dense operator is ever built.
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy.sparse.linalg import cg, LinearOperator

from .base import BaseBackend, BackendError, EffectiveTensor
from ...config.settings import SolverConfig
from ..hodge import HodgeDecomposition, hodge_projections
from ...models.grid import PhaseMap, GridMismatchError
from ...models.operator import ScalarField
from ...models.pencil import PencilPoint
from ...utils.errors import NumericalError

logger = logging.getLogger(__name__)


class CGConvergenceError(NumericalError):
    """Raised when conjugate gradients stop before reaching the residual target"""

    def __init__(self, residual: float, iterations: int):
        self.residual = residual
        self.iterations = iterations
        super().__init__(f"CG did not converge after {iterations} iterations (relative residual {residual:.3e})")


@dataclass(frozen=True, eq=False)
class CellSolution:
    """Fluctuation field E ∈ E of one cell problem"""
    E: np.ndarray  # shape (d, N, …, N)
    iterations: int
    residual: float


def cg_cell_solve(pm: PhaseMap, hodge: HodgeDecomposition, z: PencilPoint, E0, tol: float = 1e-10,
                  max_iter: int = None) -> CellSolution:
    """
    Solve Γ1 L(z) Γ1 E = −Γ1 L(z) E0 for E ∈ E by conjugate gradients.

    Args:
        pm: Phase map defining χ1…χn
        hodge: Hodge decomposition on the same grid (used matrix-free)
        z: Real positive phase coefficients
        E0: Average field, one value per component
        tol: Relative residual target ‖r‖ ≤ tol·‖Γ1 L(z) E0‖
        max_iter: Iteration cap, default 5·dim E

    Raises:
        BackendError: When z is not real positive
        CGConvergenceError: When the cap is reached first
    """
    grid = pm.grid
    if not grid.same_cells(hodge.grid):
        raise GridMismatchError("Phase map and Hodge decomposition live on different grids")
    if not z.is_positive():
        raise BackendError("The cg backend needs real positive z")
    shape = (grid.d,) + grid.shape
    sigma = pm.coefficient_field(z.as_array())
    e0 = np.asarray(E0, dtype=float).reshape((grid.d,) + (1,) * grid.d)
    max_iter = max_iter or 5 * hodge.dims[1]

    def matvec(x: np.ndarray) -> np.ndarray:
        field = hodge.apply(1, x.reshape(shape))
        return hodge.apply(1, sigma * field).reshape(-1)

    b = -hodge.apply(1, sigma * np.broadcast_to(e0, shape)).reshape(-1)
    b_norm = float(np.linalg.norm(b))
    if b_norm == 0.0:
        return CellSolution(E=np.zeros(shape), iterations=0, residual=0.0)

    operator = LinearOperator((grid.dim, grid.dim), matvec=matvec, dtype=np.float64)
    iterations = 0

    def count(_):
        nonlocal iterations
        iterations += 1

    x, info = cg(operator, b, rtol=tol, atol=0.0, maxiter=max_iter, callback=count)
    x = hodge.apply(1, x.reshape(shape))
    residual = float(np.linalg.norm(matvec(x.reshape(-1)) - b)) / b_norm
    if info != 0:
        raise CGConvergenceError(residual, iterations)
    logger.debug(f"CG converged in {iterations} iterations (relative residual {residual:.3e})")
    return CellSolution(E=x, iterations=iterations, residual=residual)


class CGBackend(BaseBackend):
    """Effective tensor from one matrix-free cell solve per unit average field"""

    def __init__(self, config: SolverConfig = None, complex_support: bool = False):
        super().__init__(config, complex_support)

    def name(self) -> str:
        return 'cg'

    def effective_tensor(self, pm: PhaseMap, z: PencilPoint) -> EffectiveTensor:
        if not self.supports(z):
            raise BackendError("The cg backend needs real positive z; use the dense backend for complex z")
        grid = pm.grid
        hodge = hodge_projections(grid.with_field(ScalarField.REAL), self.config.dense_max_dim)
        sigma_field = pm.coefficient_field(z.as_array())
        max_iter = self.config.max_iterations(hodge.dims[1])
        tensor = np.zeros((grid.d, grid.d))
        total_iterations = 0
        worst = 0.0
        for j in range(grid.d):
            e0 = np.zeros(grid.d)
            e0[j] = 1.0
            solution = cg_cell_solve(pm, hodge, z, e0, tol=self.config.cg_rtol, max_iter=max_iter)
            field = solution.E + e0.reshape((grid.d,) + (1,) * grid.d)
            tensor[:, j] = (sigma_field * field).reshape(grid.d, -1).mean(axis=1)
            total_iterations += solution.iterations
            worst = max(worst, solution.residual)
        logger.info(f"CG effective tensor at z={z.z} in {total_iterations} iterations")
        return EffectiveTensor(sigma=tensor, residual=worst, iterations=total_iterations, backend=self.name())
