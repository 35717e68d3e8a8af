from dataclasses import dataclass
import os
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# Numerical defaults shared by all modules
DEFAULT_TOL = 1e-9  # Relative tolerance used when an operation takes no explicit tol
INVERTIBILITY_RTOL = 1e-10  # Smallest singular value must exceed rtol * largest
SYMMETRY_TOL = 1e-8  # How far from self-adjoint an input may be before it is rejected
CONTRACT_TOL = 1e-8  # Acceptance threshold for duality / realization identities
LM_ANGLE_SAMPLES = 360  # Grid size for the coercivity angle search
LM_DELTA = 1e-8  # Required margin in the coercivity test
DENSE_MAX_DIM = 4096  # Largest Hilbert dimension the dense backend will assemble
CONDITION_WARNING = 1e8  # Condition numbers above this are logged as warnings


@dataclass
class SolverConfig:
    """Configuration for the conductivity solvers and the command line jobs"""
    dense_max_dim: int = DENSE_MAX_DIM
    cg_rtol: float = 1e-10  # Relative residual target for conjugate gradients
    cg_max_iter_factor: int = 5  # max_iter = factor * dim E
    grid_dim: int = 2  # Dimension used by generator shorthands
    jobs: int = 1  # Concurrent sweep workers
    contract_tol: float = CONTRACT_TOL

    def max_iterations(self, dim_e: int) -> int:
        """Iteration cap for a cell problem whose gradient space has dimension dim_e"""
        return max(1, self.cg_max_iter_factor * dim_e)

    @classmethod
    def from_env(cls) -> 'SolverConfig':
        """Create config from environment variables"""
        return cls(
            dense_max_dim=int(os.getenv('COMPOSITES_DENSE_MAX_DIM', str(DENSE_MAX_DIM))),
            cg_rtol=float(os.getenv('COMPOSITES_CG_RTOL', '1e-10')),
            cg_max_iter_factor=int(os.getenv('COMPOSITES_CG_MAX_ITER_FACTOR', '5')),
            grid_dim=int(os.getenv('COMPOSITES_GRID_DIM', '2')),
            jobs=int(os.getenv('COMPOSITES_JOBS', '1')),
            contract_tol=float(os.getenv('COMPOSITES_CONTRACT_TOL', str(CONTRACT_TOL))),
        )
