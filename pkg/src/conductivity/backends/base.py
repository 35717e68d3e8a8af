"""Base backend class that all effective conductivity backends must inherit from."""

from dataclasses import dataclass

import numpy as np

from ...config.settings import SolverConfig
from ...models.grid import PhaseMap
from ...models.pencil import PencilPoint
from ...utils.errors import ValidationError


class BackendError(ValidationError):
    """Raised when a backend is unknown, disabled or cannot handle the request"""
    pass


@dataclass(frozen=True, eq=False)
class EffectiveTensor:
    """
    Effective conductivity σ*(z) together with how it was obtained.

    Fields:
        sigma: d×d matrix of the effective map in the canonical basis of U
        residual: Worst averaged Ohm's law mismatch over the basis solves
        iterations: Total solver iterations (0 for direct solves)
        backend: Name of the backend that produced it
    """
    sigma: np.ndarray
    residual: float
    iterations: int
    backend: str


class BaseBackend:
    """Base class for all backends."""

    def __init__(self, config: SolverConfig = None, complex_support: bool = True):
        self.config = config or SolverConfig()
        self.complex_support = complex_support

    def name(self) -> str:
        """Return the name of the backend (e.g., 'dense', 'cg')."""
        raise NotImplementedError("Subclasses must implement name()")

    def supports(self, z: PencilPoint) -> bool:
        """Whether the backend can evaluate at z; without complex support z must be real positive"""
        return self.complex_support or z.is_positive()

    def effective_tensor(self, pm: PhaseMap, z: PencilPoint) -> EffectiveTensor:
        """Compute σ*(z) for a phase map. Must be implemented by subclasses."""
        raise NotImplementedError("Subclasses must implement effective_tensor()")
