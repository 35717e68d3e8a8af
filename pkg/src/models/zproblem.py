"""Z-problems, their solutions and hypothesis reports."""

from dataclasses import dataclass
from typing import Optional, Dict, Any, Tuple

import numpy as np

from .decomposition import TripleDecomposition
from .operator import Operator, ScalarField
from ..operators.core import as_operator
from ..utils.errors import ValidationError


@dataclass(frozen=True, eq=False)
class ZProblem:
    """
    A Z-problem (H, U, E, J, L): find J0 ∈ U, E ∈ E, J ∈ J with
    J0 + J = L(E0 + E) for a prescribed E0 ∈ U.
    """
    space: TripleDecomposition
    L: Operator

    def __post_init__(self):
        l = np.array(as_operator(self.L), copy=True)
        l.setflags(write=False)
        object.__setattr__(self, 'L', l)
        if l.shape != (self.space.dim, self.space.dim):
            raise ValidationError(f"L has shape {l.shape} but the decomposed space has dimension {self.space.dim}")

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def field(self) -> ScalarField:
        return self.space.field.join(ScalarField.of(self.L))

    def with_operator(self, l: Operator) -> 'ZProblem':
        """Same decomposition, different operator"""
        return ZProblem(self.space, l)


@dataclass(frozen=True, eq=False)
class ZSolution:
    """Solution triple of a Z-problem, each part in its own subspace coordinates"""
    J0: np.ndarray
    E: np.ndarray
    J: np.ndarray

    def full_fields(self, space: TripleDecomposition, E0) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """(E0, J0, E, J) as full-space vectors"""
        return (space.embed(0, E0), space.embed(0, self.J0), space.embed(1, self.E), space.embed(2, self.J))

    def residual(self, problem: ZProblem, E0) -> float:
        """‖(J0 + J) − L(E0 + E)‖ relative to ‖L‖·‖E0‖"""
        e0, j0, e, j = self.full_fields(problem.space, E0)
        scale = np.linalg.norm(problem.L) * np.linalg.norm(e0)
        mismatch = np.linalg.norm((j0 + j) - problem.L @ (e0 + e))
        return float(mismatch / scale) if scale > 0 else float(mismatch)


@dataclass(frozen=True)
class HypothesisReport:
    """
    Which of the solvability hypotheses hold, weakest to strongest.

    h0: L11 invertible
    h1: L self-adjoint, L11 positive semidefinite and invertible
    h2: L positive semidefinite and invertible (and h1)
    lm: rotation angle θ with Re(e^{iθ}L) ≥ δI, if one was found
    """
    h0: bool
    h1: bool
    h2: bool
    lm: Optional[float] = None

    def __post_init__(self):
        if (self.h2 and not self.h1) or (self.h1 and not self.h0):
            raise ValueError(f"Hypotheses must satisfy h2 ⇒ h1 ⇒ h0, got {self}")

    def to_dict(self) -> Dict[str, Any]:
        return {'h0': self.h0, 'h1': self.h1, 'h2': self.h2, 'lm': self.lm}
