"""Pencil points, normalized positive semidefinite pencils and their realizations."""

from dataclasses import dataclass
from typing import Tuple, Sequence, List, Optional

import numpy as np

from .decomposition import SubspaceCollection
from .operator import Operator, BlockPartition, ScalarField
from ..config.settings import DEFAULT_TOL
from ..operators.core import as_operator, adjoint, min_eigenvalue
from ..utils.errors import ValidationError


class PencilValidationError(ValidationError):
    """
    Raised when a pencil violates one of its invariants.

    Attributes:
        invariant: 'shape', 'self-adjoint', 'PSD', 'normalization' or 'split'
        index: 1-based coefficient index, when the failure is tied to one coefficient
    """

    def __init__(self, invariant: str, message: str, index: Optional[int] = None):
        self.invariant = invariant
        self.index = index
        where = f" (coefficient {index})" if index is not None else ""
        super().__init__(f"Pencil {invariant} check failed{where}: {message}")


@dataclass(frozen=True)
class PencilPoint:
    """A point z = (z1, …, zn) at which a pencil is evaluated"""
    z: Tuple[complex, ...]

    def __post_init__(self):
        object.__setattr__(self, 'z', tuple(complex(v) for v in self.z))

    @property
    def n(self) -> int:
        return len(self.z)

    def as_array(self) -> np.ndarray:
        """Real array when every component is real, complex otherwise"""
        arr = np.array(self.z, dtype=np.complex128)
        return arr.real.copy() if not np.any(arr.imag) else arr

    @property
    def field(self) -> ScalarField:
        return ScalarField.of(self.as_array())

    def is_positive(self) -> bool:
        """All components real and strictly positive"""
        return all(v.imag == 0.0 and v.real > 0.0 for v in self.z)

    def inverse(self) -> 'PencilPoint':
        """z⁻¹ = (1/z1, …, 1/zn)"""
        return PencilPoint(tuple(1.0 / v for v in self.z))

    def scaled(self, factor: complex) -> 'PencilPoint':
        return PencilPoint(tuple(factor * v for v in self.z))

    def to_pairs(self) -> List[List[float]]:
        return [[v.real, v.imag] for v in self.z]

    @classmethod
    def of(cls, *values: complex) -> 'PencilPoint':
        return cls(tuple(values))


@dataclass(frozen=True, eq=False)
class NormalizedPencil:
    """
    A(z) = Σ zi Ai with positive semidefinite Ai summing to the identity,
    split over H0 ⊕ H1.
    """
    coeffs: Tuple[Operator, ...]
    split: BlockPartition

    def __post_init__(self):
        frozen = []
        for c in self.coeffs:
            arr = np.array(as_operator(c), copy=True)
            arr.setflags(write=False)
            frozen.append(arr)
        object.__setattr__(self, 'coeffs', tuple(frozen))

    @property
    def n(self) -> int:
        return len(self.coeffs)

    @property
    def dim(self) -> int:
        return self.split.total

    def at(self, z: PencilPoint) -> Operator:
        """A(z) = Σ zi Ai"""
        if z.n != self.n:
            raise ValidationError(f"Pencil has {self.n} coefficients but z has {z.n} components")
        return sum(v * a for v, a in zip(z.as_array(), self.coeffs))

    def validate(self, tol: float = DEFAULT_TOL) -> 'NormalizedPencil':
        """Check shapes, self-adjointness, positivity and normalization"""
        if len(self.split) != 2:
            raise PencilValidationError('split', f"expected two blocks, got {self.split.sizes}")
        if not self.coeffs:
            raise PencilValidationError('shape', "a pencil needs at least one coefficient")
        for i, a in enumerate(self.coeffs, start=1):
            if a.shape != (self.dim, self.dim):
                raise PencilValidationError('split', f"shape {a.shape} does not match split {self.split.sizes}", i)
            scale = max(1.0, float(np.linalg.norm(a)))
            if np.linalg.norm(a - adjoint(a)) > tol * scale:
                raise PencilValidationError('self-adjoint', "coefficient is not self-adjoint", i)
            if self.dim and min_eigenvalue(a) < -tol * scale:
                raise PencilValidationError('PSD', f"minimum eigenvalue {min_eigenvalue(a):.3e} is negative", i)
        total = sum(self.coeffs)
        residual = float(np.linalg.norm(total - np.eye(self.dim)))
        if residual > tol * max(1.0, np.sqrt(self.dim)):
            raise PencilValidationError('normalization', f"A1 + … + An differs from I by {residual:.3e}")
        return self

    @classmethod
    def from_coeffs(cls, coeffs: Sequence, dim_h0: int, dim_h1: int,
                    tol: float = DEFAULT_TOL) -> 'NormalizedPencil':
        return cls(tuple(coeffs), BlockPartition((dim_h0, dim_h1))).validate(tol)


@dataclass(frozen=True, eq=False)
class Realization:
    """
    An n-phase subspace collection whose effective map reproduces a pencil's
    Schur complement: f(z) = T* L*(z) T.

    V is the stacked isometry the collection was built from, kept for audit.
    """
    collection: SubspaceCollection
    T: Operator
    V: Operator
    ranks: Tuple[int, ...]

    @property
    def dilation_dim(self) -> int:
        return self.V.shape[0]
