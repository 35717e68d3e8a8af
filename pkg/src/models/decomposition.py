"""Orthogonal triple decompositions H = U ⊕ E ⊕ J and Z(n) subspace collections."""

from dataclasses import dataclass
from typing import Tuple, List, Sequence

import numpy as np

from .operator import Operator, ScalarField
from ..config.settings import DEFAULT_TOL
from ..operators.core import adjoint, as_operator, orthonormal_basis
from ..utils.errors import ValidationError


class DecompositionError(ValidationError):
    """Raised when three projections do not form an orthogonal triple decomposition"""
    pass


class CollectionError(ValidationError):
    """Raised when phase projections do not resolve the identity orthogonally"""
    pass


def _frozen(a) -> np.ndarray:
    arr = np.array(as_operator(a), copy=True)
    arr.setflags(write=False)
    return arr


def _relative(residual: np.ndarray, scale: float) -> float:
    return float(np.linalg.norm(residual)) / max(1.0, scale)


def range_projection(basis: Operator) -> Operator:
    """Orthogonal projection BB* onto the span of an isometry's columns"""
    basis = as_operator(basis)
    return basis @ adjoint(basis)


@dataclass(frozen=True, eq=False)
class TripleDecomposition:
    """
    Three mutually orthogonal projections Γ0, Γ1, Γ2 summing to the identity,
    together with column isometries spanning their ranges.

    Index 0 is the space U of averages, index 1 the space E and index 2 the
    space J. Subspace coordinates are the coordinates in ``basis0..2``.
    """
    gamma0: Operator
    gamma1: Operator
    gamma2: Operator
    basis0: Operator
    basis1: Operator
    basis2: Operator

    def __post_init__(self):
        for name in ('gamma0', 'gamma1', 'gamma2', 'basis0', 'basis1', 'basis2'):
            object.__setattr__(self, name, _frozen(getattr(self, name)))
        dims = {g.shape for g in self.gammas}
        if len(dims) != 1 or self.gamma0.shape[0] != self.gamma0.shape[1]:
            raise DecompositionError(f"Projections must be square and of one size, got {sorted(dims)}")
        for i, b in enumerate(self.bases):
            if b.shape[0] != self.dim:
                raise DecompositionError(f"basis{i} has {b.shape[0]} rows, expected {self.dim}")

    @property
    def dim(self) -> int:
        return self.gamma0.shape[0]

    @property
    def dims(self) -> Tuple[int, int, int]:
        """Dimensions of U, E and J"""
        return tuple(b.shape[1] for b in self.bases)

    @property
    def gammas(self) -> Tuple[Operator, Operator, Operator]:
        return (self.gamma0, self.gamma1, self.gamma2)

    @property
    def bases(self) -> Tuple[Operator, Operator, Operator]:
        return (self.basis0, self.basis1, self.basis2)

    @property
    def field(self) -> ScalarField:
        return ScalarField.of(*self.gammas, *self.bases)

    def embed(self, index: int, coords) -> np.ndarray:
        """Full-space vector from subspace coordinates"""
        return self.bases[index] @ np.asarray(coords)

    def coordinates(self, index: int, vector) -> np.ndarray:
        """Subspace coordinates of (the projection of) a full-space vector"""
        return adjoint(self.bases[index]) @ np.asarray(vector)

    def swapped(self) -> 'TripleDecomposition':
        """The decomposition U ⊕ J ⊕ E with the roles of E and J exchanged"""
        return TripleDecomposition(self.gamma0, self.gamma2, self.gamma1,
                                   self.basis0, self.basis2, self.basis1)

    def same_as(self, other: 'TripleDecomposition', tol: float = DEFAULT_TOL) -> bool:
        """Whether two decompositions have the same three subspaces"""
        if self.dim != other.dim:
            return False
        return all(np.linalg.norm(a - b) <= tol * max(1.0, np.linalg.norm(a))
                   for a, b in zip(self.gammas, other.gammas))

    def validate(self, tol: float = DEFAULT_TOL) -> 'TripleDecomposition':
        """Check every decomposition invariant; raises DecompositionError naming the first failure"""
        scale = np.sqrt(max(1, self.dim))
        for i, (g, b) in enumerate(zip(self.gammas, self.bases)):
            if _relative(g - adjoint(g), scale) > tol:
                raise DecompositionError(f"Γ{i} is not self-adjoint")
            if _relative(g @ g - g, scale) > tol:
                raise DecompositionError(f"Γ{i} is not idempotent")
            if _relative(adjoint(b) @ b - np.eye(b.shape[1]), scale) > tol:
                raise DecompositionError(f"basis{i} is not an isometry")
            if _relative(b @ adjoint(b) - g, scale) > tol:
                raise DecompositionError(f"basis{i} does not span the range of Γ{i}")
        for i in range(3):
            for j in range(i + 1, 3):
                if _relative(self.gammas[i] @ self.gammas[j], scale) > tol:
                    raise DecompositionError(f"Γ{i} and Γ{j} are not orthogonal")
        if _relative(sum(self.gammas) - np.eye(self.dim), scale) > tol:
            raise DecompositionError("Γ0 + Γ1 + Γ2 does not resolve the identity")
        return self

    @classmethod
    def from_bases(cls, basis0, basis1, basis2, tol: float = DEFAULT_TOL) -> 'TripleDecomposition':
        """Build from three column isometries with mutually orthogonal ranges"""
        bases = [as_operator(b) for b in (basis0, basis1, basis2)]
        space = cls(*(range_projection(b) for b in bases), *bases)
        return space.validate(tol)

    @classmethod
    def from_projections(cls, gamma0, gamma1, gamma2, tol: float = DEFAULT_TOL) -> 'TripleDecomposition':
        """Build from three projections; bases come from ``orthonormal_basis``"""
        gammas = [as_operator(g) for g in (gamma0, gamma1, gamma2)]
        space = cls(*gammas, *(orthonormal_basis(g, tol) for g in gammas))
        return space.validate(tol)

    @classmethod
    def complete(cls, basis0, basis1, tol: float = DEFAULT_TOL) -> 'TripleDecomposition':
        """Build from U and E, taking J as the orthogonal complement of U ⊕ E"""
        b0, b1 = as_operator(basis0), as_operator(basis1)
        g0, g1 = range_projection(b0), range_projection(b1)
        g2 = np.eye(b0.shape[0]) - g0 - g1
        return cls(g0, g1, g2, b0, b1, orthonormal_basis(g2, tol)).validate(tol)


@dataclass(frozen=True, eq=False)
class SubspaceCollection:
    """
    A Z(n) subspace collection: a triple decomposition together with
    orthogonal projections Λ1…Λn onto the phase subspaces P1…Pn.
    """
    space: TripleDecomposition
    lambdas: Tuple[Operator, ...]

    def __post_init__(self):
        lambdas = tuple(_frozen(l) for l in self.lambdas)
        object.__setattr__(self, 'lambdas', lambdas)
        if not lambdas:
            raise CollectionError("A subspace collection needs at least one phase")
        for i, l in enumerate(lambdas, start=1):
            if l.shape != (self.space.dim, self.space.dim):
                raise CollectionError(f"Λ{i} has shape {l.shape}, expected {(self.space.dim, self.space.dim)}")

    @property
    def n(self) -> int:
        return len(self.lambdas)

    @property
    def field(self) -> ScalarField:
        return self.space.field.join(ScalarField.of(*self.lambdas))

    def validate(self, tol: float = DEFAULT_TOL) -> 'SubspaceCollection':
        """Check the phase projections resolve the identity orthogonally"""
        scale = np.sqrt(max(1, self.space.dim))
        for i, l in enumerate(self.lambdas, start=1):
            if _relative(l - adjoint(l), scale) > tol:
                raise CollectionError(f"Λ{i} is not self-adjoint")
            if _relative(l @ l - l, scale) > tol:
                raise CollectionError(f"Λ{i} is not idempotent")
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if _relative(self.lambdas[i] @ self.lambdas[j], scale) > tol:
                    raise CollectionError(f"Λ{i + 1} and Λ{j + 1} are not orthogonal")
        if _relative(sum(self.lambdas) - np.eye(self.space.dim), scale) > tol:
            raise CollectionError("Λ1 + … + Λn does not resolve the identity")
        return self

    def compressions_to_u(self) -> List[Operator]:
        """Γ0ΛiΓ0 restricted to U, in U coordinates"""
        b0 = self.space.basis0
        return [adjoint(b0) @ l @ b0 for l in self.lambdas]

    @classmethod
    def from_phase_bases(cls, space: TripleDecomposition, phase_bases: Sequence[Operator],
                         tol: float = DEFAULT_TOL) -> 'SubspaceCollection':
        """Build from column isometries spanning each phase subspace"""
        return cls(space, tuple(range_projection(b) for b in phase_bases)).validate(tol)
