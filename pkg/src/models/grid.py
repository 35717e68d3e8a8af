"""Periodic voxel grids, vector fields on them and phase maps.

A vector field on a d-dimensional grid with N cells per axis is stored as an
array of shape (d, N, …, N). Flattening in C order gives the coordinate
index ``component * N**d + cell`` used by every dense operator.
"""

from dataclasses import dataclass, replace
from typing import Tuple, Dict, Any

import numpy as np

from .operator import ScalarField
from ..utils.errors import ValidationError


class GridMismatchError(ValidationError):
    """Raised when objects defined on different grids are combined"""
    pass


class EmptyPhaseError(ValidationError):
    """Raised when a phase index occupies no cell"""
    pass


@dataclass(frozen=True)
class GridSpec:
    """Uniform periodic grid on the unit cell [0, 2π)^d"""
    d: int
    n_cells: int
    field: ScalarField = ScalarField.REAL

    def __post_init__(self):
        if self.d not in (2, 3):
            raise ValidationError(f"Grid dimension must be 2 or 3, got {self.d}")
        if self.n_cells < 2:
            raise ValidationError(f"Grid needs at least 2 cells per axis, got {self.n_cells}")

    @property
    def shape(self) -> Tuple[int, ...]:
        return (self.n_cells,) * self.d

    @property
    def n_points(self) -> int:
        return self.n_cells ** self.d

    @property
    def dim(self) -> int:
        """Dimension of the Hilbert space of vector fields"""
        return self.d * self.n_points

    def with_field(self, field: ScalarField) -> 'GridSpec':
        return replace(self, field=field)

    def same_cells(self, other: 'GridSpec') -> bool:
        """Same geometry, regardless of scalar field"""
        return self.d == other.d and self.n_cells == other.n_cells

    def coordinates(self) -> Tuple[np.ndarray, ...]:
        """Sample points 2πx/N of every cell, one array per axis"""
        axis = 2.0 * np.pi * np.arange(self.n_cells) / self.n_cells
        return tuple(np.meshgrid(*([axis] * self.d), indexing='ij'))


@dataclass(frozen=True, eq=False)
class PeriodicField:
    """A d-component field over the cells of a grid"""
    grid: GridSpec
    values: np.ndarray

    def __post_init__(self):
        expected = (self.grid.d,) + self.grid.shape
        if self.values.shape != expected:
            raise GridMismatchError(f"Field has shape {self.values.shape}, expected {expected}")

    def flat(self) -> np.ndarray:
        return self.values.reshape(-1)

    @classmethod
    def from_flat(cls, grid: GridSpec, vector: np.ndarray) -> 'PeriodicField':
        return cls(grid, np.asarray(vector).reshape((grid.d,) + grid.shape))

    @classmethod
    def constant(cls, grid: GridSpec, value) -> 'PeriodicField':
        value = np.asarray(value)
        return cls(grid, np.broadcast_to(value.reshape((grid.d,) + (1,) * grid.d), (grid.d,) + grid.shape).copy())

    def mean(self) -> np.ndarray:
        """Cell average ⟨F⟩, one entry per component"""
        return self.values.reshape(self.grid.d, -1).mean(axis=1)

    def inner(self, other: 'PeriodicField') -> complex:
        """(E, F) = N^{-d} Σ conj(E(x))ᵀ F(x)"""
        if not self.grid.same_cells(other.grid):
            raise GridMismatchError("Fields live on different grids")
        return np.vdot(self.values, other.values) / self.grid.n_points


@dataclass(frozen=True, eq=False)
class PhaseMap:
    """
    Assignment of one phase index in 1…n to every cell.

    Every phase must occupy at least one cell, so each volume fraction is
    positive and the fractions sum to one exactly in cell counts.
    """
    grid: GridSpec
    phases: np.ndarray
    n_phases: int

    def __post_init__(self):
        if np.size(self.phases) != self.grid.n_points:
            raise GridMismatchError(f"Phase map has {np.size(self.phases)} cells, grid has {self.grid.n_points}")
        phases = np.array(self.phases, dtype=np.int64).reshape(self.grid.shape)
        if self.n_phases < 1:
            raise ValidationError(f"A phase map needs at least one phase, got {self.n_phases}")
        if phases.min() < 1 or phases.max() > self.n_phases:
            raise ValidationError(f"Phase indices must lie in 1…{self.n_phases}")
        counts = np.bincount(phases.ravel(), minlength=self.n_phases + 1)[1:]
        empty = [i + 1 for i, c in enumerate(counts) if c == 0]
        if empty:
            raise EmptyPhaseError(f"Phase(s) {empty} occupy no cell")
        phases.setflags(write=False)
        object.__setattr__(self, 'phases', phases)

    def characteristic(self, phase: int) -> np.ndarray:
        """χ_i as a 0/1 array over the cells"""
        return (self.phases == phase).astype(np.float64)

    def volume_fractions(self) -> np.ndarray:
        """f_i = |Ω_i| / |Ω| in exact cell counts"""
        counts = np.bincount(self.phases.ravel(), minlength=self.n_phases + 1)[1:]
        return counts / self.grid.n_points

    def coefficient_field(self, z) -> np.ndarray:
        """σ(x) = Σ z_i χ_i(x) over the cells"""
        values = np.asarray(z)
        return values[self.phases - 1]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'd': self.grid.d,
            'n': self.grid.n_cells,
            'n_phases': self.n_phases,
            'phases': [int(p) for p in self.phases.ravel()],
        }
