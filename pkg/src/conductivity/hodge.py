"""FFT Hodge decomposition of periodic vector fields on a voxel grid.

In Fourier space the gradient projection at a nonzero frequency k is
k̃k̃ᵀ/|k̃|² and the divergence-free projection its complement; k = 0 carries
the constant fields U. Frequencies are the signed integers in (−N/2, N/2].

For even N the spectral derivative of a Nyquist component vanishes, so k̃
is k with its Nyquist components set to zero whenever k has another
nonzero component. A frequency whose nonzero components are all Nyquist
keeps the representative N/2. This keeps dim E = N^d − 1 and makes the 90°
rotation map E(k) onto J(k) exactly.
"""

import logging
from functools import cached_property, lru_cache
from typing import Tuple

import numpy as np

from ..config.settings import DENSE_MAX_DIM
from ..models.decomposition import TripleDecomposition
from ..models.grid import GridSpec, GridMismatchError
from ..models.operator import Operator
from ..operators.core import adjoint, orthonormal_basis, re_part
from ..utils.errors import ValidationError

logger = logging.getLogger(__name__)

# Columns of the identity pushed through the FFT projection per batch
_CHUNK = 512


class DenseLimitError(ValidationError):
    """Raised when a grid is too large for dense assembly"""
    pass


class DimensionError(ValidationError):
    """Raised when an operation is only defined in another spatial dimension"""
    pass


def frequency_grid(grid: GridSpec) -> np.ndarray:
    """Integer frequency vectors, shape (d, N, …, N)"""
    n = grid.n_cells
    k = np.rint(np.fft.fftfreq(n, d=1.0 / n))
    if n % 2 == 0:
        k[k == -(n // 2)] = n // 2
    return np.stack(np.meshgrid(*([k] * grid.d), indexing='ij'))


def effective_wavevector(grid: GridSpec) -> np.ndarray:
    """k̃: frequency vectors with Nyquist components dropped where another component is nonzero"""
    k = frequency_grid(grid)
    if grid.n_cells % 2:
        return k
    nyquist = np.abs(k) == grid.n_cells // 2
    regular = (k != 0) & ~nyquist
    return np.where(nyquist & regular.any(axis=0, keepdims=True), 0.0, k)


@lru_cache(maxsize=16)
def _unit_wavevector(grid: GridSpec) -> np.ndarray:
    k = effective_wavevector(grid)
    norm = np.sqrt(np.sum(k * k, axis=0, keepdims=True))
    unit = k / np.where(norm == 0.0, 1.0, norm)
    unit.setflags(write=False)
    return unit


def _cell_axes(grid: GridSpec, values: np.ndarray) -> Tuple[int, ...]:
    if values.shape[-(grid.d + 1):] != (grid.d,) + grid.shape:
        raise GridMismatchError(f"Field of shape {values.shape} does not live on a {grid.shape} grid")
    return tuple(range(values.ndim - grid.d, values.ndim))


def apply_gamma(grid: GridSpec, values: np.ndarray, index: int) -> np.ndarray:
    """
    Apply Γ0, Γ1 or Γ2 to fields of shape (..., d, N, …, N) without assembling a matrix.

    Leading axes are treated as a batch. Real input gives real output.
    """
    values = np.asarray(values)
    axes = _cell_axes(grid, values)
    if index == 0:
        mean = values.mean(axis=axes, keepdims=True)
        return np.broadcast_to(mean, values.shape).copy()
    unit = _unit_wavevector(grid)
    spectrum = np.fft.fftn(values, axes=axes)
    projected = unit * np.sum(unit * spectrum, axis=-(grid.d + 1), keepdims=True)
    gradient = np.fft.ifftn(projected, axes=axes)
    if not np.iscomplexobj(values):
        gradient = gradient.real
    if index == 1:
        return gradient
    if index == 2:
        return values - apply_gamma(grid, values, 0) - gradient
    raise ValueError(f"Projection index must be 0, 1 or 2, got {index}")


def canonical_u_basis(grid: GridSpec) -> Operator:
    """Columns are the constant unit fields e_j / √(N^d), so U coordinates are cell averages scaled by √(N^d)"""
    m = grid.n_points
    return np.kron(np.eye(grid.d), np.full((m, 1), 1.0 / np.sqrt(m)))


def gamma_matrix(grid: GridSpec, index: int, max_dim: int = DENSE_MAX_DIM) -> Operator:
    """Dense matrix of Γ_index, assembled by projecting identity columns in batches"""
    dim = grid.dim
    if dim > max_dim:
        raise DenseLimitError(f"Dense assembly needs d·N^d ≤ {max_dim}, got {dim}")
    if index == 0:
        b0 = canonical_u_basis(grid)
        return b0 @ adjoint(b0)
    out = np.empty((dim, dim))
    for start in range(0, dim, _CHUNK):
        stop = min(start + _CHUNK, dim)
        batch = np.zeros((stop - start, dim))
        batch[np.arange(stop - start), np.arange(start, stop)] = 1.0
        images = apply_gamma(grid, batch.reshape((stop - start, grid.d) + grid.shape), index)
        out[:, start:stop] = images.reshape(stop - start, dim).T
    return out


class HodgeDecomposition:
    """
    U ⊕ E ⊕ J for periodic fields on a grid.

    ``apply`` works matrix-free for any grid size; ``space`` assembles the
    dense TripleDecomposition (canonical U basis) on first access.
    """

    def __init__(self, grid: GridSpec, max_dim: int = DENSE_MAX_DIM):
        self.grid = grid
        self.max_dim = max_dim

    @property
    def dims(self) -> Tuple[int, int, int]:
        """(dim U, dim E, dim J) = (d, N^d − 1, (d − 1)(N^d − 1))"""
        d, m = self.grid.d, self.grid.n_points
        return (d, m - 1, (d - 1) * (m - 1))

    def apply(self, index: int, values: np.ndarray) -> np.ndarray:
        return apply_gamma(self.grid, values, index)

    @cached_property
    def space(self) -> TripleDecomposition:
        grid = self.grid
        logger.info(f"Assembling dense Hodge decomposition for d={grid.d}, N={grid.n_cells} (dimension {grid.dim})")
        b0 = canonical_u_basis(grid)
        g0 = gamma_matrix(grid, 0, self.max_dim)
        g1 = re_part(gamma_matrix(grid, 1, self.max_dim))
        g2 = np.eye(grid.dim) - g0 - g1
        space = TripleDecomposition(g0, g1, g2, b0, orthonormal_basis(g1), orthonormal_basis(g2))
        if space.dims != self.dims:
            raise GridMismatchError(f"Hodge dimensions {space.dims} differ from expected {self.dims}")
        return space.validate(1e-10)


@lru_cache(maxsize=8)
def hodge_projections(grid: GridSpec, max_dim: int = DENSE_MAX_DIM) -> HodgeDecomposition:
    """Hodge decomposition for a grid; cached per grid geometry and field"""
    return HodgeDecomposition(grid, max_dim)


def rotation_operator(grid: GridSpec) -> Operator:
    """Pointwise rotation R = [[0, 1], [−1, 0]] of 2D fields: R* = R⁻¹ = −R"""
    if grid.d != 2:
        raise DimensionError(f"Rotation is defined for d = 2, got d = {grid.d}")
    return np.kron(np.array([[0.0, 1.0], [-1.0, 0.0]]), np.eye(grid.n_points))


def rotate_field(values: np.ndarray) -> np.ndarray:
    """Apply R to a field of shape (2, N, N)"""
    values = np.asarray(values)
    if values.shape[0] != 2:
        raise DimensionError(f"Rotation acts on 2-component fields, got {values.shape[0]} components")
    return np.stack([values[1], -values[0]])
