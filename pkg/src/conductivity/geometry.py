"""Deterministic phase map generators for test geometries."""

import importlib
import logging
from typing import Optional, Sequence, Callable

import numpy as np

from ..config.geometries import get_geometry, GeometryConfig
from ..models.grid import GridSpec, PhaseMap
from ..utils.errors import ValidationError

logger = logging.getLogger(__name__)


class GeometryError(ValidationError):
    """Raised when a geometry cannot be realized on the requested grid"""
    pass


def laminate(grid: GridSpec, axis: int = 1, fraction: float = 0.5) -> PhaseMap:
    """Phase 1 in the first fraction·N slabs along ``axis`` (1-based), phase 2 elsewhere"""
    if not 1 <= axis <= grid.d:
        raise GeometryError(f"Laminate axis must lie in 1…{grid.d}, got {axis}")
    count = fraction * grid.n_cells
    if not 0.0 < fraction < 1.0 or abs(count - round(count)) > 1e-9:
        raise GeometryError(f"Fraction {fraction} is not realizable with {grid.n_cells} cells per axis")
    index = np.indices(grid.shape)[axis - 1]
    return PhaseMap(grid, np.where(index < int(round(count)), 1, 2), 2)


def checkerboard(grid: GridSpec) -> PhaseMap:
    """2D block checkerboard: phase 1 + [(i ≥ N/2) xor (j ≥ N/2)]"""
    if grid.d != 2:
        raise GeometryError(f"Checkerboard is defined for d = 2, got d = {grid.d}")
    if grid.n_cells % 2:
        raise GeometryError(f"Checkerboard needs even N, got N = {grid.n_cells}")
    half = grid.n_cells // 2
    i, j = np.indices(grid.shape)
    return PhaseMap(grid, 1 + ((i >= half) ^ (j >= half)).astype(int), 2)


def disk(grid: GridSpec, radius: float, center: Optional[Sequence[float]] = None, phase: int = 2) -> PhaseMap:
    """
    Periodic ball of ``phase`` in a background of the other phase.

    Distances are measured in cells from ``center`` (default the middle of
    the cell) using the nearest periodic image; membership is strict, so a
    radius of 0 leaves the inclusion empty.
    """
    if phase not in (1, 2):
        raise GeometryError(f"Disk phase must be 1 or 2, got {phase}")
    n = grid.n_cells
    centre = np.full(grid.d, n / 2.0) if center is None else np.asarray(center, dtype=float)
    if centre.shape != (grid.d,):
        raise GeometryError(f"Center needs {grid.d} coordinates, got {centre.shape}")
    offsets = np.indices(grid.shape).astype(float) - centre.reshape((grid.d,) + (1,) * grid.d)
    offsets = (offsets + n / 2.0) % n - n / 2.0
    inside = np.sum(offsets ** 2, axis=0) < radius ** 2
    background = 1 if phase == 2 else 2
    return PhaseMap(grid, np.where(inside, phase, background), 2)


def random_phases(grid: GridSpec, n_phases: int, seed: int) -> PhaseMap:
    """Uniformly random phases from a seeded generator, with every phase placed at least once"""
    if not 1 <= n_phases <= grid.n_points:
        raise GeometryError(f"Cannot place {n_phases} phases on {grid.n_points} cells")
    rng = np.random.default_rng(seed)
    phases = rng.integers(1, n_phases + 1, size=grid.n_points)
    cells = rng.choice(grid.n_points, size=n_phases, replace=False)
    phases[cells] = np.arange(1, n_phases + 1)
    return PhaseMap(grid, phases.reshape(grid.shape), n_phases)


def get_generator(config: GeometryConfig) -> Callable[..., PhaseMap]:
    """
    Dynamically import and return the generator from its string path
    Example path: 'src.conductivity.geometry.laminate'
    """
    try:
        module_path, func_name = config.generator.rsplit('.', 1)
        module = importlib.import_module(module_path)
        return getattr(module, func_name)
    except (ImportError, AttributeError) as e:
        logger.error(f"Failed to load geometry generator {config.generator}: {e}")
        raise


def make_geometry(kind: str, grid: GridSpec, **params) -> PhaseMap:
    """Build a phase map of the given kind ('laminate', 'checkerboard', 'disk', 'random')"""
    try:
        config = get_geometry(kind)
    except KeyError as e:
        raise GeometryError(str(e)) from e
    generator = get_generator(config)
    try:
        pm = generator(grid, **params)
    except TypeError as e:
        raise GeometryError(f"Invalid parameters for {kind}: {e}") from e
    logger.debug(f"Generated {kind} geometry on N={grid.n_cells}, fractions {pm.volume_fractions()}")
    return pm
