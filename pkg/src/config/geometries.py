from dataclasses import dataclass
from typing import Dict, Tuple


@dataclass
class GeometryConfig:
    """Configuration for a phase map generator"""
    name: str
    generator: str  # Full path to generator function
    description: str
    shorthand: Tuple[str, ...] = ()  # Positional parameters after N in gen:<kind>:N:...


GEOMETRIES = {
    'laminate': GeometryConfig(
        name='laminate',
        generator='src.conductivity.geometry.laminate',
        description='Two-phase slabs normal to one axis',
        shorthand=('axis', 'fraction'),
    ),
    'checkerboard': GeometryConfig(
        name='checkerboard',
        generator='src.conductivity.geometry.checkerboard',
        description='Two-phase 2D block checkerboard (even N)',
    ),
    'disk': GeometryConfig(
        name='disk',
        generator='src.conductivity.geometry.disk',
        description='Periodic ball of one phase in a background phase',
        shorthand=('radius', 'phase'),
    ),
    'random': GeometryConfig(
        name='random',
        generator='src.conductivity.geometry.random_phases',
        description='Seeded random n-phase voxels',
        shorthand=('n_phases', 'seed'),
    ),
}


def get_geometry(kind: str) -> GeometryConfig:
    """Look up a generator configuration by kind"""
    if kind not in GEOMETRIES:
        raise KeyError(f"Unknown geometry kind '{kind}', expected one of {sorted(GEOMETRIES)}")
    return GEOMETRIES[kind]
