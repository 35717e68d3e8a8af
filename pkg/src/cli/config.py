"""Job configuration for the command line front end."""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Dict, Callable, Any

from ..config.backends import BACKENDS, get_enabled_backends
from ..config.geometries import GEOMETRIES
from ..config.settings import SolverConfig, CONTRACT_TOL
from ..conductivity.geometry import make_geometry
from ..models.grid import GridSpec, PhaseMap
from ..models.pencil import PencilPoint
from ..models.schemas import load_phase_map
from ..multiphase.pencil import in_domain_D
from ..utils.errors import ValidationError
from ..utils.serialization import parse_z

logger = logging.getLogger(__name__)

COMMANDS = ('effective', 'sweep', 'verify', 'realize')
FORMATS = ('json', 'csv')

# Type of each positional shorthand parameter after N
_SHORTHAND_TYPES: Dict[str, Callable[[str], Any]] = {
    'axis': int,
    'fraction': float,
    'radius': float,
    'phase': int,
    'n_phases': int,
    'seed': int,
}


class ConfigError(ValidationError):
    """Raised when a job configuration is invalid"""
    pass


def parse_geometry(source: str, dim: int = 2) -> PhaseMap:
    """
    Load a phase map from a JSON file or build it from a generator shorthand.

    Shorthands: gen:checkerboard:N, gen:laminate:N:axis:frac,
    gen:random:N:phases:seed, gen:disk:N:radius[:phase].
    """
    if not source.startswith('gen:'):
        return load_phase_map(source)
    parts = source.split(':')[1:]
    if len(parts) < 2:
        raise ConfigError(f"Geometry shorthand '{source}' needs at least a kind and N")
    kind, n_text, *rest = parts
    if kind not in GEOMETRIES:
        raise ConfigError(f"Unknown geometry kind '{kind}' in '{source}'")
    names = GEOMETRIES[kind].shorthand
    if len(rest) > len(names):
        raise ConfigError(f"Too many parameters in '{source}', expected {names}")
    try:
        n = int(n_text)
        params = {name: _SHORTHAND_TYPES[name](value) for name, value in zip(names, rest)}
    except ValueError as e:
        raise ConfigError(f"Cannot parse geometry shorthand '{source}': {e}") from e
    grid = GridSpec(dim, n)
    logger.info(f"Generating {kind} geometry on a {dim}D grid with N={n} {params}")
    return make_geometry(kind, grid, **params)


@dataclass
class JobConfig:
    """Everything a command needs; validated before any solve starts"""
    command: str
    geometry: Optional[str] = None
    z_points: List[PencilPoint] = field(default_factory=list)
    backend: str = 'dense'
    tol: float = CONTRACT_TOL
    jobs: int = 1
    out: Optional[Path] = None
    fmt: Optional[str] = None  # Defaults to csv for sweep, json otherwise
    pencil: Optional[Path] = None
    seed: int = 0
    dim: int = 2
    quiet: bool = False
    solver: SolverConfig = field(default_factory=SolverConfig.from_env)

    @property
    def output_format(self) -> str:
        if self.fmt:
            return self.fmt
        return 'csv' if self.command == 'sweep' else 'json'

    def validate(self) -> 'JobConfig':
        """
        Check the configuration, failing fast on every z outside D.

        Raises:
            ConfigError: Listing what is wrong
        """
        if self.command not in COMMANDS:
            raise ConfigError(f"Unknown command '{self.command}', expected one of {COMMANDS}")
        if self.backend not in BACKENDS:
            raise ConfigError(f"Unknown backend '{self.backend}', expected one of {sorted(BACKENDS)}")
        if self.backend not in get_enabled_backends():
            raise ConfigError(f"Backend '{self.backend}' is disabled")
        if self.fmt is not None and self.fmt not in FORMATS:
            raise ConfigError(f"Unknown format '{self.fmt}', expected one of {FORMATS}")
        if self.jobs < 1:
            raise ConfigError(f"--jobs must be at least 1, got {self.jobs}")
        if self.tol <= 0:
            raise ConfigError(f"--tol must be positive, got {self.tol}")
        if self.command == 'realize':
            if self.pencil is None:
                raise ConfigError("realize needs --pencil <file>")
        elif self.geometry is None:
            raise ConfigError(f"{self.command} needs --geometry")
        if self.command in ('effective', 'sweep') and not self.z_points:
            raise ConfigError(f"{self.command} needs at least one --z")
        offenders = [z for z in self.z_points if not in_domain_D(z)]
        if offenders:
            listed = ', '.join(str(z.z) for z in offenders)
            raise ConfigError(f"z not in domain D: {listed}")
        if self.command in ('effective', 'sweep') and not BACKENDS[self.backend].complex_support:
            unsupported = [z for z in self.z_points if not z.is_positive()]
            if unsupported:
                listed = ', '.join(str(z.z) for z in unsupported)
                raise ConfigError(f"Backend '{self.backend}' needs real positive z, got {listed}")
        return self

    def load_phase_map(self) -> PhaseMap:
        return parse_geometry(self.geometry, self.dim)

    @classmethod
    def from_args(cls, args) -> 'JobConfig':
        """Create config from parsed command line arguments"""
        solver = SolverConfig.from_env()
        jobs = args.jobs if getattr(args, 'jobs', None) else solver.jobs
        dim = args.dim if getattr(args, 'dim', None) else solver.grid_dim
        return cls(
            command=args.command,
            geometry=getattr(args, 'geometry', None),
            z_points=[PencilPoint(parse_z(text)) for text in (getattr(args, 'z', None) or [])],
            backend=getattr(args, 'backend', None) or 'dense',
            tol=args.tol if getattr(args, 'tol', None) else solver.contract_tol,
            jobs=jobs,
            out=Path(args.out) if getattr(args, 'out', None) else None,
            fmt=getattr(args, 'format', None),
            pencil=Path(args.pencil) if getattr(args, 'pencil', None) else None,
            seed=getattr(args, 'seed', 0) or 0,
            dim=dim,
            quiet=getattr(args, 'quiet', False),
            solver=solver,
        )
