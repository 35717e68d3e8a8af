"""Test fixtures and instance builders."""

import json
from pathlib import Path
from typing import List, Optional

import numpy as np

from src.models.decomposition import TripleDecomposition
from src.models.grid import PhaseMap
from src.models.operator import BlockPartition
from src.models.pencil import NormalizedPencil, PencilPoint
from src.models.schemas import save_phase_map, save_pencil
from src.models.zproblem import ZProblem


def coordinate_decomposition(dim_u: int, dim_e: int, dim_j: int) -> TripleDecomposition:
    """U, E, J spanned by consecutive standard basis vectors."""
    eye = np.eye(dim_u + dim_e + dim_j)
    return TripleDecomposition.from_bases(
        eye[:, :dim_u], eye[:, dim_u:dim_u + dim_e], eye[:, dim_u + dim_e:])


def create_three_axis_problem(**overrides) -> ZProblem:
    """The hand-computable 3D problem: L* = 5/3 and the dual effective operator 3/5."""
    defaults = {
        'L': np.array([[2.0, 1.0, 0.0], [1.0, 3.0, 0.0], [0.0, 0.0, 5.0]]),
        'space': coordinate_decomposition(1, 1, 1),
    }
    data = {**defaults, **overrides}
    return ZProblem(data['space'], data['L'])


def create_harmonic_mean_pencil() -> NormalizedPencil:
    """A1 = ½[[1,1],[1,1]], A2 = ½[[1,−1],[−1,1]] on H0 ⊕ H1 = ℂ ⊕ ℂ."""
    a1 = 0.5 * np.array([[1.0, 1.0], [1.0, 1.0]])
    a2 = 0.5 * np.array([[1.0, -1.0], [-1.0, 1.0]])
    return NormalizedPencil.from_coeffs((a1, a2), 1, 1)


def create_identity_split_pencil() -> NormalizedPencil:
    """A1 = I on H0, A2 = I on H1: f(z) = z1 with a trivial H1 coupling."""
    a1 = np.diag([1.0, 1.0, 0.0])
    a2 = np.diag([0.0, 0.0, 1.0])
    return NormalizedPencil(tuple((a1, a2)), BlockPartition((2, 1))).validate()


def points(*rows) -> List[PencilPoint]:
    return [PencilPoint(tuple(row)) for row in rows]


def write_phase_map(path: Path, pm: PhaseMap) -> Path:
    return save_phase_map(pm, path)


def write_pencil(path: Path, pencil: NormalizedPencil) -> Path:
    return save_pencil(pencil, path)


def write_json(path: Path, payload: dict, indent: Optional[int] = None) -> Path:
    path.write_text(json.dumps(payload, indent=indent), encoding='utf-8')
    return path
