"""JSON file schemas for phase maps and normalized pencils.

Files are validated with pydantic and converted to domain objects with
``to_domain``; any schema failure surfaces as our ValidationError.
"""

import json
from pathlib import Path
from typing import List, Union

import numpy as np

from pydantic import BaseModel, Field, model_validator
from pydantic import ValidationError as SchemaError

from .grid import GridSpec, PhaseMap
from .operator import BlockPartition
from .pencil import NormalizedPencil
from ..utils.errors import ValidationError
from ..utils.serialization import pairs_to_matrix, matrix_to_pairs

# Row-major matrix of [re, im] pairs
ComplexMatrix = List[List[List[float]]]


class PhaseMapFile(BaseModel):
    """{"d": int, "n": int, "n_phases": int, "phases": [int, ...] row-major}"""
    d: int = Field(ge=2, le=3)
    n: int = Field(ge=2)
    n_phases: int = Field(ge=1)
    phases: List[int]

    @model_validator(mode='after')
    def check_cells(self) -> 'PhaseMapFile':
        if len(self.phases) != self.n ** self.d:
            raise ValueError(f"phases has {len(self.phases)} entries, expected n^d = {self.n ** self.d}")
        return self

    def to_domain(self) -> PhaseMap:
        grid = GridSpec(self.d, self.n)
        return PhaseMap(grid, self.phases, self.n_phases)

    @classmethod
    def from_domain(cls, pm: PhaseMap) -> 'PhaseMapFile':
        return cls(**pm.to_dict())


class PencilFile(BaseModel):
    """{"n": int, "dim_h0": int, "dim_h1": int, "coeffs": [matrix of [re, im], ...]}"""
    n: int = Field(ge=1)
    dim_h0: int = Field(ge=0)
    dim_h1: int = Field(ge=0)
    coeffs: List[ComplexMatrix]

    @model_validator(mode='after')
    def check_shapes(self) -> 'PencilFile':
        size = self.dim_h0 + self.dim_h1
        if len(self.coeffs) != self.n:
            raise ValueError(f"coeffs has {len(self.coeffs)} matrices, expected n = {self.n}")
        for i, matrix in enumerate(self.coeffs, start=1):
            if len(matrix) != size or any(len(row) != size for row in matrix):
                raise ValueError(f"coefficient {i} is not {size}×{size}")
            if any(len(pair) != 2 for row in matrix for pair in row):
                raise ValueError(f"coefficient {i} has entries that are not [re, im] pairs")
        return self

    def to_domain(self) -> NormalizedPencil:
        """Validated NormalizedPencil; raises PencilValidationError naming the violated invariant"""
        size = self.dim_h0 + self.dim_h1
        coeffs = tuple(pairs_to_matrix(m) if size else np.zeros((0, 0)) for m in self.coeffs)
        return NormalizedPencil(coeffs, BlockPartition((self.dim_h0, self.dim_h1))).validate()

    @classmethod
    def from_domain(cls, pencil: NormalizedPencil) -> 'PencilFile':
        return cls(n=pencil.n, dim_h0=pencil.split.sizes[0], dim_h1=pencil.split.sizes[1],
                   coeffs=[matrix_to_pairs(a) for a in pencil.coeffs])


def _read(path: Union[str, Path]) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding='utf-8'))
    except OSError as e:
        raise ValidationError(f"Cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise ValidationError(f"{path} is not valid JSON: {e}") from e


def load_phase_map(path: Union[str, Path]) -> PhaseMap:
    try:
        return PhaseMapFile.model_validate(_read(path)).to_domain()
    except SchemaError as e:
        raise ValidationError(f"Invalid phase map file {path}: {e}") from e


def load_pencil(path: Union[str, Path]) -> NormalizedPencil:
    try:
        return PencilFile.model_validate(_read(path)).to_domain()
    except SchemaError as e:
        raise ValidationError(f"Invalid pencil file {path}: {e}") from e


def _write(path: Union[str, Path], model: BaseModel) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(model.model_dump_json(indent=2), encoding='utf-8')
    return path


def save_phase_map(pm: PhaseMap, path: Union[str, Path]) -> Path:
    return _write(path, PhaseMapFile.from_domain(pm))


def save_pencil(pencil: NormalizedPencil, path: Union[str, Path]) -> Path:
    return _write(path, PencilFile.from_domain(pencil))
