"""Scalar fields and block partitions for dense operators.

Operators themselves are plain two-dimensional ``numpy`` arrays; the types
here carry the extra structure the algorithms need around them.
"""

from dataclasses import dataclass
from enum import Enum
from typing import List, Tuple

import numpy as np
import numpy.typing as npt

# A dense operator is a rectangular array of real or complex scalars
Operator = npt.NDArray[np.inexact]


class ScalarField(Enum):
    """The scalar field an operator or space lives over"""
    REAL = 'real'
    COMPLEX = 'complex'

    @property
    def dtype(self) -> np.dtype:
        return np.dtype(np.float64) if self is ScalarField.REAL else np.dtype(np.complex128)

    @classmethod
    def of(cls, *arrays: npt.ArrayLike) -> 'ScalarField':
        """The smallest field containing every given array"""
        for a in arrays:
            if np.iscomplexobj(a):
                return cls.COMPLEX
        return cls.REAL

    def join(self, other: 'ScalarField') -> 'ScalarField':
        return ScalarField.COMPLEX if ScalarField.COMPLEX in (self, other) else ScalarField.REAL


@dataclass(frozen=True)
class BlockPartition:
    """Ordered block sizes splitting a space into consecutive coordinate ranges"""
    sizes: Tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.sizes)
        if any(s < 0 for s in sizes):
            raise ValueError(f"Block sizes must be non-negative, got {sizes}")
        object.__setattr__(self, 'sizes', sizes)

    @property
    def total(self) -> int:
        return sum(self.sizes)

    @property
    def offsets(self) -> List[int]:
        """Start index of each block"""
        return [int(x) for x in np.concatenate(([0], np.cumsum(self.sizes)[:-1]))] if self.sizes else []

    def slices(self) -> List[slice]:
        return [slice(start, start + size) for start, size in zip(self.offsets, self.sizes)]

    def __len__(self) -> int:
        return len(self.sizes)
