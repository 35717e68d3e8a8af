"""Complex numbers as [re, im] pairs, the wire format used in every report and file."""

from typing import List, Sequence, Tuple

import numpy as np

from .errors import ValidationError


def complex_to_pair(value: complex) -> List[float]:
    value = complex(value)
    return [float(value.real), float(value.imag)]


def pair_to_complex(pair: Sequence[float]) -> complex:
    if len(pair) != 2:
        raise ValidationError(f"Expected an [re, im] pair, got {list(pair)}")
    return complex(float(pair[0]), float(pair[1]))


def matrix_to_pairs(matrix: np.ndarray) -> List[List[List[float]]]:
    """Row-major nested lists of [re, im] pairs"""
    return [[complex_to_pair(v) for v in row] for row in np.atleast_2d(matrix)]


def pairs_to_matrix(rows: Sequence[Sequence[Sequence[float]]]) -> np.ndarray:
    matrix = np.array([[pair_to_complex(p) for p in row] for row in rows], dtype=np.complex128)
    return matrix.real.copy() if not np.any(matrix.imag) else matrix


def parse_z(text: str) -> Tuple[complex, ...]:
    """
    Parse a pencil point written as "re,im;re,im;…".

    A component without a comma is read as a real number.
    """
    components = [c.strip() for c in text.split(';') if c.strip()]
    if not components:
        raise ValidationError(f"Empty z point: '{text}'")
    values = []
    for component in components:
        parts = [p.strip() for p in component.split(',')]
        try:
            if len(parts) == 1:
                values.append(complex(float(parts[0]), 0.0))
            elif len(parts) == 2:
                values.append(complex(float(parts[0]), float(parts[1])))
            else:
                raise ValueError(component)
        except ValueError:
            raise ValidationError(f"Cannot parse z component '{component}' in '{text}'")
    return tuple(values)
