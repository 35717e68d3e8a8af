"""Dense operator foundations: adjoints, self-adjoint parts, Loewner order,
Schur complements, the coercivity (LM) test and projection bases.

Every function is pure and accepts plain ``numpy`` arrays. Norms are
Frobenius unless stated otherwise.
"""

import logging
from typing import Optional, NamedTuple

import numpy as np
import scipy.linalg as sla

from ..config.settings import (
    DEFAULT_TOL, INVERTIBILITY_RTOL, SYMMETRY_TOL, LM_ANGLE_SAMPLES, LM_DELTA, CONDITION_WARNING,
)
from ..models.operator import Operator, BlockPartition, ScalarField
from ..utils.errors import ValidationError, NumericalError

logger = logging.getLogger(__name__)


class BlockNotInvertibleError(NumericalError):
    """Raised when a block fails the singular value invertibility test"""

    def __init__(self, label: str, condition: float):
        self.label = label
        self.condition = condition
        super().__init__(f"{label} not invertible (condition estimate {condition:.3e})")


class NotSelfAdjointError(ValidationError):
    """Raised when an operator required to be self-adjoint is not"""
    pass


class NotProjectionError(ValidationError):
    """Raised when an operator is not an orthogonal projection to tolerance"""
    pass


class FieldMismatchError(ValidationError):
    """Raised when complex data enters a computation declared real"""
    pass


class PartitionError(ValidationError):
    """Raised when a block partition does not fit the operator"""
    pass


class IsometryRange(NamedTuple):
    """Range projection of an isometry V together with the inverse pair checks"""
    projection: Operator
    residual: float


def as_operator(a) -> Operator:
    """Coerce input to a 2D float or complex array"""
    arr = np.asarray(a)
    if arr.ndim != 2:
        raise PartitionError(f"Expected a 2D operator, got shape {arr.shape}")
    dtype = np.complex128 if np.iscomplexobj(arr) else np.float64
    return arr.astype(dtype, copy=False)


def _require_square(a: Operator, what: str = 'operator') -> None:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise PartitionError(f"{what} must be square, got shape {a.shape}")


def common_field(*arrays, field: Optional[ScalarField] = None) -> ScalarField:
    """Field shared by the arrays; a REAL declaration rejects genuinely complex data"""
    found = ScalarField.of(*arrays)
    if field is ScalarField.REAL and found is ScalarField.COMPLEX:
        for a in arrays:
            if np.iscomplexobj(a) and np.any(np.imag(a) != 0):
                raise FieldMismatchError("Complex-valued data in a real-field computation")
        return ScalarField.REAL
    return found if field is None else field.join(found)


def adjoint(a: Operator) -> Operator:
    """Conjugate transpose"""
    a = np.asarray(a)
    return a.conj().T


def re_part(a: Operator) -> Operator:
    """Self-adjoint part ½(A + A*)"""
    a = as_operator(a)
    _require_square(a)
    return 0.5 * (a + adjoint(a))


def skew_part(a: Operator) -> Operator:
    """Skew-adjoint part ½(A − A*), so that A = re_part(A) + skew_part(A)"""
    a = as_operator(a)
    _require_square(a)
    return 0.5 * (a - adjoint(a))


def is_self_adjoint(a: Operator, tol: float = DEFAULT_TOL) -> bool:
    a = as_operator(a)
    _require_square(a)
    return bool(np.linalg.norm(a - adjoint(a)) <= tol * (1.0 + np.linalg.norm(a)))


def min_eigenvalue(a: Operator) -> float:
    """Smallest eigenvalue of the self-adjoint part (``inf`` for an empty operator)"""
    h = re_part(a)
    if h.shape[0] == 0:
        return float('inf')
    return float(sla.eigvalsh(h, subset_by_index=[0, 0])[0])


def condition_estimate(a: Operator) -> float:
    """Ratio of largest to smallest singular value"""
    a = as_operator(a)
    if a.size == 0:
        return 1.0
    s = sla.svdvals(a)
    if s[-1] == 0.0:
        return float('inf')
    return float(s[0] / s[-1])


def ensure_invertible(a: Operator, rtol: float = INVERTIBILITY_RTOL, label: str = 'block') -> float:
    """Raise BlockNotInvertibleError unless σ_min > rtol·σ_max; returns the condition estimate"""
    a = as_operator(a)
    _require_square(a, label)
    if a.shape[0] == 0:
        return 1.0
    s = sla.svdvals(a)
    condition = float('inf') if s[-1] == 0.0 else float(s[0] / s[-1])
    if s[0] == 0.0 or s[-1] <= rtol * s[0]:
        raise BlockNotInvertibleError(label, condition)
    if condition > CONDITION_WARNING:
        logger.warning(f"{label} is poorly conditioned (condition estimate {condition:.3e})")
    else:
        logger.debug(f"{label} condition estimate {condition:.3e}")
    return condition


def schur_complement(a: Operator, part: BlockPartition, rtol: float = INVERTIBILITY_RTOL,
                     label: str = 'A11') -> Operator:
    """
    Schur complement A00 − A01 A11⁻¹ A10 of the second diagonal block.

    Args:
        a: Square operator
        part: Two block sizes whose sum is the dimension of ``a``
        rtol: Invertibility threshold for A11
        label: Name used for A11 in errors and log messages

    Raises:
        PartitionError: When ``a`` is not square or the partition does not fit
        BlockNotInvertibleError: When A11 fails the invertibility test
    """
    a = as_operator(a)
    _require_square(a)
    if len(part) != 2 or part.total != a.shape[0]:
        raise PartitionError(f"Partition {part.sizes} does not split a space of dimension {a.shape[0]} in two")
    s0, s1 = part.slices()
    a00, a01, a10, a11 = a[s0, s0], a[s0, s1], a[s1, s0], a[s1, s1]
    if a11.shape[0] == 0:
        return a00.copy()
    ensure_invertible(a11, rtol=rtol, label=label)
    return a00 - a01 @ sla.solve(a11, a10)


def loewner_leq(a: Operator, b: Operator, tol: float = DEFAULT_TOL) -> bool:
    """True iff B − A is positive semidefinite up to tol·(1 + ‖B − A‖)"""
    a, b = as_operator(a), as_operator(b)
    if a.shape != b.shape:
        raise PartitionError(f"Cannot compare operators of shapes {a.shape} and {b.shape}")
    _require_square(a)
    for name, m in (('A', a), ('B', b)):
        if not is_self_adjoint(m, SYMMETRY_TOL):
            raise NotSelfAdjointError(f"Loewner comparison needs self-adjoint {name}")
    return loewner_gap(a, b) <= tol


def lm_margin(l: Operator, theta: float) -> float:
    """Smallest eigenvalue of Re(e^{iθ} L)"""
    return min_eigenvalue(np.exp(1j * theta) * as_operator(l))


def check_lm(l: Operator, delta: float = LM_DELTA, angle_samples: int = LM_ANGLE_SAMPLES) -> Optional[float]:
    """
    Search for a rotation making L uniformly coercive.

    Tries θ on a uniform grid of ``angle_samples`` points in [0, 2π) and
    returns the first θ with min eig Re(e^{iθ}L) ≥ delta, or None. The grid
    is a sufficient test only: a None answer does not prove that no angle
    exists between grid points.
    """
    l = as_operator(l)
    _require_square(l)
    if angle_samples < 4:
        raise ValidationError(f"angle_samples must be at least 4, got {angle_samples}")
    for k in range(angle_samples):
        theta = 2.0 * np.pi * k / angle_samples
        if lm_margin(l, theta) >= delta:
            return theta
    return None


def orthonormal_basis(p: Operator, tol: float = DEFAULT_TOL) -> Operator:
    """
    Column isometry B with B*B = I and BB* = P for an orthogonal projection P.

    Columns follow descending eigenvalue, then the index of their largest
    entry; each column is rotated so that entry is real and positive.
    """
    p = as_operator(p)
    _require_square(p, 'projection')
    scale = max(1.0, float(np.linalg.norm(p)))
    if np.linalg.norm(p - adjoint(p)) > tol * scale:
        raise NotProjectionError("Projection is not self-adjoint")
    if np.linalg.norm(p @ p - p) > tol * scale:
        raise NotProjectionError("Projection is not idempotent")
    if p.shape[0] == 0:
        return np.zeros((0, 0), dtype=p.dtype)
    w, q = sla.eigh(re_part(p))
    keep = w > 0.5
    w, q = w[keep], q[:, keep]
    if q.shape[1] == 0:
        return np.zeros((p.shape[0], 0), dtype=p.dtype)
    pivots = np.argmax(np.abs(q), axis=0)
    order = sorted(range(q.shape[1]), key=lambda j: (-round(float(w[j]), 8), int(pivots[j])))
    q = q[:, order]
    pivots = pivots[order]
    lead = q[pivots, np.arange(q.shape[1])]
    phase = np.abs(lead) / lead  # conj(lead)/|lead|
    return q * phase


def isometry_restriction(v: Operator, tol: float = DEFAULT_TOL) -> IsometryRange:
    """
    Range projection VV* of an isometry V (V*V = I).

    V restricted onto its range and V* are mutually inverse unitaries; the
    returned residual measures both V*V = I and (VV*)V = V.
    """
    v = as_operator(v)
    gram = adjoint(v) @ v
    projection = v @ adjoint(v)
    residual = max(
        float(np.linalg.norm(gram - np.eye(v.shape[1]))),
        float(np.linalg.norm(projection @ v - v)),
    ) if v.size else 0.0
    if residual > tol * max(1.0, np.sqrt(v.shape[1])):
        raise NumericalError(f"Operator is not an isometry (residual {residual:.3e})")
    return IsometryRange(projection=projection, residual=residual)


def loewner_gap(a: Operator, b: Operator) -> float:
    """How far B − A is from positive semidefinite: max(0, −λ_min(B − A)) / (1 + ‖B − A‖)"""
    a, b = as_operator(a), as_operator(b)
    if a.shape != b.shape:
        raise PartitionError(f"Cannot compare operators of shapes {a.shape} and {b.shape}")
    if a.shape[0] == 0:
        return 0.0
    d = re_part(b - a)
    return max(0.0, -min_eigenvalue(d)) / (1.0 + float(np.linalg.norm(d)))
