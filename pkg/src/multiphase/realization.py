"""Realizing a normalized PSD pencil as the effective map of an n-phase subspace collection.

Each coefficient is factored as Ai = Vi* Vi. Stacking the Vi gives an
isometry V from H0 ⊕ H1 into the dilation space ⊕ ran Vi, in which
U = V H0, E = V H1, J is the orthogonal complement and Λi selects the
i-th block. T carries H0 onto U.
"""

import logging
from typing import Iterable, List

import numpy as np
import scipy.linalg as sla

from ..config.settings import DEFAULT_TOL
from ..models.decomposition import TripleDecomposition, SubspaceCollection, range_projection
from ..models.operator import Operator
from ..models.pencil import NormalizedPencil, PencilPoint, Realization
from ..operators.core import adjoint, re_part, isometry_restriction
from .pencil import effective_map, schur_of_pencil

logger = logging.getLogger(__name__)


def rank_factor(a: Operator, n_phases: int, full_root: bool = False) -> Operator:
    """
    V with V*V = A for a positive semidefinite A.

    By default only eigenpairs with eigenvalue above n·dim·eps·‖A‖ are kept,
    so V has rank(A) rows. ``full_root`` returns the square root A^{1/2}.
    """
    h = re_part(a)
    dim = h.shape[0]
    w, q = sla.eigh(h)
    if full_root:
        return (q * np.sqrt(np.clip(w, 0.0, None))) @ adjoint(q)
    norm = float(np.max(np.abs(w))) if dim else 0.0
    keep = w > n_phases * dim * np.finfo(float).eps * norm
    if norm == 0.0:
        keep[:] = False
    return np.sqrt(w[keep])[:, None] * adjoint(q[:, keep])


def realize(p: NormalizedPencil, full_root: bool = False, tol: float = DEFAULT_TOL) -> Realization:
    """
    Build a subspace collection and a unitary T with f(z) = T* L*(z) T on D.

    Args:
        p: Normalized pencil to realize; validated first
        full_root: Use Ai^{1/2} instead of the minimal rank factorization
        tol: Tolerance for pencil validation and the isometry check

    Raises:
        PencilValidationError: When the pencil violates an invariant
    """
    p.validate(tol)
    factors = [rank_factor(a, p.n, full_root) for a in p.coeffs]
    ranks = tuple(int(v.shape[0]) for v in factors)
    v = np.vstack(factors)
    isometry_restriction(v, tol)
    m = v.shape[0]
    dim_h0 = p.split.sizes[0]
    logger.info(f"Realizing {p.n}-phase pencil on {p.dim} dimensions with dilation dimension {m} (ranks {ranks})")

    g0 = range_projection(v[:, :dim_h0])
    g1 = range_projection(v[:, dim_h0:])
    space = TripleDecomposition.from_projections(g0, g1, np.eye(m) - g0 - g1, tol)

    lambdas: List[Operator] = []
    offset = 0
    for r in ranks:
        selector = np.zeros((m, m))
        selector[offset:offset + r, offset:offset + r] = np.eye(r)
        lambdas.append(selector)
        offset += r
    collection = SubspaceCollection(space, tuple(lambdas)).validate(tol)

    t = adjoint(space.basis0) @ v[:, :dim_h0]
    return Realization(collection=collection, T=t, V=v, ranks=ranks)


def round_trip_residual(r: Realization, p: NormalizedPencil, z: PencilPoint) -> float:
    """‖f(z) − T* L*(z) T‖ / ‖f(z)‖"""
    f = schur_of_pencil(p, z)
    g = adjoint(r.T) @ effective_map(r.collection, z) @ r.T
    scale = max(float(np.linalg.norm(f)), np.finfo(float).tiny)
    return float(np.linalg.norm(f - g)) / scale


def max_round_trip_residual(r: Realization, p: NormalizedPencil, points: Iterable[PencilPoint]) -> float:
    return max((round_trip_residual(r, p, z) for z in points), default=0.0)
