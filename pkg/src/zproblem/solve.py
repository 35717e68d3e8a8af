"""Blocks, hypotheses, the unique solution and the effective operator of a Z-problem.

Everything is computed in subspace coordinates: L_ij = basis_i* L basis_j.
"""

import logging
from typing import List, Tuple

import numpy as np
import scipy.linalg as sla

from ..config.settings import DEFAULT_TOL, INVERTIBILITY_RTOL, LM_DELTA, LM_ANGLE_SAMPLES
from ..models.decomposition import TripleDecomposition
from ..models.operator import Operator, BlockPartition
from ..models.zproblem import ZProblem, ZSolution, HypothesisReport
from ..operators.core import (
    adjoint, ensure_invertible, schur_complement, is_self_adjoint, min_eigenvalue, check_lm,
    BlockNotInvertibleError,
)
from ..utils.errors import ValidationError, NumericalError

logger = logging.getLogger(__name__)


class HypothesisError(NumericalError):
    """Raised when an operation's solvability hypothesis does not hold"""
    pass


def block(p: ZProblem, i: int, j: int) -> Operator:
    """The compression L_ij = basis_i* L basis_j"""
    return adjoint(p.space.bases[i]) @ p.L @ p.space.bases[j]


def blocks(p: ZProblem) -> List[List[Operator]]:
    """3×3 grid of compressions of L against U, E, J"""
    return [[block(p, i, j) for j in range(3)] for i in range(3)]


def reassemble(space: TripleDecomposition, grid: List[List[Operator]]) -> Operator:
    """Σ basis_i L_ij basis_j*, the inverse of ``blocks``"""
    return sum(space.bases[i] @ grid[i][j] @ adjoint(space.bases[j]) for i in range(3) for j in range(3))


def compression_ue(p: ZProblem) -> Tuple[Operator, BlockPartition]:
    """L compressed to U ⊕ E, with the (dim U, dim E) split"""
    b = np.hstack([p.space.basis0, p.space.basis1])
    dim_u, dim_e, _ = p.space.dims
    return adjoint(b) @ p.L @ b, BlockPartition((dim_u, dim_e))


def _l11_invertible(l11: Operator) -> bool:
    try:
        ensure_invertible(l11, rtol=INVERTIBILITY_RTOL, label='L11')
        return True
    except BlockNotInvertibleError:
        return False


def hypothesis_flags(p: ZProblem, tol: float = DEFAULT_TOL) -> Tuple[bool, bool, bool]:
    """(h0, h1, h2) with the implication chain built in"""
    l11 = block(p, 1, 1)
    h0 = _l11_invertible(l11)
    h1 = h0 and is_self_adjoint(p.L, tol) and min_eigenvalue(l11) >= -tol * max(1.0, np.linalg.norm(l11))
    h2 = False
    if h1:
        scale = max(1.0, float(np.linalg.norm(p.L)))
        try:
            ensure_invertible(p.L, rtol=INVERTIBILITY_RTOL, label='L')
            h2 = min_eigenvalue(p.L) >= -tol * scale
        except BlockNotInvertibleError:
            h2 = False
    return h0, h1, h2


def check_hypotheses(p: ZProblem, delta: float = LM_DELTA,
                     angle_samples: int = LM_ANGLE_SAMPLES) -> HypothesisReport:
    """Evaluate (H0), (H1), (H2) and search for an (LM) angle"""
    h0, h1, h2 = hypothesis_flags(p)
    lm = check_lm(p.L, delta=delta, angle_samples=angle_samples)
    logger.debug(f"Hypotheses h0={h0} h1={h1} h2={h2} lm={lm}")
    return HypothesisReport(h0=h0, h1=h1, h2=h2, lm=lm)


def _as_u_vector(p: ZProblem, E0) -> np.ndarray:
    e0 = np.asarray(E0)
    if e0.ndim != 1 or e0.shape[0] != p.space.dims[0]:
        raise ValidationError(f"E0 must have {p.space.dims[0]} U-coordinates, got shape {e0.shape}")
    return e0


def solve(p: ZProblem, E0) -> ZSolution:
    """
    Unique solution of the Z-problem at E0 under (H0).

    E = −L11⁻¹ L10 E0, J0 = L00 E0 + L01 E, J = L20 E0 + L21 E.

    Raises:
        BlockNotInvertibleError: When L11 is not invertible
    """
    e0 = _as_u_vector(p, E0)
    g = blocks(p)
    ensure_invertible(g[1][1], label='L11')
    if g[1][1].shape[0]:
        e = -sla.solve(g[1][1], g[1][0] @ e0)
    else:
        e = np.zeros(0, dtype=np.result_type(p.L, e0))
    j0 = g[0][0] @ e0 + g[0][1] @ e
    j = g[2][0] @ e0 + g[2][1] @ e
    return ZSolution(J0=j0, E=e, J=j)


def effective_operator(p: ZProblem) -> Operator:
    """L* = L00 − L01 L11⁻¹ L10 on U, as the Schur complement of L compressed to U ⊕ E"""
    a, part = compression_ue(p)
    return schur_complement(a, part, label='L11')


def dirichlet_minimizer(p: ZProblem, E0) -> np.ndarray:
    """E-coordinates of −L11⁻¹ L10 E0"""
    return solve(p, E0).E
