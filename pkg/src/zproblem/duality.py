"""Dual Z-problems, the duality formula and abstract Keller–Dykhne–Mendelson conjugation."""

import logging
from typing import Optional

import numpy as np
import scipy.linalg as sla

from ..config.settings import DEFAULT_TOL, CONTRACT_TOL, LM_DELTA, LM_ANGLE_SAMPLES
from ..models.decomposition import TripleDecomposition
from ..models.operator import Operator
from ..models.zproblem import ZProblem
from ..operators.core import adjoint, as_operator, ensure_invertible, check_lm, lm_margin
from ..utils.errors import ValidationError
from .solve import effective_operator, HypothesisError

logger = logging.getLogger(__name__)


class RotationStructureError(ValidationError):
    """Raised when an operator R fails one of the mapping conditions required for conjugation"""

    def __init__(self, condition: str, residual: Optional[float] = None):
        self.condition = condition
        self.residual = residual
        detail = f" (residual {residual:.3e})" if residual is not None else ""
        super().__init__(f"R violates {condition}{detail}")


def dual(p: ZProblem) -> ZProblem:
    """The dual Z-problem (H, U, J, E, L⁻¹)"""
    ensure_invertible(p.L, label='L')
    return ZProblem(p.space.swapped(), sla.inv(p.L))


def _require_lm(l: Operator, what: str, delta: float, angle_samples: int) -> float:
    theta = check_lm(l, delta=delta, angle_samples=angle_samples)
    if theta is None:
        raise HypothesisError(f"No coercivity angle found for {what}")
    return theta


def duality_check(p: ZProblem, delta: float = LM_DELTA, angle_samples: int = LM_ANGLE_SAMPLES) -> float:
    """
    Relative residual of the duality formula (L⁻¹)_{*'} = (L*)⁻¹.

    Requires a coercivity angle for L. The dual operator L⁻¹ is searched
    again on the same grid; a miss there is only logged since coercivity of
    L implies it with a possibly smaller margin.
    """
    _require_lm(p.L, 'L', delta, angle_samples)
    q = dual(p)
    if check_lm(q.L, delta=delta, angle_samples=angle_samples) is None:
        logger.debug("No coercivity angle found on the grid for L⁻¹")
    l_star = effective_operator(p)
    if l_star.shape[0] == 0:
        return 0.0
    inverse = sla.inv(l_star)
    dual_star = effective_operator(q)
    return float(np.linalg.norm(dual_star - inverse) / np.linalg.norm(inverse))


def effective_adjoint_residual(p: ZProblem) -> float:
    """‖(L*)* − (L^*)_*‖ relative: the effective map commutes with taking adjoints"""
    l_star = effective_operator(p)
    adj_star = effective_operator(p.with_operator(adjoint(p.L)))
    scale = max(np.linalg.norm(l_star), np.finfo(float).tiny)
    return float(np.linalg.norm(adjoint(l_star) - adj_star) / scale)


def _leak(r: Operator, source: Operator, target: Operator) -> float:
    """‖(I − Γ_target) R Γ_source‖ relative to ‖R Γ_source‖"""
    image = r @ source
    scale = max(1.0, float(np.linalg.norm(image)))
    return float(np.linalg.norm(image - target @ image)) / scale


def check_rotation_structure(space: TripleDecomposition, R: Operator, tol: float = CONTRACT_TOL) -> None:
    """
    Verify R is invertible with R* = R⁻¹ = −R, RU ⊆ U, RE ⊆ J and RJ ⊆ E.

    Raises:
        RotationStructureError: Naming the first mapping condition that fails
    """
    r = as_operator(R)
    if r.shape != (space.dim, space.dim):
        raise RotationStructureError(f"shape {space.dim}×{space.dim}")
    scale = max(1.0, float(np.linalg.norm(r)))
    unitary = float(np.linalg.norm(adjoint(r) @ r - np.eye(space.dim))) / scale
    if unitary > tol:
        raise RotationStructureError("R* = R⁻¹", unitary)
    skew = float(np.linalg.norm(adjoint(r) + r)) / scale
    if skew > tol:
        raise RotationStructureError("R* = −R", skew)
    g0, g1, g2 = space.gammas
    for name, source, target in (('RU ⊆ U', g0, g0), ('RE ⊆ J', g1, g2), ('RJ ⊆ E', g2, g1)):
        leak = _leak(r, source, target)
        if leak > tol:
            raise RotationStructureError(name, leak)
    _, dim_e, dim_j = space.dims
    if dim_e != dim_j:
        raise RotationStructureError("RE = J (dim E equals dim J)")


def restrict_to_u(space: TripleDecomposition, R: Operator) -> Operator:
    """R acting on U, in U coordinates"""
    return adjoint(space.basis0) @ as_operator(R) @ space.basis0


def kdm_conjugate(p: ZProblem, R: Operator, tol: float = CONTRACT_TOL, delta: float = LM_DELTA,
                  angle_samples: int = LM_ANGLE_SAMPLES) -> Operator:
    """
    R[(R⁻¹L⁻¹R)*]⁻¹R⁻¹ on U, which equals L* for every admissible R.

    The inner effective operator is taken on the same decomposition
    (H, U, E, J); R⁻¹ = R*.
    """
    check_rotation_structure(p.space, R, tol)
    _require_lm(p.L, 'L', delta, angle_samples)
    r = as_operator(R)
    ensure_invertible(p.L, label='L')
    conjugated = adjoint(r) @ sla.inv(p.L) @ r
    inner = effective_operator(p.with_operator(conjugated))
    r_u = restrict_to_u(p.space, r)
    if inner.shape[0] == 0:
        return inner
    return r_u @ sla.inv(inner) @ adjoint(r_u)


def kdm_residual(p: ZProblem, R: Operator, tol: float = CONTRACT_TOL) -> float:
    """‖kdm_conjugate − L*‖ / ‖L*‖"""
    l_star = effective_operator(p)
    scale = max(np.linalg.norm(l_star), np.finfo(float).tiny)
    return float(np.linalg.norm(kdm_conjugate(p, R, tol) - l_star) / scale)


def lm_inherited(p: ZProblem, delta: float = LM_DELTA, angle_samples: int = LM_ANGLE_SAMPLES) -> bool:
    """Whether the coercivity angle of L also works for L* (effective operators inherit coercivity)"""
    theta = _require_lm(p.L, 'L', delta, angle_samples)
    l_star = effective_operator(p)
    if l_star.shape[0] == 0:
        return True
    return lm_margin(l_star, theta) >= delta - DEFAULT_TOL
