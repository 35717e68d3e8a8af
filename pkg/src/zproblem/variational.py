"""Dirichlet and Thomson principles, classical bounds and monotonicity of the effective operator."""

import logging
from typing import NamedTuple, Optional, Union

import numpy as np
import scipy.linalg as sla

from ..config.settings import DEFAULT_TOL
from ..models.operator import Operator
from ..models.zproblem import ZProblem
from ..operators.core import adjoint, ensure_invertible, loewner_leq, is_self_adjoint
from ..utils.errors import ValidationError
from .solve import block, effective_operator, hypothesis_flags, HypothesisError

logger = logging.getLogger(__name__)


class DecompositionMismatchError(ValidationError):
    """Raised when two Z-problems compared against each other use different decompositions"""
    pass


class ThomsonBounds(NamedTuple):
    lower: Operator
    upper: Operator


class MonotonicityReport(NamedTuple):
    mono: Optional[bool]  # None when L and M are incomparable
    concave: bool


def _quadratic_form(x: np.ndarray, y: np.ndarray, real: bool) -> Union[float, complex]:
    value = np.vdot(x, y)
    return float(value.real) if real else complex(value)


def dirichlet_energy(p: ZProblem, E0, E) -> Union[float, complex]:
    """(E0 + E, L(E0 + E)); real when L is self-adjoint with positive L11"""
    x = p.space.embed(0, E0) + p.space.embed(1, E)
    return _quadratic_form(x, p.L @ x, hypothesis_flags(p)[1])


def _inverse(p: ZProblem) -> Operator:
    ensure_invertible(p.L, label='L')
    return sla.inv(p.L)


def thomson_energy(p: ZProblem, J0, J) -> Union[float, complex]:
    """(J0 + J, L⁻¹(J0 + J)); real when L is self-adjoint"""
    y = p.space.embed(0, J0) + p.space.embed(2, J)
    return _quadratic_form(y, sla.solve(p.L, y), is_self_adjoint(p.L))


def thomson_minimizer(p: ZProblem, J0) -> np.ndarray:
    """J-coordinates of −(L⁻¹)22⁻¹ (L⁻¹)20 J0, the minimizer of the Thomson energy"""
    m = _inverse(p)
    b0, _, b2 = p.space.bases
    m22 = adjoint(b2) @ m @ b2
    if m22.shape[0] == 0:
        return np.zeros(0, dtype=m.dtype)
    ensure_invertible(m22, label='(L⁻¹)22')
    return -sla.solve(m22, adjoint(b2) @ m @ b0 @ np.asarray(J0))


def thomson_bounds(p: ZProblem) -> ThomsonBounds:
    """
    Classical bounds [(L⁻¹)00]⁻¹ ⪯ L* ⪯ L00 under (H2).

    Raises:
        HypothesisError: When L is not positive definite
    """
    if not hypothesis_flags(p)[2]:
        raise HypothesisError("Bounds need L self-adjoint, positive semidefinite and invertible")
    b0 = p.space.basis0
    m00 = adjoint(b0) @ _inverse(p) @ b0
    ensure_invertible(m00, label='(L⁻¹)00')
    return ThomsonBounds(lower=sla.inv(m00), upper=block(p, 0, 0))


def monotonicity_concavity_check(pL: ZProblem, pM: ZProblem, t: float,
                                 tol: float = DEFAULT_TOL) -> MonotonicityReport:
    """
    Loewner checks of the effective operator map on one decomposition.

    ``mono`` compares L* with M* in whichever order L and M are comparable,
    and is None when they are not. ``concave`` tests
    tL* + (1 − t)M* ⪯ [tL + (1 − t)M]*.
    """
    if not pL.space.same_as(pM.space):
        raise DecompositionMismatchError("Both problems must share one triple decomposition")
    if not 0.0 <= t <= 1.0:
        raise ValidationError(f"t must lie in [0, 1], got {t}")
    for name, p in (('L', pL), ('M', pM)):
        if not hypothesis_flags(p)[2]:
            raise HypothesisError(f"{name} must be self-adjoint, positive semidefinite and invertible")

    l_star, m_star = effective_operator(pL), effective_operator(pM)
    if loewner_leq(pL.L, pM.L, tol):
        mono = loewner_leq(l_star, m_star, tol)
    elif loewner_leq(pM.L, pL.L, tol):
        mono = loewner_leq(m_star, l_star, tol)
    else:
        mono = None

    mixed = effective_operator(pL.with_operator(t * pL.L + (1.0 - t) * pM.L))
    concave = loewner_leq(t * l_star + (1.0 - t) * m_star, mixed, tol)
    logger.debug(f"Monotonicity {mono}, concavity {concave} at t={t}")
    return MonotonicityReport(mono=mono, concave=concave)
