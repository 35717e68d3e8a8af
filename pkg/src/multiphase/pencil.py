"""The pencil L(z) = Σ zi Λi over a Z(n) subspace collection, its effective map on
the domain D, abstract Wiener bounds and multiphase duality.

D is the set of z whose components all lie in one open half-plane through
the origin. Membership is decided exactly from the arguments of z.
"""

import logging
from typing import NamedTuple, Optional

import numpy as np
import scipy.linalg as sla

from ..config.settings import DEFAULT_TOL, CONTRACT_TOL
from ..models.decomposition import SubspaceCollection
from ..models.operator import Operator
from ..models.pencil import PencilPoint, NormalizedPencil
from ..models.zproblem import ZProblem, HypothesisReport
from ..operators.core import adjoint, as_operator, schur_complement, loewner_leq
from ..utils.errors import ValidationError
from ..zproblem.duality import check_rotation_structure, restrict_to_u, RotationStructureError
from ..zproblem.solve import effective_operator, compression_ue

logger = logging.getLogger(__name__)

# Gaps must exceed π by this much for the arguments to fit in an open half-plane
_GAP_MARGIN = 1e-12


class DomainError(ValidationError):
    """Raised when a pencil point lies outside the domain D"""
    pass


class PencilLengthError(ValidationError):
    """Raised when z has a different number of components than there are phases"""
    pass


class WienerBounds(NamedTuple):
    lower: Operator
    upper: Operator


def _largest_gap(z: PencilPoint):
    """(gap, start) of the largest empty arc between consecutive arguments, start being its first argument"""
    args = np.sort(np.mod(np.angle(np.array(z.z, dtype=np.complex128)), 2.0 * np.pi))
    gaps = np.append(np.diff(args), 2.0 * np.pi - (args[-1] - args[0]))
    k = int(np.argmax(gaps))
    return float(gaps[k]), float(args[k])


def in_domain_D(z: PencilPoint) -> bool:
    """True iff every zi ≠ 0 and all arguments fit in an open half-plane"""
    if z.n == 0 or any(v == 0 for v in z.z):
        return False
    gap, _ = _largest_gap(z)
    return gap > np.pi + _GAP_MARGIN


def domain_angle(z: PencilPoint) -> Optional[float]:
    """
    Rotation θ with Re(e^{iθ} zi) > 0 for every i, or None outside D.

    θ turns the bisector of the arc occupied by the arguments onto the
    positive real axis, so Re(e^{iθ} L(z)) ≥ min_i Re(e^{iθ} zi)·I.
    """
    if not in_domain_D(z):
        return None
    gap, start = _largest_gap(z)
    centre = start + gap + 0.5 * (2.0 * np.pi - gap)
    return float(np.mod(-centre, 2.0 * np.pi))


def pencil_hypotheses(z: PencilPoint) -> HypothesisReport:
    """
    Hypotheses for L(z) on a collection whose phases and E are all nonzero.

    Inside D (H0) holds; (H1) and (H2) hold exactly when every zi is real and
    positive; the coercivity angle is ``domain_angle``.
    """
    h0 = in_domain_D(z)
    h1 = h0 and z.is_positive()
    return HypothesisReport(h0=h0, h1=h1, h2=h1, lm=domain_angle(z))


def _require_length(c_n: int, z: PencilPoint) -> None:
    if z.n != c_n:
        raise PencilLengthError(f"Expected {c_n} pencil components, got {z.n}")


def _require_domain(z: PencilPoint) -> None:
    if not in_domain_D(z):
        raise DomainError(f"z not in domain D: {z.z}")


def pencil_at(c: SubspaceCollection, z: PencilPoint) -> Operator:
    """L(z) = Σ zi Λi"""
    _require_length(c.n, z)
    return sum(v * l for v, l in zip(z.as_array(), c.lambdas))


def effective_map(c: SubspaceCollection, z: PencilPoint) -> Operator:
    """
    L*(z), the effective operator of (H, U, E, J, L(z)), for z in D.

    Raises:
        DomainError: When z is outside D
    """
    _require_length(c.n, z)
    _require_domain(z)
    return effective_operator(ZProblem(c.space, pencil_at(c, z)))


def bess_pencil(c: SubspaceCollection) -> NormalizedPencil:
    """Compressions Ai of the Λi to U ⊕ E, a normalized pencil whose Schur complement is L*(z)"""
    coeffs = []
    part = None
    for l in c.lambdas:
        a, part = compression_ue(ZProblem(c.space, l))
        coeffs.append(a)
    return NormalizedPencil(tuple(coeffs), part)


def schur_of_pencil(p: NormalizedPencil, z: PencilPoint) -> Operator:
    """f(z) = A00(z) − A01(z) A11(z)⁻¹ A10(z) for z in D"""
    _require_length(p.n, z)
    _require_domain(z)
    return schur_complement(p.at(z), p.split, label='A11(z)')


def _require_positive(z: PencilPoint) -> None:
    if not z.is_positive():
        raise ValidationError(f"Wiener bounds need real positive z, got {z.z}")


def wiener_bounds(c: SubspaceCollection, z: PencilPoint) -> WienerBounds:
    """Harmonic and arithmetic mean bounds (Σ zi⁻¹ Ci)⁻¹ ⪯ L*(z) ⪯ Σ zi Ci, Ci the compressions of Λi to U"""
    _require_length(c.n, z)
    _require_positive(z)
    values = z.as_array()
    compressions = c.compressions_to_u()
    upper = sum(v * ci for v, ci in zip(values, compressions))
    lower = sla.inv(sum(ci / v for v, ci in zip(values, compressions)))
    return WienerBounds(lower=lower, upper=upper)


def multiphase_kdm(c: SubspaceCollection, R: Operator, z: PencilPoint, tol: float = CONTRACT_TOL) -> float:
    """
    Relative residual of L*(z) = R[L*(z⁻¹)]⁻¹R⁻¹.

    R must satisfy the rotation structure of the decomposition and also map
    each phase subspace into itself.
    """
    r = as_operator(R)
    check_rotation_structure(c.space, r, tol)
    for i, l in enumerate(c.lambdas, start=1):
        image = r @ l
        leak = float(np.linalg.norm(image - l @ image)) / max(1.0, float(np.linalg.norm(image)))
        if leak > tol:
            raise RotationStructureError(f"R P{i} ⊆ P{i}", leak)
    _require_length(c.n, z)
    _require_domain(z)
    lhs = effective_map(c, z)
    r_u = restrict_to_u(c.space, r)
    rhs = r_u @ sla.inv(effective_map(c, z.inverse())) @ adjoint(r_u)
    scale = max(float(np.linalg.norm(lhs)), np.finfo(float).tiny)
    return float(np.linalg.norm(lhs - rhs)) / scale


def multiphase_monotone(c: SubspaceCollection, z: PencilPoint, w: PencilPoint, tol: float = DEFAULT_TOL) -> bool:
    """L*(z) ⪯ L*(w) whenever 0 < zi ≤ wi"""
    _require_length(c.n, z)
    _require_length(c.n, w)
    if not (z.is_positive() and w.is_positive()):
        raise ValidationError("Monotonicity needs real positive z and w")
    if any(a.real > b.real for a, b in zip(z.z, w.z)):
        raise ValidationError(f"Monotonicity needs z ≤ w componentwise, got {z.z} and {w.z}")
    return loewner_leq(effective_map(c, z), effective_map(c, w), tol)
