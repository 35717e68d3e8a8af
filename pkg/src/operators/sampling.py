"""Seeded random instances for property checks: decompositions, positive operators,
subspace collections, normalized pencils, points of D and rotation structures.

All generators take a ``numpy.random.Generator`` so that a fixed seed gives a
fixed instance.
"""

from typing import Tuple, Optional, Sequence

import numpy as np

from ..models.decomposition import TripleDecomposition, SubspaceCollection, range_projection
from ..models.operator import Operator, ScalarField, BlockPartition
from ..models.pencil import PencilPoint, NormalizedPencil
from .core import adjoint

PSD_SHIFT = 1e-3  # ε in G*G + εI


def gaussian(rng: np.random.Generator, shape, field: ScalarField) -> np.ndarray:
    if field is ScalarField.COMPLEX:
        return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)
    return rng.standard_normal(shape)


def random_unitary(rng: np.random.Generator, dim: int, field: ScalarField = ScalarField.REAL) -> Operator:
    """Haar-distributed unitary (orthogonal over the reals) from a QR factorization"""
    q, r = np.linalg.qr(gaussian(rng, (dim, dim), field))
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_split(rng: np.random.Generator, dim: int, parts: int = 3,
                 minimums: Optional[Sequence[int]] = None) -> Tuple[int, ...]:
    """Block sizes summing to dim, drawn uniformly above per-block minimums"""
    minimums = tuple(minimums) if minimums is not None else (0,) * parts
    free = dim - sum(minimums)
    if free < 0:
        raise ValueError(f"Cannot split {dim} into blocks with minimums {minimums}")
    cuts = np.sort(rng.integers(0, free + 1, size=parts - 1))
    extra = np.diff(np.concatenate(([0], cuts, [free])))
    return tuple(int(m + e) for m, e in zip(minimums, extra))


def random_decomposition(rng: np.random.Generator, dim: int, field: ScalarField = ScalarField.REAL,
                         sizes: Optional[Sequence[int]] = None) -> TripleDecomposition:
    """U ⊕ E ⊕ J from consecutive column blocks of a random unitary; U and E nonzero by default"""
    sizes = tuple(sizes) if sizes is not None else random_split(rng, dim, 3, (1, 1, 0))
    q = random_unitary(rng, dim, field)
    s0, s1, s2 = BlockPartition(sizes).slices()
    return TripleDecomposition.from_bases(q[:, s0], q[:, s1], q[:, s2])


def random_psd(rng: np.random.Generator, dim: int, field: ScalarField = ScalarField.REAL,
               shift: float = PSD_SHIFT) -> Operator:
    """G*G + εI, positive definite with a tame condition number"""
    g = gaussian(rng, (dim, dim), field) / np.sqrt(max(dim, 1))
    a = adjoint(g) @ g + shift * np.eye(dim)
    return 0.5 * (a + adjoint(a))


def random_coercive(rng: np.random.Generator, dim: int, field: ScalarField = ScalarField.REAL) -> Operator:
    """A non-self-adjoint operator with positive definite real part"""
    k = gaussian(rng, (dim, dim), field) / np.sqrt(max(dim, 1))
    return random_psd(rng, dim, field) + 0.5 * (k - adjoint(k))


def random_ordered_pair(rng: np.random.Generator, dim: int,
                        field: ScalarField = ScalarField.REAL) -> Tuple[Operator, Operator]:
    """Positive definite L ⪯ M"""
    l = random_psd(rng, dim, field)
    return l, l + random_psd(rng, dim, field, shift=0.0)


def random_collection(rng: np.random.Generator, dim: int, n: int,
                      field: ScalarField = ScalarField.REAL) -> SubspaceCollection:
    """Random decomposition plus n nonzero random phase subspaces"""
    space = random_decomposition(rng, dim, field)
    q = random_unitary(rng, dim, field)
    sizes = random_split(rng, dim, n, (1,) * n)
    phases = [q[:, s] for s in BlockPartition(sizes).slices()]
    return SubspaceCollection(space, tuple(range_projection(b) for b in phases)).validate()


def random_pencil(rng: np.random.Generator, n: int, dim_h0: int, dim_h1: int,
                  field: ScalarField = ScalarField.REAL,
                  ranks: Optional[Sequence[int]] = None) -> NormalizedPencil:
    """
    Ai = Wi Wi* for column blocks Wi of the first dim_h0 + dim_h1 rows of a
    random unitary; rank(Ai) = min(ranks[i], dim) generically.
    """
    h = dim_h0 + dim_h1
    if ranks is None:
        ranks = random_split(rng, max(h, n), n, (1,) * n)
    m = int(sum(ranks))
    if m < h:
        raise ValueError(f"Ranks {tuple(ranks)} cannot resolve the identity on {h} dimensions")
    w = random_unitary(rng, m, field)[:h, :]
    coeffs = []
    for s in BlockPartition(tuple(ranks)).slices():
        a = w[:, s] @ adjoint(w[:, s])
        coeffs.append(0.5 * (a + adjoint(a)))
    return NormalizedPencil(tuple(coeffs), BlockPartition((dim_h0, dim_h1)))


def random_point_in_domain(rng: np.random.Generator, n: int, margin: float = 0.3,
                           modulus: Tuple[float, float] = (0.5, 2.0)) -> PencilPoint:
    """A point of D whose arguments stay ``margin`` radians inside a random half-plane"""
    centre = rng.uniform(0.0, 2.0 * np.pi)
    half_width = rng.uniform(0.0, 0.5 * np.pi - margin)
    args = centre + rng.uniform(-half_width, half_width, size=n)
    radii = rng.uniform(*modulus, size=n)
    return PencilPoint(tuple(radii * np.exp(1j * args)))


def random_positive_point(rng: np.random.Generator, n: int, low: float = 0.5, high: float = 4.0) -> PencilPoint:
    return PencilPoint(tuple(rng.uniform(low, high, size=n)))


def random_kdm_instance(rng: np.random.Generator, dim_u: int, dim_e: int,
                        field: ScalarField = ScalarField.REAL) -> Tuple[TripleDecomposition, Operator]:
    """
    A decomposition with dim E = dim J and a unitary R with R* = −R,
    RU = U, RE = J and RJ = E.

    Over the reals dim_u must be even: a real skew orthogonal map on U
    exists only in even dimension.
    """
    if field is ScalarField.REAL and dim_u % 2:
        raise ValueError("A real rotation structure needs even dim U")
    if field is ScalarField.REAL:
        pair = np.array([[0.0, -1.0], [1.0, 0.0]])
        w = random_unitary(rng, dim_u, field)
        s_u = w @ np.kron(np.eye(dim_u // 2), pair) @ w.T
    else:
        signs = np.diag(rng.choice([-1.0, 1.0], size=dim_u))
        w = random_unitary(rng, dim_u, field)
        s_u = 1j * (w @ signs @ adjoint(w))
    x = random_unitary(rng, dim_e, field)
    zero = np.zeros((dim_e, dim_e))
    core = np.block([
        [s_u, np.zeros((dim_u, 2 * dim_e))],
        [np.zeros((2 * dim_e, dim_u)), np.block([[zero, -adjoint(x)], [x, zero]])],
    ])
    dim = dim_u + 2 * dim_e
    q = random_unitary(rng, dim, field)
    space = TripleDecomposition.from_bases(q[:, :dim_u], q[:, dim_u:dim_u + dim_e], q[:, dim_u + dim_e:])
    return space, q @ core @ adjoint(q)
