"""Test cases for triple decompositions and subspace collections."""

import numpy as np
import pytest

from src.models.decomposition import TripleDecomposition, SubspaceCollection, DecompositionError, CollectionError
from src.models.operator import ScalarField, BlockPartition
from src.operators.core import adjoint
from src.operators.sampling import random_decomposition, random_collection
from tests.fixtures import coordinate_decomposition


@pytest.mark.unit
def test_coordinate_decomposition():
    """Test dimensions and projections of a coordinate split"""
    space = coordinate_decomposition(1, 2, 1)
    assert space.dim == 4
    assert space.dims == (1, 2, 1)
    assert space.field is ScalarField.REAL
    assert np.allclose(sum(space.gammas), np.eye(4))


@pytest.mark.unit
def test_arrays_are_read_only():
    """Test that stored projections cannot be modified"""
    space = coordinate_decomposition(1, 1, 1)
    with pytest.raises(ValueError):
        space.gamma0[0, 0] = 2.0


@pytest.mark.unit
def test_embed_and_coordinates(rng):
    """Test that embedding and taking coordinates are inverse"""
    space = random_decomposition(rng, 6, sizes=(2, 3, 1))
    coords = rng.standard_normal(3)
    vector = space.embed(1, coords)
    assert np.allclose(space.gamma1 @ vector, vector)
    assert np.allclose(space.coordinates(1, vector), coords)
    assert np.allclose(space.coordinates(0, vector), 0.0)


@pytest.mark.unit
def test_swapped_exchanges_e_and_j(rng):
    """Test that swapping exchanges E and J and keeps U"""
    space = random_decomposition(rng, 5, sizes=(1, 3, 1))
    swapped = space.swapped()
    assert swapped.dims == (1, 1, 3)
    assert np.array_equal(swapped.gamma1, space.gamma2)
    assert swapped.swapped().same_as(space)


@pytest.mark.unit
def test_from_projections_matches_from_bases(rng):
    """Test that both constructors give the same decomposition"""
    space = random_decomposition(rng, 7, ScalarField.COMPLEX, sizes=(2, 2, 3))
    rebuilt = TripleDecomposition.from_projections(*space.gammas)
    assert rebuilt.same_as(space)
    assert rebuilt.dims == space.dims


@pytest.mark.unit
def test_complete_takes_orthogonal_complement():
    """Test that J is completed as the orthogonal complement of U ⊕ E"""
    eye = np.eye(4)
    space = TripleDecomposition.complete(eye[:, :1], eye[:, 1:3])
    assert space.dims == (1, 2, 1)
    assert np.allclose(space.gamma2, np.diag([0.0, 0.0, 0.0, 1.0]))


@pytest.mark.unit
def test_overlapping_subspaces_rejected():
    """Test that non-orthogonal bases fail validation"""
    eye = np.eye(3)
    tilted = (eye[:, [0]] + eye[:, [1]]) / np.sqrt(2.0)
    with pytest.raises(DecompositionError):
        TripleDecomposition.from_bases(eye[:, :1], tilted, eye[:, 2:])


@pytest.mark.unit
def test_incomplete_decomposition_rejected():
    """Test that projections not summing to the identity are refused"""
    eye = np.eye(3)
    with pytest.raises(DecompositionError, match='identity'):
        TripleDecomposition.from_bases(eye[:, :1], eye[:, 1:2], eye[:, :0])


@pytest.mark.unit
def test_basis_row_count_checked():
    """Test that bases of the wrong height are refused"""
    eye = np.eye(3)
    with pytest.raises(DecompositionError):
        TripleDecomposition(np.eye(3), np.zeros((3, 3)), np.zeros((3, 3)), eye, np.eye(2), eye[:, :0])


@pytest.mark.unit
def test_collection_resolves_identity(rng):
    """Test that a random collection validates"""
    c = random_collection(rng, 8, 3)
    assert c.n == 3
    assert np.linalg.norm(sum(c.lambdas) - np.eye(8)) <= 1e-12


@pytest.mark.unit
def test_collection_rejects_overlap():
    """Test that overlapping and empty phase lists are refused"""
    space = coordinate_decomposition(1, 1, 1)
    full = np.eye(3)
    with pytest.raises(CollectionError):
        SubspaceCollection(space, (full, full)).validate()
    with pytest.raises(CollectionError):
        SubspaceCollection(space, ())


@pytest.mark.unit
def test_compressions_to_u_sum_to_identity(rng):
    """Test that the compressions of the phases to U sum to the identity"""
    c = random_collection(rng, 6, 2, ScalarField.COMPLEX)
    total = sum(c.compressions_to_u())
    assert np.allclose(total, np.eye(c.space.dims[0]))
    for ci in c.compressions_to_u():
        assert np.allclose(ci, adjoint(ci))
